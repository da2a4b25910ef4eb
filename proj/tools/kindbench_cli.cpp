// kindbench: exact checks for kind rings and finite groupoid convolution
// algebras. Thin argument-parsing shell over the C API in kindbench.h.
//
// Exit codes: 0 no counterexample / valid, 1 witness or violations found,
// 2 usage or input error, 3 candidate budget exceeded, 4 internal error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "kindbench.h"

namespace {

struct ReportDeleter {
    void operator()(kb_report* r) const { kb_report_free(r); }
};
struct RingDeleter {
    void operator()(kb_ring* r) const { kb_ring_free(r); }
};
struct GroupoidDeleter {
    void operator()(kb_groupoid* g) const { kb_groupoid_free(g); }
};

using ReportPtr = std::unique_ptr<kb_report, ReportDeleter>;
using RingPtr = std::unique_ptr<kb_ring, RingDeleter>;
using GroupoidPtr = std::unique_ptr<kb_groupoid, GroupoidDeleter>;

int exitCodeFor(kb_status status) {
    switch (status) {
    case KB_OK: return 0;
    case KB_ERR_PARSE:
    case KB_ERR_USAGE:
    case KB_ERR_INPUT: return 2;
    case KB_ERR_BUDGET: return 3;
    default: return 4;
    }
}

int failWith(kb_status status, char* err) {
    if (err) {
        std::cerr << "error: " << err << "\n";
        kb_string_free(err);
    } else {
        std::cerr << "error\n";
    }
    return exitCodeFor(status);
}

int emit(const ReportPtr& report, bool json) {
    char* body = json ? kb_report_json(report.get()) : kb_report_text(report.get());
    if (body) {
        std::cout << body;
        kb_string_free(body);
    }
    return kb_report_has_witness(report.get()) ? 1 : 0;
}

// "Rn:k" passes through; anything else is a file path to read.
bool loadGroupoidArg(const std::string& arg, std::string& out) {
    if (arg.rfind("Rn:", 0) == 0) {
        out = arg;
        return true;
    }
    std::ifstream in(arg);
    if (!in.good()) return false;
    std::stringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

// Inline JSON (starts with '[' or '{') passes through; otherwise a file path.
bool loadJsonArg(const std::string& arg, std::string& out) {
    if (!arg.empty() && (arg[0] == '[' || arg[0] == '{')) {
        out = arg;
        return true;
    }
    std::ifstream in(arg);
    if (!in.good()) return false;
    std::stringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << "# elapsed-ms: " << ms << "\n";
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact kind-ring verification over groupoid convolution algebras"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("kindbench ") + kb_version());

    kb_bounds defaults;
    kb_bounds_default(&defaults);

    // ring-check
    std::string rcRing;
    int rcCondition = 0;
    kb_bounds rcBounds = defaults;
    bool rcJson = false;
    auto* ringCheck =
        app.add_subcommand("ring-check", "search one kindness condition and certify");
    ringCheck->add_option("ring", rcRing, "ring spec (Z, Q, Z[i], Z[sqrt D], Z[1/M], BASE[t])")
        ->required();
    ringCheck->add_option("--condition", rcCondition, "kindness condition to search (1, 2 or 6)")
        ->required()
        ->check(CLI::IsMember({1, 2, 6}));
    ringCheck->add_option("--max-len", rcBounds.max_len, "tuple length bound (conditions 1, 2)");
    ringCheck->add_option("--max-height", rcBounds.max_height, "coefficient height bound");
    ringCheck->add_option("--max-dim", rcBounds.max_dim, "matrix dimension bound (condition 6)");
    ringCheck->add_option("--max-degree", rcBounds.max_degree,
                          "polynomial degree bound (transcendental extensions)");
    ringCheck->add_option("--budget", rcBounds.budget, "covered-candidate cap");
    ringCheck->add_option("--threads", rcBounds.threads, "worker threads (output is unchanged)");
    ringCheck->add_flag("--json", rcJson, "emit the machine-readable report");

    // groupoid-validate
    std::string gvArg;
    bool gvJson = false;
    auto* groupoidValidate =
        app.add_subcommand("groupoid-validate", "check the groupoid axioms of a document");
    groupoidValidate->add_option("--groupoid", gvArg, "document path or builtin Rn:k")->required();
    groupoidValidate->add_flag("--json", gvJson, "emit the machine-readable report");

    // algebra-projections
    std::string apRing, apGroupoid;
    int apHeight = defaults.max_height;
    std::uint64_t apBudget = defaults.budget;
    int apThreads = 1;
    bool apJson = false;
    auto* algebraProjections =
        app.add_subcommand("algebra-projections", "enumerate projections of R(G)");
    algebraProjections->add_option("ring", apRing, "ring spec")->required();
    algebraProjections->add_option("--groupoid", apGroupoid, "document path or builtin Rn:k")
        ->required();
    algebraProjections->add_option("--max-height", apHeight, "coefficient height bound");
    algebraProjections->add_option("--budget", apBudget, "covered-candidate cap");
    algebraProjections->add_option("--threads", apThreads, "worker threads");
    algebraProjections->add_flag("--json", apJson, "emit the machine-readable report");

    // matrix-probe
    std::string mpRing, mpMatrix;
    bool mpJson = false;
    auto* matrixProbe = app.add_subcommand(
        "matrix-probe", "unitary/monomial/diagonal-preservation predicates for a matrix");
    matrixProbe->add_option("ring", mpRing, "ring spec")->required();
    matrixProbe
        ->add_option("--matrix", mpMatrix,
                     "row-major JSON lists of ring-element strings, inline or a file path")
        ->required();
    matrixProbe->add_flag("--json", mpJson, "emit the machine-readable report");

    // witness-convert
    std::string wcRing, wcTarget, wcWitness;
    int wcFrom = 0;
    bool wcJson = false;
    auto* witnessConvert = app.add_subcommand(
        "witness-convert", "map a witness between conditions 1, 2, 6 and a projection");
    witnessConvert->add_option("ring", wcRing, "ring spec")->required();
    witnessConvert->add_option("--from", wcFrom, "condition of the input witness")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    witnessConvert->add_option("--to", wcTarget, "target: 1, 2, 6 or projection")
        ->required()
        ->check(CLI::IsMember({"1", "2", "6", "projection"}));
    witnessConvert
        ->add_option("--witness", wcWitness,
                     "JSON array of ring-element strings, inline or a file path")
        ->required();
    witnessConvert->add_flag("--json", wcJson, "emit the machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    Timer timer;
    kb_status status = KB_OK;
    char* err = nullptr;

    if (ringCheck->parsed()) {
        kb_ring* ring = nullptr;
        status = kb_ring_parse(rcRing.c_str(), &ring, &err);
        if (status != KB_OK) return failWith(status, err);
        RingPtr ringPtr(ring);
        kb_report* report = nullptr;
        status = kb_ring_check(ring, rcCondition, &rcBounds, &report, &err);
        if (status != KB_OK) return failWith(status, err);
        return emit(ReportPtr(report), rcJson);
    }

    if (groupoidValidate->parsed()) {
        std::string text;
        if (!loadGroupoidArg(gvArg, text)) {
            std::cerr << "error: cannot read groupoid document '" << gvArg << "'\n";
            return 2;
        }
        kb_report* report = nullptr;
        status = kb_groupoid_validate(text.c_str(), gvArg.c_str(), &report, &err);
        if (status != KB_OK) return failWith(status, err);
        return emit(ReportPtr(report), gvJson);
    }

    if (algebraProjections->parsed()) {
        kb_ring* ring = nullptr;
        status = kb_ring_parse(apRing.c_str(), &ring, &err);
        if (status != KB_OK) return failWith(status, err);
        RingPtr ringPtr(ring);
        std::string text;
        if (!loadGroupoidArg(apGroupoid, text)) {
            std::cerr << "error: cannot read groupoid document '" << apGroupoid << "'\n";
            return 2;
        }
        kb_groupoid* g = nullptr;
        status = kb_groupoid_parse(text.c_str(), apGroupoid.c_str(), &g, &err);
        if (status != KB_OK) return failWith(status, err);
        GroupoidPtr gPtr(g);
        kb_report* report = nullptr;
        status = kb_algebra_projections(ring, g, apHeight, apBudget, apThreads, &report, &err);
        if (status != KB_OK) return failWith(status, err);
        return emit(ReportPtr(report), apJson);
    }

    if (matrixProbe->parsed()) {
        kb_ring* ring = nullptr;
        status = kb_ring_parse(mpRing.c_str(), &ring, &err);
        if (status != KB_OK) return failWith(status, err);
        RingPtr ringPtr(ring);
        std::string matrixJson;
        if (!loadJsonArg(mpMatrix, matrixJson)) {
            std::cerr << "error: cannot read matrix literal '" << mpMatrix << "'\n";
            return 2;
        }
        kb_report* report = nullptr;
        status = kb_matrix_probe(ring, matrixJson.c_str(), &report, &err);
        if (status != KB_OK) return failWith(status, err);
        return emit(ReportPtr(report), mpJson);
    }

    if (witnessConvert->parsed()) {
        kb_ring* ring = nullptr;
        status = kb_ring_parse(wcRing.c_str(), &ring, &err);
        if (status != KB_OK) return failWith(status, err);
        RingPtr ringPtr(ring);
        std::string witnessJson;
        if (!loadJsonArg(wcWitness, witnessJson)) {
            std::cerr << "error: cannot read witness literal '" << wcWitness << "'\n";
            return 2;
        }
        kb_report* report = nullptr;
        status =
            kb_witness_convert(ring, wcFrom, wcTarget.c_str(), witnessJson.c_str(), &report, &err);
        if (status != KB_OK) return failWith(status, err);
        return emit(ReportPtr(report), wcJson);
    }

    std::cerr << "error: no subcommand\n";
    return 2;
}
