#include "kindbench.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "kb/errors.hpp"
#include "kb/report.hpp"

struct kb_ring {
    kb::RingSpec rep;
};

struct kb_groupoid {
    std::shared_ptr<const kb::FiniteGroupoid> rep;
};

struct kb_report {
    kb::Report rep;
};

namespace {

char* dupString(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void setError(char** err, const std::string& message) {
    if (err) *err = dupString(message);
}

// Every entry point funnels through here so no exception crosses the ABI.
template <typename Fn> kb_status guarded(char** err, Fn&& fn) {
    try {
        fn();
        return KB_OK;
    } catch (const kb::ParseError& e) {
        setError(err, e.what());
        return KB_ERR_PARSE;
    } catch (const kb::UsageError& e) {
        setError(err, e.what());
        return KB_ERR_USAGE;
    } catch (const kb::InputError& e) {
        setError(err, e.what());
        return KB_ERR_INPUT;
    } catch (const kb::ResourceError& e) {
        setError(err, e.what());
        return KB_ERR_BUDGET;
    } catch (const std::bad_alloc&) {
        setError(err, "out of memory");
        return KB_ERR_INTERNAL;
    } catch (const std::exception& e) {
        setError(err, e.what());
        return KB_ERR_INTERNAL;
    }
}

kb::SearchBounds toSearchBounds(const kb_bounds* bounds) {
    kb::SearchBounds b;
    if (!bounds) return b;
    b.maxLen = bounds->max_len;
    b.maxHeight = bounds->max_height;
    b.maxDim = bounds->max_dim;
    b.maxDegree = bounds->max_degree;
    b.budget = bounds->budget;
    b.threads = bounds->threads;
    return b;
}

} // namespace

extern "C" {

const char* kb_version(void) { return "0.1.0"; }

void kb_bounds_default(kb_bounds* out) {
    if (!out) return;
    kb::SearchBounds b;
    out->max_len = b.maxLen;
    out->max_height = b.maxHeight;
    out->max_dim = b.maxDim;
    out->max_degree = b.maxDegree;
    out->budget = b.budget;
    out->threads = b.threads;
}

void kb_string_free(char* s) { std::free(s); }

kb_status kb_ring_parse(const char* text, kb_ring** out, char** err) {
    if (!text || !out) {
        setError(err, "null argument");
        return KB_ERR_USAGE;
    }
    return guarded(err, [&] { *out = new kb_ring{kb::RingSpec::parse(text)}; });
}

void kb_ring_free(kb_ring* ring) { delete ring; }

char* kb_ring_name(const kb_ring* ring) {
    if (!ring) return nullptr;
    return dupString(ring->rep.name());
}

kb_status kb_groupoid_parse(const char* text, const char* name, kb_groupoid** out, char** err) {
    if (!text || !out) {
        setError(err, "null argument");
        return KB_ERR_USAGE;
    }
    return guarded(err, [&] {
        auto g = kb::parseGroupoidText(text, name ? name : "groupoid");
        auto violations = kb::validateGroupoid(*g);
        if (!violations.empty()) {
            std::string message = "groupoid fails validation:";
            for (const auto& v : violations) message += "\n  [" + v.code + "] " + v.message;
            throw kb::InputError(message);
        }
        *out = new kb_groupoid{std::move(g)};
    });
}

void kb_groupoid_free(kb_groupoid* g) { delete g; }

kb_status kb_ring_check(const kb_ring* ring, int condition, const kb_bounds* bounds,
                        kb_report** out, char** err) {
    if (!ring || !out) {
        setError(err, "null argument");
        return KB_ERR_USAGE;
    }
    return guarded(err, [&] {
        *out = new kb_report{kb::runRingCheck(ring->rep, condition, toSearchBounds(bounds))};
    });
}

kb_status kb_groupoid_validate(const char* text, const char* name, kb_report** out, char** err) {
    if (!text || !out) {
        setError(err, "null argument");
        return KB_ERR_USAGE;
    }
    return guarded(err, [&] {
        *out = new kb_report{kb::runGroupoidValidate(text, name ? name : "groupoid")};
    });
}

kb_status kb_algebra_projections(const kb_ring* ring, const kb_groupoid* g, int max_height,
                                 uint64_t budget, int32_t threads, kb_report** out, char** err) {
    if (!ring || !g || !out) {
        setError(err, "null argument");
        return KB_ERR_USAGE;
    }
    return guarded(err, [&] {
        *out = new kb_report{kb::runAlgebraProjections(ring->rep, g->rep, g->rep->name(),
                                                       max_height, budget, threads)};
    });
}

kb_status kb_matrix_probe(const kb_ring* ring, const char* matrix_json, kb_report** out,
                          char** err) {
    if (!ring || !matrix_json || !out) {
        setError(err, "null argument");
        return KB_ERR_USAGE;
    }
    return guarded(err, [&] { *out = new kb_report{kb::runMatrixProbe(ring->rep, matrix_json)}; });
}

kb_status kb_witness_convert(const kb_ring* ring, int from_condition, const char* target,
                             const char* witness_json, kb_report** out, char** err) {
    if (!ring || !target || !witness_json || !out) {
        setError(err, "null argument");
        return KB_ERR_USAGE;
    }
    return guarded(err, [&] {
        *out = new kb_report{
            kb::runWitnessConvert(ring->rep, from_condition, target, witness_json)};
    });
}

int kb_report_has_witness(const kb_report* report) {
    return report && report->rep.witness ? 1 : 0;
}

char* kb_report_json(const kb_report* report) {
    if (!report) return nullptr;
    return dupString(report->rep.json());
}

char* kb_report_text(const kb_report* report) {
    if (!report) return nullptr;
    return dupString(report->rep.text());
}

void kb_report_free(kb_report* report) { delete report; }

} // extern "C"
