#include "kb/report.hpp"

#include <algorithm>

#include "kb/algebra.hpp"
#include "kb/enumeration.hpp"
#include "kb/errors.hpp"

namespace kb {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kToolName = "kindbench";
constexpr const char* kToolVersion = "0.1.0";

// Beyond these sizes a closure-rule witness is reported in uniform form (or
// the derived-witness verdict falls back to inconclusive).
constexpr std::uint64_t kMaterializeCap = 65536;
constexpr std::uint64_t kMatrixWitnessCap = 128;

Json header(const char* command) {
    Json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["command"] = command;
    return doc;
}

Json vectorToJson(std::span<const RingElement> v) {
    Json arr = Json::array();
    for (const auto& e : v) arr.push_back(e.str());
    return arr;
}

Json matrixToJson(const RingMatrix& m) {
    Json rows = Json::array();
    for (const auto& row : m.toStrings()) rows.push_back(row);
    return rows;
}

Json coefficientsToJson(const AlgebraElement& f) {
    Json obj = Json::object();
    for (const auto& [id, value] : f.toStrings()) obj[id] = value;
    return obj;
}

std::string joinVector(const Json& arr) {
    std::string out = "(";
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) out += ", ";
        out += arr[i].get<std::string>();
    }
    return out + ")";
}

} // namespace

Json certificateToJson(const KindCertificate& cert) {
    Json node;
    switch (cert.rule) {
    case KindCertificate::Rule::DiscreteNorm:
        node["rule"] = "discrete-norm";
        node["ring"] = cert.ring->name();
        break;
    case KindCertificate::Rule::AdjoinSqrt:
        node["rule"] = "adjoin-sqrt";
        node["ring"] = cert.ring->name();
        node["adjoined"] = cert.adjoined;
        node["justification"] = cert.justification;
        node["base"] = certificateToJson(cert.children[0]);
        break;
    case KindCertificate::Rule::AdjoinTranscendental:
        node["rule"] = "adjoin-transcendental";
        node["ring"] = cert.ring->name();
        node["base"] = certificateToJson(cert.children[0]);
        break;
    case KindCertificate::Rule::DirectedUnion: {
        node["rule"] = "directed-union";
        Json parts = Json::array();
        for (const auto& part : cert.children) parts.push_back(certificateToJson(part));
        node["parts"] = std::move(parts);
        break;
    }
    }
    return node;
}

RingMatrix parseMatrixJson(const RingSpec& ring, const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw InputError(std::string("matrix literal is not valid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw InputError("matrix literal must be a nonempty array of rows");
    int n = static_cast<int>(doc.size());
    std::vector<RingElement> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : doc) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InputError("matrix literal must be square (row-major nested lists)");
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw InputError("matrix entries must be ring-element strings");
            entries.push_back(RingElement::parse(ring, cell.get<std::string>()));
        }
    }
    return RingMatrix::fromEntries(ring, n, std::move(entries));
}

std::vector<RingElement> parseVectorJson(const RingSpec& ring, const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw InputError(std::string("vector literal is not valid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw InputError("vector literal must be a nonempty array of ring-element strings");
    std::vector<RingElement> out;
    out.reserve(doc.size());
    for (const auto& cell : doc) {
        if (!cell.is_string()) throw InputError("vector entries must be ring-element strings");
        out.push_back(RingElement::parse(ring, cell.get<std::string>()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// ring-check
// ---------------------------------------------------------------------------

Report runRingCheck(const RingSpec& ring, int condition, const SearchBounds& bounds) {
    if (condition != 1 && condition != 2 && condition != 6)
        throw UsageError("condition must be 1, 2 or 6");

    ConditionSearchResult search = condition == 1   ? searchCondition1(ring, bounds)
                                   : condition == 2 ? searchCondition2(ring, bounds)
                                                    : searchCondition6(ring, bounds);
    CertifyOutcome certify = certifyKind(ring);

    Report report;
    Json& doc = report.doc;
    doc = header("ring-check");
    doc["ring"] = ring.name();
    doc["condition"] = condition;
    doc["bounds"] = {{"maxLen", bounds.maxLen},
                     {"maxHeight", bounds.maxHeight},
                     {"maxDim", bounds.maxDim},
                     {"maxDegree", bounds.maxDegree},
                     {"budget", bounds.budget}};

    auto attachVectorWitness = [&](std::span<const RingElement> v, const char* source) {
        Json w;
        w["condition"] = condition;
        w["kind"] = "vector";
        w["source"] = source;
        w["entries"] = vectorToJson(v);
        doc["witness"] = std::move(w);
        report.witness = true;
    };
    auto attachMatrixWitness = [&](const RingMatrix& m, const char* source) {
        Json w;
        w["condition"] = condition;
        w["kind"] = "matrix";
        w["source"] = source;
        w["dim"] = m.dim();
        w["rows"] = matrixToJson(m);
        doc["witness"] = std::move(w);
        report.witness = true;
    };

    if (search.foundWitness()) {
        doc["verdict"] = "unkind-witness";
        if (search.witnessVector) {
            if (!(condition == 1 ? verifyCondition1Witness(*search.witnessVector)
                                 : verifyCondition2Witness(*search.witnessVector)))
                throw InternalError("search witness failed re-verification");
            attachVectorWitness(*search.witnessVector, "search");
        } else {
            if (!verifyCondition6Witness(*search.witnessMatrix))
                throw InternalError("search witness failed re-verification");
            attachMatrixWitness(*search.witnessMatrix, "search");
        }
    } else if (certify.certified()) {
        doc["verdict"] = "kind-certified";
        doc["certificate"] = certificateToJson(*certify.certificate);
        if (!validateCertificate(*certify.certificate))
            throw InternalError("certificate failed rule-engine validation");
    } else if (certify.disproof) {
        const UniformVectorWitness& disproof = *certify.disproof;
        if (!disproof.verifies()) throw InternalError("closure-rule disproof failed to verify");
        if (condition == 1) {
            if (disproof.length <= kMaterializeCap) {
                auto v = disproof.materialize(kMaterializeCap);
                if (!verifyCondition1Witness(v))
                    throw InternalError("closure-rule witness failed re-verification");
                doc["verdict"] = "unkind-witness";
                attachVectorWitness(v, "closure-rule");
            } else {
                doc["verdict"] = "unkind-witness";
                Json w;
                w["condition"] = 1;
                w["kind"] = "uniform-vector";
                w["source"] = "closure-rule";
                w["entry"] = disproof.entry.str();
                w["length"] = disproof.length;
                doc["witness"] = std::move(w);
                report.witness = true;
            }
        } else if (condition == 2 && disproof.length <= kMaterializeCap) {
            auto t = witnessCond2FromCond1(disproof.materialize(kMaterializeCap));
            doc["verdict"] = "unkind-witness";
            attachVectorWitness(t, "closure-rule");
        } else if (condition == 6 && disproof.length <= kMatrixWitnessCap) {
            RingMatrix u = nonMonomialUnitaryFromVector(
                RingVector(ring, disproof.materialize(kMatrixWitnessCap)));
            if (!verifyCondition6Witness(u))
                throw InternalError("closure-rule witness failed re-verification");
            doc["verdict"] = "unkind-witness";
            attachMatrixWitness(u, "closure-rule");
        } else {
            doc["verdict"] = "inconclusive";
            doc["note"] = "the ring inverts " + std::to_string(ring.invertedInteger()) +
                          ", so it is not kind, but the derived condition-" +
                          std::to_string(condition) +
                          " witness exceeds the report size cap; no witness was found within "
                          "the search bounds";
        }
    } else {
        doc["verdict"] = "inconclusive";
    }

    Json stats;
    stats["candidates"] = search.candidates;
    if (condition == 6 && !search.unitariesByDim.empty()) {
        Json byDim = Json::object();
        for (const auto& [dim, count] : search.unitariesByDim)
            byDim[std::to_string(dim)] = count;
        stats["unitariesByDim"] = std::move(byDim);
    }
    doc["stats"] = std::move(stats);
    return report;
}

// ---------------------------------------------------------------------------
// groupoid-validate
// ---------------------------------------------------------------------------

Report runGroupoidValidate(const std::string& text, const std::string& name) {
    auto g = parseGroupoidText(text, name);
    auto violations = validateGroupoid(*g);

    Report report;
    Json& doc = report.doc;
    doc = header("groupoid-validate");
    doc["groupoid"] = g->name();
    doc["arrows"] = g->arrowCount();
    doc["units"] = g->units().size();
    doc["valid"] = violations.empty();
    Json list = Json::array();
    for (const auto& v : violations) {
        Json item;
        item["code"] = v.code;
        item["message"] = v.message;
        item["arrows"] = v.arrows;
        list.push_back(std::move(item));
    }
    doc["violations"] = std::move(list);
    report.witness = !violations.empty();
    return report;
}

// ---------------------------------------------------------------------------
// algebra-projections
// ---------------------------------------------------------------------------

Report runAlgebraProjections(const RingSpec& ring, std::shared_ptr<const FiniteGroupoid> g,
                             const std::string& groupoidName, int maxHeight,
                             std::uint64_t budget, int threads) {
    auto violations = validateGroupoid(*g);
    if (!violations.empty())
        throw InputError("groupoid '" + groupoidName + "' fails validation: " +
                         violations.front().message);
    auto projections = enumerateProjections(ring, g, maxHeight, budget, threads);

    Report report;
    Json& doc = report.doc;
    doc = header("algebra-projections");
    doc["ring"] = ring.name();
    doc["groupoid"] = groupoidName;
    doc["maxHeight"] = maxHeight;
    doc["budget"] = budget;

    int nonDiagonal = 0;
    Json list = Json::array();
    const AlgebraElement* firstNonDiagonal = nullptr;
    for (const auto& p : projections) {
        bool diag = isDiagonal(p);
        if (!diag) {
            ++nonDiagonal;
            if (!firstNonDiagonal) firstNonDiagonal = &p;
        }
        Json item;
        item["coefficients"] = coefficientsToJson(p);
        item["diagonal"] = diag;
        list.push_back(std::move(item));
    }
    doc["projections"] = std::move(list);
    doc["counts"] = {{"total", projections.size()}, {"nonDiagonal", nonDiagonal}};
    if (firstNonDiagonal) {
        Json w;
        w["condition"] = 3;
        w["kind"] = "projection";
        w["coefficients"] = coefficientsToJson(*firstNonDiagonal);
        doc["witness"] = std::move(w);
        report.witness = true;
    }
    // covered space: |elements|^arrows, saturating
    std::uint64_t e = enumerateElements(ring, maxHeight).size();
    std::uint64_t covered = 1;
    for (int a = 0; a < g->arrowCount(); ++a) covered = satMul(covered, e);
    doc["stats"] = {{"candidates", covered}};
    return report;
}

// ---------------------------------------------------------------------------
// matrix-probe
// ---------------------------------------------------------------------------

Report runMatrixProbe(const RingSpec& ring, const std::string& matrixJson) {
    RingMatrix m = parseMatrixJson(ring, matrixJson);

    Report report;
    Json& doc = report.doc;
    doc = header("matrix-probe");
    doc["ring"] = ring.name();
    doc["dim"] = m.dim();
    doc["matrix"] = matrixToJson(m);
    bool unitary = isUnitary(m);
    bool monomial = isMonomial(m);
    doc["unitary"] = unitary;
    doc["monomial"] = monomial;
    doc["selfAdjoint"] = m == m.adjoint();
    if (unitary) {
        auto rn = FiniteGroupoid::fullEquivalence(m.dim());
        bool preserving = isDiagonalPreserving(conjugationMap(m, rn));
        doc["diagonalPreservingConjugation"] = preserving;
        if (preserving != monomial)
            throw InternalError("diagonal preservation disagreed with monomiality");
    }
    if (unitary && !monomial) {
        Json w;
        w["condition"] = 6;
        w["kind"] = "matrix";
        w["source"] = "probe";
        w["dim"] = m.dim();
        w["rows"] = matrixToJson(m);
        doc["witness"] = std::move(w);
        report.witness = true;
    }
    return report;
}

// ---------------------------------------------------------------------------
// witness-convert
// ---------------------------------------------------------------------------

Report runWitnessConvert(const RingSpec& ring, int fromCondition, const std::string& target,
                         const std::string& witnessJson) {
    if (fromCondition != 1 && fromCondition != 2)
        throw UsageError("conversion source must be condition 1 or 2");
    if (target != "1" && target != "2" && target != "6" && target != "projection")
        throw UsageError("conversion target must be 1, 2, 6 or projection");
    if (target == std::to_string(fromCondition))
        throw UsageError("conversion source and target must differ");

    std::vector<RingElement> input = parseVectorJson(ring, witnessJson);
    bool inputOk = fromCondition == 1 ? verifyCondition1Witness(input)
                                      : verifyCondition2Witness(input);
    if (!inputOk)
        throw UsageError("input is not a condition-" + std::to_string(fromCondition) +
                         " witness");

    Report report;
    Json& doc = report.doc;
    doc = header("witness-convert");
    doc["ring"] = ring.name();
    doc["from"] = fromCondition;
    doc["to"] = target;
    doc["input"] = vectorToJson(input);

    std::vector<RingElement> asCond1 =
        fromCondition == 1 ? input : witnessCond1FromCond2(input);

    Json w;
    if (target == "1") {
        if (!verifyCondition1Witness(asCond1))
            throw InternalError("converted witness failed re-verification");
        w["condition"] = 1;
        w["kind"] = "vector";
        w["entries"] = vectorToJson(asCond1);
    } else if (target == "2") {
        auto t = witnessCond2FromCond1(asCond1);
        w["condition"] = 2;
        w["kind"] = "vector";
        w["entries"] = vectorToJson(t);
    } else {
        RingMatrix u = nonMonomialUnitaryFromVector(RingVector(ring, asCond1));
        if (!verifyCondition6Witness(u))
            throw InternalError("converted witness failed re-verification");
        if (target == "6") {
            w["condition"] = 6;
            w["kind"] = "matrix";
            w["dim"] = u.dim();
            w["rows"] = matrixToJson(u);
        } else {
            // conjugate unit indicators until one leaves the diagonal: a
            // projection outside the diagonal subalgebra
            auto rn = FiniteGroupoid::fullEquivalence(u.dim());
            StarHomomorphism h = conjugationMap(u, rn);
            const AlgebraElement* hit = nullptr;
            int unitArrow = -1;
            for (int unit : rn->units()) {
                if (!isDiagonal(h.imageOf(unit))) {
                    hit = &h.imageOf(unit);
                    unitArrow = unit;
                    break;
                }
            }
            if (!hit) throw InternalError("no unit indicator left the diagonal");
            if (!isProjection(*hit) || isDiagonal(*hit))
                throw InternalError("converted witness failed re-verification");
            w["condition"] = 3;
            w["kind"] = "projection";
            w["groupoid"] = rn->name();
            w["conjugatedUnit"] = rn->arrowId(unitArrow);
            w["coefficients"] = coefficientsToJson(*hit);
            w["matrix"] = matrixToJson(toMatrix(*hit));
        }
    }
    w["verified"] = true;
    doc["witness"] = std::move(w);
    report.witness = true;
    return report;
}

// ---------------------------------------------------------------------------
// text rendering
// ---------------------------------------------------------------------------

namespace {

std::string certificateOneLiner(const Json& cert) {
    std::string rule = cert.at("rule").get<std::string>();
    if (rule == "discrete-norm") return "discrete-norm(" + cert.at("ring").get<std::string>() + ")";
    if (rule == "adjoin-sqrt")
        return "adjoin-sqrt(" + std::to_string(cert.at("adjoined").get<std::int64_t>()) +
               ") over " + certificateOneLiner(cert.at("base"));
    if (rule == "adjoin-transcendental")
        return "adjoin-transcendental over " + certificateOneLiner(cert.at("base"));
    std::string out = "directed-union[";
    const auto& parts = cert.at("parts");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "; ";
        out += certificateOneLiner(parts[i]);
    }
    return out + "]";
}

void renderWitness(std::string& out, const Json& w) {
    std::string kind = w.at("kind").get<std::string>();
    std::string source = w.contains("source") ? w.at("source").get<std::string>() : "";
    std::string suffix = source.empty() ? "" : " (found by " + source + ")";
    if (kind == "vector") {
        out += "witness, condition " + std::to_string(w.at("condition").get<int>()) + suffix +
               ": " + joinVector(w.at("entries")) + "\n";
    } else if (kind == "uniform-vector") {
        out += "witness, condition " + std::to_string(w.at("condition").get<int>()) + suffix +
               ": (" + w.at("entry").get<std::string>() + " repeated " +
               std::to_string(w.at("length").get<std::uint64_t>()) + " times)\n";
    } else if (kind == "matrix") {
        out += "witness, condition 6" + suffix + ": " + std::to_string(w.at("dim").get<int>()) +
               "x" + std::to_string(w.at("dim").get<int>()) + " non-monomial unitary\n";
        for (const auto& row : w.at("rows")) out += "  " + joinVector(row) + "\n";
    } else if (kind == "projection") {
        out += "witness: non-diagonal projection\n";
        for (const auto& [id, value] : w.at("coefficients").items())
            out += "  " + id + ": " + value.get<std::string>() + "\n";
    }
}

} // namespace

std::string Report::text() const {
    std::string out;
    std::string command = doc.at("command").get<std::string>();

    if (command == "ring-check") {
        out += "ring: " + doc.at("ring").get<std::string>() + "\n";
        out += "condition: " + std::to_string(doc.at("condition").get<int>()) + "\n";
        const auto& b = doc.at("bounds");
        out += "bounds: maxLen=" + std::to_string(b.at("maxLen").get<int>()) +
               " maxHeight=" + std::to_string(b.at("maxHeight").get<int>()) +
               " maxDim=" + std::to_string(b.at("maxDim").get<int>()) +
               " maxDegree=" + std::to_string(b.at("maxDegree").get<int>()) +
               " budget=" + std::to_string(b.at("budget").get<std::uint64_t>()) + "\n";
        out += "verdict: " + doc.at("verdict").get<std::string>() + "\n";
        if (doc.contains("witness")) renderWitness(out, doc.at("witness"));
        if (doc.contains("certificate"))
            out += "certificate: " + certificateOneLiner(doc.at("certificate")) + "\n";
        if (doc.contains("note")) out += "note: " + doc.at("note").get<std::string>() + "\n";
        const auto& stats = doc.at("stats");
        out += "candidates covered: " + std::to_string(stats.at("candidates").get<std::uint64_t>()) +
               "\n";
        if (stats.contains("unitariesByDim")) {
            out += "unitaries by dimension:";
            for (const auto& [dim, count] : stats.at("unitariesByDim").items())
                out += " " + dim + ":" + std::to_string(count.get<std::uint64_t>());
            out += "\n";
        }
        return out;
    }

    if (command == "groupoid-validate") {
        out += "groupoid: " + doc.at("groupoid").get<std::string>() + "\n";
        out += "arrows: " + std::to_string(doc.at("arrows").get<int>()) + "\n";
        out += "units: " + std::to_string(doc.at("units").get<int>()) + "\n";
        if (doc.at("valid").get<bool>()) {
            out += "valid (no axiom violations)\n";
        } else {
            const auto& vs = doc.at("violations");
            out += "violations: " + std::to_string(vs.size()) + "\n";
            for (const auto& v : vs)
                out += "  [" + v.at("code").get<std::string>() + "] " +
                       v.at("message").get<std::string>() + "\n";
        }
        return out;
    }

    if (command == "algebra-projections") {
        out += "ring: " + doc.at("ring").get<std::string>() + "\n";
        out += "groupoid: " + doc.at("groupoid").get<std::string>() + "\n";
        out += "maxHeight: " + std::to_string(doc.at("maxHeight").get<int>()) + "\n";
        const auto& counts = doc.at("counts");
        out += "projections: " + std::to_string(counts.at("total").get<std::uint64_t>()) +
               " (non-diagonal: " + std::to_string(counts.at("nonDiagonal").get<int>()) + ")\n";
        for (const auto& p : doc.at("projections")) {
            out += p.at("diagonal").get<bool>() ? "  diagonal     {" : "  non-diagonal {";
            bool first = true;
            for (const auto& [id, value] : p.at("coefficients").items()) {
                if (!first) out += ", ";
                out += id + ": " + value.get<std::string>();
                first = false;
            }
            out += "}\n";
        }
        out += "candidates covered: " +
               std::to_string(doc.at("stats").at("candidates").get<std::uint64_t>()) + "\n";
        return out;
    }

    if (command == "matrix-probe") {
        out += "ring: " + doc.at("ring").get<std::string>() + "\n";
        out += "dim: " + std::to_string(doc.at("dim").get<int>()) + "\n";
        out += std::string("unitary: ") + (doc.at("unitary").get<bool>() ? "yes" : "no") + "\n";
        out += std::string("monomial: ") + (doc.at("monomial").get<bool>() ? "yes" : "no") + "\n";
        out += std::string("self-adjoint: ") + (doc.at("selfAdjoint").get<bool>() ? "yes" : "no") +
               "\n";
        if (doc.contains("diagonalPreservingConjugation"))
            out += std::string("conjugation diagonal-preserving: ") +
                   (doc.at("diagonalPreservingConjugation").get<bool>() ? "yes" : "no") + "\n";
        if (doc.contains("witness"))
            out += "this matrix is a condition-6 witness (non-monomial unitary)\n";
        return out;
    }

    if (command == "witness-convert") {
        out += "ring: " + doc.at("ring").get<std::string>() + "\n";
        out += "conversion: condition " + std::to_string(doc.at("from").get<int>()) + " -> " +
               doc.at("to").get<std::string>() + "\n";
        out += "input: " + joinVector(doc.at("input")) + "\n";
        renderWitness(out, doc.at("witness"));
        out += "verified exactly\n";
        return out;
    }

    return doc.dump(2) + "\n";
}

} // namespace kb
