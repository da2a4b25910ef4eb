#include "kb/kindness.hpp"

#include <algorithm>

#include "kb/enumeration.hpp"
#include "kb/errors.hpp"

namespace kb {

namespace {

// Necessary conditions for `x` to be a sum of at most `slots` norm squares.
// Exact and conservative, so pruning with it never discards a witness:
// norm-square sums are fixed by conjugation, have positive "rational" parts
// when nonzero, are nonnegative under the real embedding where that is
// decidable, and over polynomial rings carry an even top degree with a
// positive leading coefficient.
bool canBeSumOfNormSquares(const RingElement& x, int slots) {
    if (x.isZero()) return true;
    if (slots <= 0) return false;
    switch (x.spec().family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals:
        return x.scalarValue().sign() > 0;
    case RingFamily::GaussianIntegers:
        return x.pairB().isZero() && x.pairA().scalarValue().sign() > 0;
    case RingFamily::Quadratic: {
        if (quadraticParam(x.spec()) < 0)
            return x.pairB().isZero() && canBeSumOfNormSquares(x.pairA(), slots);
        // rational parts of norm squares are a^2 + d b^2 >= 0, so the sum's
        // rational part must be positive; and the sum itself is >= 0 as a
        // real number
        return x.pairA().scalarValue().sign() > 0 && x.signReal() > 0;
    }
    case RingFamily::PolyExt: {
        if (x.conjugate() != x) return false;
        auto coeffs = x.coefficients();
        if (coeffs.size() <= 1) return canBeSumOfNormSquares(coeffs[0], slots);
        int degree = static_cast<int>(coeffs.size()) - 1;
        if (degree % 2 != 0) return false;
        return canBeSumOfNormSquares(coeffs.back(), slots);
    }
    }
    return true;
}

std::vector<RingElement> normSquaresOf(const ElementTable& table) {
    std::vector<RingElement> out;
    out.reserve(table.size());
    for (const auto& e : table.elems) out.push_back(e.normSquared());
    return out;
}

// Shared by conditions 1 and 2: track the remaining norm budget and the
// nonzero count along the depth-first prefix.
class TupleWorker : public GradeWorker {
public:
    TupleWorker(const ElementTable& table, const std::vector<RingElement>& normSqs, int length,
                bool fixedTarget)
        : table_(table), normSqs_(normSqs), length_(length), fixedTarget_(fixedTarget),
          need_(static_cast<std::size_t>(length), RingElement::zero(table.spec)),
          nonzero_(static_cast<std::size_t>(length), 0) {}

    bool prune(std::span<const std::size_t> ranks, int pos) override {
        std::size_t r = ranks[static_cast<std::size_t>(pos)];
        const RingElement& e = table_.elems[r];
        RingElement need = [&] {
            if (pos == 0) {
                // condition 1 spends the fixed target 1; condition 2 spends
                // the chosen r_1 itself
                RingElement target =
                    fixedTarget_ ? RingElement::one(table_.spec) : e;
                return target - normSqs_[r];
            }
            return need_[static_cast<std::size_t>(pos) - 1] - normSqs_[r];
        }();
        int tailNonzero = (pos == 0 ? 0 : nonzero_[static_cast<std::size_t>(pos) - 1]);
        if (fixedTarget_ || pos > 0)
            tailNonzero += e.isZero() ? 0 : 1;
        need_[static_cast<std::size_t>(pos)] = need;
        nonzero_[static_cast<std::size_t>(pos)] = tailNonzero;
        return !canBeSumOfNormSquares(need_[static_cast<std::size_t>(pos)], length_ - pos - 1);
    }

    bool accept(std::span<const std::size_t> ranks) override {
        std::size_t last = ranks.size() - 1;
        if (!need_[last].isZero()) return false;
        // condition 1 wants >= 2 nonzero entries; condition 2 wants a
        // nonzero entry past the first
        return nonzero_[last] >= (fixedTarget_ ? 2 : 1);
    }

private:
    const ElementTable& table_;
    const std::vector<RingElement>& normSqs_;
    int length_;
    bool fixedTarget_;
    std::vector<RingElement> need_;
    std::vector<int> nonzero_;
};

class UnitaryWorker : public GradeWorker {
public:
    UnitaryWorker(const ElementTable& table, const std::vector<RingElement>& normSqs, int dim)
        : table_(table), normSqs_(normSqs), dim_(dim),
          rowNeed_(static_cast<std::size_t>(dim) * dim, RingElement::zero(table.spec)) {}

    bool prune(std::span<const std::size_t> ranks, int pos) override {
        int col = pos % dim_;
        std::size_t r = ranks[static_cast<std::size_t>(pos)];
        RingElement prev = col == 0 ? RingElement::one(table_.spec)
                                    : rowNeed_[static_cast<std::size_t>(pos) - 1];
        rowNeed_[static_cast<std::size_t>(pos)] = prev - normSqs_[r];
        if (!canBeSumOfNormSquares(rowNeed_[static_cast<std::size_t>(pos)], dim_ - col - 1))
            return true;
        if (col == dim_ - 1) {
            // completed row: unit norm and orthogonal to all earlier rows
            if (!rowNeed_[static_cast<std::size_t>(pos)].isZero()) return true;
            int row = pos / dim_;
            for (int prior = 0; prior < row; ++prior) {
                RingElement dot = RingElement::zero(table_.spec);
                for (int k = 0; k < dim_; ++k) {
                    const RingElement& a =
                        table_.elems[ranks[static_cast<std::size_t>(row * dim_ + k)]];
                    const RingElement& b =
                        table_.elems[ranks[static_cast<std::size_t>(prior * dim_ + k)]];
                    dot = dot + a * b.conjugate();
                }
                if (!dot.isZero()) return true;
            }
        }
        return false;
    }

    bool accept(std::span<const std::size_t> ranks) override {
        std::vector<RingElement> entries;
        entries.reserve(ranks.size());
        for (std::size_t r : ranks) entries.push_back(table_.elems[r]);
        RingMatrix m = RingMatrix::fromEntries(table_.spec, dim_, std::move(entries));
        if (!isUnitary(m))
            throw InternalError("row-orthonormal matrix failed the unitarity predicate");
        ++sideCount;
        return !isMonomial(m);
    }

private:
    const ElementTable& table_;
    const std::vector<RingElement>& normSqs_;
    int dim_;
    std::vector<RingElement> rowNeed_;
};

ConditionSearchResult runTupleSearch(const RingSpec& ring, const SearchBounds& bounds,
                                     bool fixedTarget, int condition) {
    if (bounds.maxLen < 1) throw UsageError("maxLen must be positive");
    if (bounds.maxHeight < 0) throw UsageError("maxHeight must be nonnegative");
    ElementTable table = ElementTable::build(ring, bounds.maxHeight, bounds.maxDegree);
    std::vector<RingElement> normSqs = normSquaresOf(table);
    std::vector<SectionSpec> sections;
    for (int len = 1; len <= bounds.maxLen; ++len) sections.push_back({len, len});

    auto outcome = runGradedSearch(
        table, sections,
        [&](int sectionId) {
            return std::make_unique<TupleWorker>(table, normSqs, sectionId, fixedTarget);
        },
        bounds.budget, bounds.threads, true);

    ConditionSearchResult result;
    result.condition = condition;
    result.candidates = outcome.candidates;
    if (outcome.witness) {
        std::vector<RingElement> witness;
        for (std::size_t r : outcome.witness->second) witness.push_back(table.elems[r]);
        result.witnessVector = std::move(witness);
    }
    return result;
}

} // namespace

ConditionSearchResult searchCondition1(const RingSpec& ring, const SearchBounds& bounds) {
    auto result = runTupleSearch(ring, bounds, true, 1);
    if (result.witnessVector && !verifyCondition1Witness(*result.witnessVector))
        throw InternalError("condition-1 search produced a non-witness");
    return result;
}

ConditionSearchResult searchCondition2(const RingSpec& ring, const SearchBounds& bounds) {
    auto result = runTupleSearch(ring, bounds, false, 2);
    if (result.witnessVector && !verifyCondition2Witness(*result.witnessVector))
        throw InternalError("condition-2 search produced a non-witness");
    return result;
}

ConditionSearchResult searchCondition6(const RingSpec& ring, const SearchBounds& bounds) {
    if (bounds.maxDim < 1) throw UsageError("maxDim must be positive");
    if (bounds.maxHeight < 0) throw UsageError("maxHeight must be nonnegative");
    ElementTable table = ElementTable::build(ring, bounds.maxHeight, bounds.maxDegree);
    std::vector<RingElement> normSqs = normSquaresOf(table);
    std::vector<SectionSpec> sections;
    for (int dim = 1; dim <= bounds.maxDim; ++dim) sections.push_back({dim, dim * dim});

    auto outcome = runGradedSearch(
        table, sections,
        [&](int dim) { return std::make_unique<UnitaryWorker>(table, normSqs, dim); },
        bounds.budget, bounds.threads, true);

    ConditionSearchResult result;
    result.condition = 6;
    result.candidates = outcome.candidates;
    result.unitariesByDim = outcome.sideCountsBySection;
    if (outcome.witness) {
        auto [dim, ranks] = *outcome.witness;
        std::vector<RingElement> entries;
        for (std::size_t r : ranks) entries.push_back(table.elems[r]);
        result.witnessMatrix = RingMatrix::fromEntries(ring, dim, std::move(entries));
        if (!verifyCondition6Witness(*result.witnessMatrix))
            throw InternalError("condition-6 search produced a non-witness");
    }
    return result;
}

bool verifyCondition1Witness(std::span<const RingElement> v) {
    if (v.empty()) return false;
    RingVector vec(v[0].spec(), {v.begin(), v.end()});
    return isUnitVector(vec) && vec.countNonzero() >= 2;
}

bool verifyCondition2Witness(std::span<const RingElement> t) {
    if (t.empty()) return false;
    RingElement sum = RingElement::zero(t[0].spec());
    for (const auto& e : t) sum = sum + e.normSquared();
    if (sum != t[0]) return false;
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!t[i].isZero()) return true;
    return false;
}

bool verifyCondition6Witness(const RingMatrix& m) { return isUnitary(m) && !isMonomial(m); }

std::vector<RingElement> witnessCond1FromCond2(std::span<const RingElement> t) {
    if (!verifyCondition2Witness(t))
        throw UsageError("input is not a condition-2 witness (r_1 = sum |r_i|^2 with some "
                         "r_i != 0, i >= 2)");
    const RingSpec& ring = t[0].spec();
    std::vector<RingElement> w;
    w.reserve(2 * t.size());
    w.push_back(RingElement::one(ring) - t[0]);
    for (std::size_t i = 1; i < t.size(); ++i) w.push_back(t[i]);
    for (const auto& e : t) w.push_back(e);
    if (!verifyCondition1Witness(w))
        throw InternalError("condition-1 witness construction failed its contract");
    return w;
}

std::vector<RingElement> witnessCond2FromCond1(std::span<const RingElement> v) {
    if (!verifyCondition1Witness(v))
        throw UsageError("input is not a condition-1 witness (unit vector with >= 2 nonzero "
                         "entries)");
    std::vector<RingElement> reindexed(v.begin(), v.end());
    for (std::size_t i = 0; i < reindexed.size(); ++i) {
        if (!reindexed[i].isZero()) {
            std::swap(reindexed[0], reindexed[i]);
            break;
        }
    }
    std::vector<RingElement> t;
    t.reserve(reindexed.size());
    t.push_back(reindexed[0].normSquared());
    for (std::size_t i = 1; i < reindexed.size(); ++i) t.push_back(reindexed[0] * reindexed[i]);
    if (!verifyCondition2Witness(t))
        throw InternalError("condition-2 witness construction failed its contract");
    return t;
}

// ---------------------------------------------------------------------------
// certificates
// ---------------------------------------------------------------------------

KindCertificate KindCertificate::discreteNorm(const RingSpec& spec) {
    KindCertificate c;
    c.rule = Rule::DiscreteNorm;
    c.ring = spec;
    return c;
}

KindCertificate KindCertificate::adjoinSqrt(KindCertificate base, std::int64_t n,
                                            std::string justification) {
    KindCertificate c;
    c.rule = Rule::AdjoinSqrt;
    if (!base.ring) throw UsageError("adjoinSqrt needs a base certificate with a ring");
    c.ring = RingSpec::quadratic(n, *base.ring);
    c.adjoined = n;
    c.justification = std::move(justification);
    c.children.push_back(std::move(base));
    return c;
}

KindCertificate KindCertificate::adjoinTranscendental(KindCertificate base) {
    KindCertificate c;
    c.rule = Rule::AdjoinTranscendental;
    if (!base.ring) throw UsageError("adjoinTranscendental needs a base certificate with a ring");
    c.ring = RingSpec::polynomial(*base.ring);
    c.children.push_back(std::move(base));
    return c;
}

KindCertificate KindCertificate::directedUnion(std::vector<KindCertificate> parts) {
    if (parts.empty()) throw UsageError("directed union certificate needs at least one part");
    KindCertificate c;
    c.rule = Rule::DirectedUnion;
    c.children = std::move(parts);
    return c;
}

bool validateCertificate(const KindCertificate& cert) {
    switch (cert.rule) {
    case KindCertificate::Rule::DiscreteNorm:
        return cert.ring && cert.children.empty() && isDiscreteAtOne(*cert.ring) == Discreteness::Yes;
    case KindCertificate::Rule::AdjoinSqrt: {
        if (cert.children.size() != 1 || !cert.ring || !cert.children[0].ring) return false;
        if (!validateCertificate(cert.children[0])) return false;
        const RingSpec& base = *cert.children[0].ring;
        try {
            if (RingSpec::quadratic(cert.adjoined, base) != *cert.ring) return false;
        } catch (const UsageError&) {
            return false; // not squarefree, or a rejected tower
        }
        // over Z the squarefree check itself settles sqrt(n) outside the
        // fraction field; any other base needs a recorded assertion
        if (base.family() != RingFamily::Integers && cert.justification.empty()) return false;
        return true;
    }
    case KindCertificate::Rule::AdjoinTranscendental: {
        if (cert.children.size() != 1 || !cert.ring || !cert.children[0].ring) return false;
        if (!validateCertificate(cert.children[0])) return false;
        return RingSpec::polynomial(*cert.children[0].ring) == *cert.ring;
    }
    case KindCertificate::Rule::DirectedUnion: {
        if (cert.children.empty()) return false;
        for (const auto& part : cert.children)
            if (!validateCertificate(part)) return false;
        return true;
    }
    }
    return false;
}

bool UniformVectorWitness::verifies() const {
    if (length < 2 || entry.isZero()) return false;
    // sum of norm squares = length * |entry|^2, computed symbolically
    RingElement lengthElem =
        RingElement::fromInteger(entry.spec(), static_cast<std::int64_t>(length));
    return (lengthElem * entry.normSquared()).isOne();
}

std::vector<RingElement> UniformVectorWitness::materialize(std::uint64_t cap) const {
    if (length > cap)
        throw UsageError("uniform witness of length " + std::to_string(length) +
                         " exceeds the materialization cap " + std::to_string(cap));
    return std::vector<RingElement>(static_cast<std::size_t>(length), entry);
}

CertifyOutcome certifyKind(const RingSpec& spec) {
    CertifyOutcome out;
    if (isDiscreteAtOne(spec) == Discreteness::Yes) {
        out.certificate = KindCertificate::discreteNorm(spec);
        return out;
    }
    switch (spec.family()) {
    case RingFamily::Quadratic: {
        CertifyOutcome base = certifyKind(spec.base());
        if (base.certified()) {
            out.certificate = KindCertificate::adjoinSqrt(
                std::move(*base.certificate), spec.param(),
                std::to_string(spec.param()) +
                    " is squarefree, so its square root lies outside the fraction field Q");
            return out;
        }
        break;
    }
    case RingFamily::PolyExt: {
        CertifyOutcome base = certifyKind(spec.base());
        if (base.certified()) {
            out.certificate = KindCertificate::adjoinTranscendental(std::move(*base.certificate));
            return out;
        }
        break;
    }
    default:
        break;
    }
    // the tower inverts some integer m >= 2, which refutes kindness via the
    // unit vector (1/m, ..., 1/m) of length m^2
    std::int64_t m = spec.invertedInteger();
    if (m >= 2) {
        UniformVectorWitness w(RingElement::parse(spec, "1/" + std::to_string(m)),
                               static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m));
        if (!w.verifies()) throw InternalError("closure-rule disproof failed to verify");
        out.disproof = std::move(w);
        return out;
    }
    throw InternalError("ring " + spec.name() + " was neither certified nor disproved");
}

// ---------------------------------------------------------------------------
// Proposition-3 style reductions
// ---------------------------------------------------------------------------

QuadraticSplit quadraticSplitVector(const RingVector& v) {
    const RingSpec& spec = v.ring();
    if (spec.family() != RingFamily::Quadratic && spec.family() != RingFamily::GaussianIntegers)
        throw UsageError("quadraticSplitVector requires a ring with an adjoined square root");
    std::int64_t d = quadraticParam(spec);
    std::int64_t absd = d < 0 ? -d : d;
    const RingSpec& base = spec.base();
    RingElement absdElem = RingElement::fromInteger(base, absd);

    QuadraticSplit split{RingElement::zero(base), RingElement::zero(base), {}};
    for (const auto& e : v.entries()) {
        const RingElement& a = e.pairA();
        const RingElement& b = e.pairB();
        split.rationalPart =
            split.rationalPart + a * a.conjugate() + b * b.conjugate() * absdElem;
        // the sign convention matches the conjugation rule: + for real
        // square roots, - for imaginary ones
        RingElement cross = d > 0 ? a * b.conjugate() + a.conjugate() * b
                                  : a.conjugate() * b - a * b.conjugate();
        split.irrationalPart = split.irrationalPart + cross;
        split.expandedBaseVector.push_back(a);
        for (std::int64_t k = 0; k < absd; ++k) split.expandedBaseVector.push_back(b);
    }

    // |v_i|^2 = (a_i a_i* + |d| b_i b_i*) + cross_i * sqrt(d), so the two
    // parts must reassemble the norm sum
    RingElement recombined = RingElement::pair(spec, split.rationalPart, split.irrationalPart);
    RingElement direct = RingElement::zero(spec);
    for (const auto& e : v.entries()) direct = direct + e.normSquared();
    if (recombined != direct)
        throw InternalError("quadratic split failed to reassemble the norm sum");

    if (isUnitVector(v)) {
        if (!split.irrationalPart.isZero() || !split.rationalPart.isOne())
            throw InternalError("quadratic split of a unit vector must have parts (1, 0)");
        RingVector expanded(base, split.expandedBaseVector);
        if (!isUnitVector(expanded))
            throw InternalError("expanded base vector of a unit vector must be a unit vector");
    }
    return split;
}

PolyReduction polyUnitVectorReduce(const RingVector& v) {
    const RingSpec& spec = v.ring();
    if (spec.family() != RingFamily::PolyExt)
        throw UsageError("polyUnitVectorReduce requires a polynomial extension");
    const RingSpec& base = spec.base();

    int maxDegree = -1;
    for (const auto& e : v.entries()) maxDegree = std::max(maxDegree, e.degree());

    PolyReduction out;
    if (maxDegree <= 0) {
        std::vector<RingElement> constants;
        for (const auto& e : v.entries()) {
            auto coeffs = e.coefficients();
            constants.push_back(coeffs.empty() ? RingElement::zero(base) : coeffs[0]);
        }
        out.baseVector = std::move(constants);
        return out;
    }

    RingElement sum = RingElement::zero(spec);
    for (const auto& e : v.entries()) sum = sum + e.normSquared();
    out.topDegree = 2 * maxDegree;
    if (sum.degree() != out.topDegree)
        throw InternalError("norm sum lost its top degree unexpectedly");
    RingElement top = sum.coefficients()[static_cast<std::size_t>(out.topDegree)];

    // evidence check: the top coefficient is the sum of the norm squares of
    // the leading coefficients of the maximal-degree entries
    RingElement expected = RingElement::zero(base);
    for (const auto& e : v.entries()) {
        if (e.degree() != maxDegree) continue;
        RingElement lead = e.coefficients()[static_cast<std::size_t>(maxDegree)];
        expected = expected + lead.normSquared();
    }
    if (top != expected || top.isZero())
        throw InternalError("top coefficient is not the expected sum of leading norm squares");
    out.topCoefficient = std::move(top);
    return out;
}

bool isLRingViolation(const RingVector& c) {
    RingElement sum = RingElement::zero(c.ring());
    for (const auto& e : c.entries()) sum = sum + e * e;
    if (!sum.isOne()) return false;
    if (c.countNonzero() == 1) {
        for (const auto& e : c.entries())
            if (!e.isZero() && (e * e).isOne()) return false; // the trivial form
    }
    return true;
}

} // namespace kb
