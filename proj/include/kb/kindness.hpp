#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kb/matrix.hpp"
#include "kb/ring.hpp"

namespace kb {

struct SearchBounds {
    int maxLen = 3;
    int maxHeight = 2;
    int maxDim = 2;
    int maxDegree = 2;
    std::uint64_t budget = 100'000'000;
    int threads = 1;
};

/// Outcome of one bounded counterexample search. `candidates` is the
/// canonical 1-based rank of the witness, or the full covered space on
/// exhaustion; both are independent of pruning and thread count.
struct ConditionSearchResult {
    int condition = 0;
    std::optional<std::vector<RingElement>> witnessVector; // conditions 1 and 2
    std::optional<RingMatrix> witnessMatrix;               // condition 6
    std::uint64_t candidates = 0;
    std::map<int, std::uint64_t> unitariesByDim; // condition 6, exhausted dimensions only

    bool foundWitness() const { return witnessVector.has_value() || witnessMatrix.has_value(); }
};

/// Unit vectors with >= 2 nonzero entries, length <= maxLen, coordinate
/// heights <= maxHeight; canonically first witness or no-counterexample.
ConditionSearchResult searchCondition1(const RingSpec& ring, const SearchBounds& bounds);

/// Tuples with r_1 = sum |r_i|^2 and some r_i != 0 for i >= 2.
ConditionSearchResult searchCondition2(const RingSpec& ring, const SearchBounds& bounds);

/// Non-monomial unitaries of dimension <= maxDim with entry heights
/// <= maxHeight. On exhaustion the per-dimension unitary census is reported.
ConditionSearchResult searchCondition6(const RingSpec& ring, const SearchBounds& bounds);

bool verifyCondition1Witness(std::span<const RingElement> v);
bool verifyCondition2Witness(std::span<const RingElement> t);
bool verifyCondition6Witness(const RingMatrix& m);

/// (r_1, ..., r_n) with r_1 = sum |r_i|^2  ->  the length-2n unit vector
/// (1 - r_1, r_2, ..., r_n, r_1, r_2, ..., r_n).
std::vector<RingElement> witnessCond1FromCond2(std::span<const RingElement> t);

/// Unit vector v with >= 2 nonzero entries -> (|v_1|^2, v_1 v_2, ..., v_1 v_n),
/// reindexed internally so the leading entry is nonzero.
std::vector<RingElement> witnessCond2FromCond1(std::span<const RingElement> v);

/// Certificate tree for the closure rules: discrete-norm leaves, adjoined
/// square roots, adjoined transcendentals, directed unions.
struct KindCertificate {
    enum class Rule { DiscreteNorm, AdjoinSqrt, AdjoinTranscendental, DirectedUnion };

    Rule rule = Rule::DiscreteNorm;
    std::optional<RingSpec> ring; // absent for DirectedUnion
    std::int64_t adjoined = 0;    // AdjoinSqrt
    std::string justification;    // AdjoinSqrt: squarefree check or caller assertion
    std::vector<KindCertificate> children;

    static KindCertificate discreteNorm(const RingSpec& spec);
    static KindCertificate adjoinSqrt(KindCertificate base, std::int64_t n,
                                      std::string justification);
    static KindCertificate adjoinTranscendental(KindCertificate base);
    static KindCertificate directedUnion(std::vector<KindCertificate> parts);
};

/// Rule-engine re-validation: every leaf has a discrete norm, every node
/// mirrors its ring's construction from the child's ring.
bool validateCertificate(const KindCertificate& cert);

/// The uniform vector (entry, entry, ..., entry) of the given length; the
/// closure-rule disproof (1/m repeated m^2 times) uses it so that absurdly
/// large m need not be materialized.
struct UniformVectorWitness {
    UniformVectorWitness(RingElement e, std::uint64_t n) : entry(std::move(e)), length(n) {}

    RingElement entry;
    std::uint64_t length = 0;

    /// sum of norm squares = 1 and >= 2 nonzero entries, checked symbolically.
    bool verifies() const;
    /// Explicit entries; UsageError beyond the materialization cap.
    std::vector<RingElement> materialize(std::uint64_t cap = 65536) const;
};

struct CertifyOutcome {
    std::optional<KindCertificate> certificate;
    std::optional<UniformVectorWitness> disproof;

    bool certified() const { return certificate.has_value(); }
};

/// Structural recursion over the ring spec: discrete-norm leaf when
/// |r| < 1 forces r = 0, square-root and transcendental closure rules over a
/// certifiable base, and the 1/m disproof vector otherwise.
CertifyOutcome certifyKind(const RingSpec& spec);

/// The split of sum |a_i + b_i sqrt(d)|^2 into its rational and sqrt(d)
/// components, with the expanded base vector (a_i, b_i repeated |d| times).
struct QuadraticSplit {
    RingElement rationalPart;
    RingElement irrationalPart;
    std::vector<RingElement> expandedBaseVector;
};
QuadraticSplit quadraticSplitVector(const RingVector& v);

/// Constant vectors descend to the base ring; vectors with a nonconstant
/// entry are refuted by the top coefficient of sum f_i conj(f_i), a nonzero
/// sum of leading-coefficient norm squares.
struct PolyReduction {
    std::optional<std::vector<RingElement>> baseVector;
    std::optional<RingElement> topCoefficient;
    int topDegree = 0;

    bool isUnitVectorCandidate() const { return baseVector.has_value(); }
};
PolyReduction polyUnitVectorReduce(const RingVector& v);

/// sum c_i^2 = 1 (plain squares, no conjugation) in a non-trivial way:
/// anything other than a single entry with c^2 = 1.
bool isLRingViolation(const RingVector& c);

} // namespace kb
