#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kb/rational.hpp"

namespace kb {

enum class RingFamily {
    Integers,         // Z
    GaussianIntegers, // Z[i]
    Quadratic,        // base[sqrt d], d squarefree, d != 0, 1; base in {Z, Z[1/m], Q}
    Localized,        // Z[1/m], m >= 2
    Rationals,        // Q
    PolyExt,          // base[t], one real transcendental generator, conjugation coefficientwise
};

/// Description of a conjugation-closed subring of C. Value type; nested
/// specs (Quadratic/PolyExt bases) are shared immutably.
class RingSpec {
public:
    static RingSpec integers();
    static RingSpec rationals();
    static RingSpec gaussianIntegers();
    /// Rejects d = 0, 1 and non-squarefree d (naming the square factor);
    /// d = -1 over Z canonicalizes to gaussianIntegers().
    static RingSpec quadratic(std::int64_t d, const RingSpec& base = integers());
    static RingSpec localized(std::int64_t m);
    static RingSpec polynomial(const RingSpec& base);

    /// Grammar: Z | Q with suffixes [i], [sqrt D], [1/M], [t].
    /// Whitespace-insensitive, case-sensitive.
    static RingSpec parse(std::string_view text);

    RingFamily family() const noexcept { return family_; }
    /// d for Quadratic, m for Localized.
    std::int64_t param() const noexcept { return param_; }
    const RingSpec& base() const;

    bool operator==(const RingSpec& o) const;
    bool operator!=(const RingSpec& o) const { return !(*this == o); }

    /// Canonical spelling, parseable by parse().
    std::string name() const;

    /// 1-based nesting depth of a PolyExt layer (innermost = 1); used for
    /// generator naming in element syntax (t, u, v, w, t5, ...).
    int polyDepth() const;

    /// True when fraction denominators are permitted (Q, Z[1/m], or a
    /// Quadratic/PolyExt over such a base).
    bool admitsFractions() const;

    /// An m >= 2 with 1/m in the ring (the localized m, or 2 for Q), when
    /// the tower contains a Localized/Rationals layer; 0 otherwise.
    std::int64_t invertedInteger() const;

private:
    RingFamily family_{RingFamily::Integers};
    std::int64_t param_{0};
    std::shared_ptr<const RingSpec> base_;
};

/// Generator symbol for a PolyExt spec ("t" innermost, then "u", "v", "w").
std::string polyGeneratorName(const RingSpec& polySpec);

enum class Discreteness { Yes, No, Unknown };

/// Whether |r| < 1 forces r = 0, decided by norm-square integrality.
Discreteness isDiscreteAtOne(const RingSpec& spec);

/// Exact element of a RingSpec. Immutable value type.
///
/// Payloads: Integers/Localized/Rationals hold one canonical Rational;
/// GaussianIntegers/Quadratic hold a formal pair (a, b) of base elements
/// (a + b*i resp. a + b*sqrt(d), never collapsed numerically); PolyExt
/// holds a coefficient list, low degree first, no trailing zeros.
class RingElement {
public:
    static RingElement zero(const RingSpec& spec);
    static RingElement one(const RingSpec& spec);
    static RingElement fromInteger(const RingSpec& spec, std::int64_t n);
    /// Scalar families only; checks Localized membership.
    static RingElement scalar(const RingSpec& spec, Rational value);
    /// Gaussian or Quadratic: a + b*s with s the adjoined square root.
    static RingElement pair(const RingSpec& spec, RingElement a, RingElement b);
    static RingElement gaussian(std::int64_t a, std::int64_t b);
    /// PolyExt, coefficients low degree first (trailing zeros trimmed).
    static RingElement polynomial(const RingSpec& spec, std::vector<RingElement> coeffs);

    /// Element literal in the ring's syntax ("2-i", "1/2+1/2*i",
    /// "3-2*sqrt(-5)", "t^2-2*t+1", "(1+i)*t").
    static RingElement parse(const RingSpec& spec, std::string_view text);

    const RingSpec& spec() const noexcept { return spec_; }

    bool isZero() const;
    bool isOne() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;

    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    /// Complex conjugate under the ring's embedding: identity on real
    /// rings, (a, b) -> (a, -b) when the adjoined root is imaginary,
    /// coefficientwise on PolyExt.
    RingElement conjugate() const;

    /// a * conj(a); real and nonnegative under the embedding.
    RingElement normSquared() const;

    /// Max |integer component| of the canonical form; fractions contribute
    /// max(|num|, den); height(0) = 0.
    int height() const;

    /// Canonical total order: graded by height, then lexicographic on the
    /// component key (|component| before sign, nonnegative first).
    static int compareCanonical(const RingElement& a, const RingElement& b);
    void appendKey(std::vector<std::int64_t>& out) const;

    std::string str() const;

    // Structure accessors (UsageError when the family does not match).
    const Rational& scalarValue() const;
    const RingElement& pairA() const;
    const RingElement& pairB() const;
    std::span<const RingElement> coefficients() const;
    /// Polynomial degree; -1 for the zero polynomial.
    int degree() const;

    /// True when the element is fixed by conjugation AND order-comparable
    /// exactly (real quadratic parts decide via sign computations;
    /// nonconstant polynomials are not comparable).
    bool isExactlyComparable() const;
    /// Sign under the real embedding; UsageError if not comparable.
    int signReal() const;
    /// Sign of (*this - o); UsageError if not comparable.
    int compareReal(const RingElement& o) const;

private:
    RingElement() = default;

    RingSpec spec_;
    Rational scalar_;
    std::vector<RingElement> kids_;
};

/// All elements of height <= maxHeight (PolyExt additionally bounded by
/// maxDegree), in canonical order, no duplicates. The result for maxHeight H
/// is a prefix of the result for H+1.
std::vector<RingElement> enumerateElements(const RingSpec& spec, int maxHeight, int maxDegree = 2);

/// Effective d for pair families: -1 for Z[i], the spec param otherwise.
std::int64_t quadraticParam(const RingSpec& spec);

} // namespace kb
