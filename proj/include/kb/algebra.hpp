#pragma once

#include <cstdint>
#include <map>
#include <memory>

#include "kb/groupoid.hpp"
#include "kb/matrix.hpp"
#include "kb/ring.hpp"

namespace kb {

/// Element of the convolution algebra R(G): a finitely supported ring-valued
/// function on the arrows. Sparse; explicitly stored zeros are normalized
/// away. Immutable value type over a shared groupoid handle.
class AlgebraElement {
public:
    static AlgebraElement zero(std::shared_ptr<const FiniteGroupoid> g, const RingSpec& ring);
    /// 1_gamma.
    static AlgebraElement indicator(std::shared_ptr<const FiniteGroupoid> g, const RingSpec& ring,
                                    int arrow);
    /// Sum of all unit indicators; the identity of R(G).
    static AlgebraElement identity(std::shared_ptr<const FiniteGroupoid> g, const RingSpec& ring);
    static AlgebraElement fromCoefficients(std::shared_ptr<const FiniteGroupoid> g,
                                           const RingSpec& ring,
                                           std::map<int, RingElement> coeffs);

    const std::shared_ptr<const FiniteGroupoid>& groupoid() const noexcept { return g_; }
    const RingSpec& ring() const noexcept { return ring_; }

    /// Coefficient at an arrow (zero when absent from the support).
    RingElement coefficient(int arrow) const;
    const std::map<int, RingElement>& support() const noexcept { return coeffs_; }

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement scaledBy(const RingElement& c) const;
    bool operator==(const AlgebraElement& o) const;
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }
    bool isZero() const { return coeffs_.empty(); }

    /// Serialization into report documents: {arrowId: elementString},
    /// ordered by arrow id.
    std::map<std::string, std::string> toStrings() const;

private:
    AlgebraElement(std::shared_ptr<const FiniteGroupoid> g, RingSpec ring)
        : g_(std::move(g)), ring_(std::move(ring)) {}

    std::shared_ptr<const FiniteGroupoid> g_;
    RingSpec ring_;
    std::map<int, RingElement> coeffs_;
};

/// (f * g)(gamma) = sum over alpha with rng(alpha) = rng(gamma) of
/// f(alpha) g(alpha^-1 gamma); equivalently the sum of f(a) g(b) over all
/// composable pairs with ab = gamma. Undefined compositions contribute zero.
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g);

/// f*(gamma) = conj(f(gamma^-1)).
AlgebraElement star(const AlgebraElement& f);

/// Support contained in the unit space.
bool isDiagonal(const AlgebraElement& f);

/// f = f * star(f). When true, self-adjointness and idempotence (which the
/// identity forces) are re-asserted exactly.
bool isProjection(const AlgebraElement& f);

/// All projections with coefficient heights <= maxHeight, canonically
/// ordered (graded by total coefficient height, then lexicographic over
/// arrows). The budget caps the covered coefficient space (ResourceError).
std::vector<AlgebraElement> enumerateProjections(const RingSpec& ring,
                                                 std::shared_ptr<const FiniteGroupoid> g,
                                                 int maxHeight, std::uint64_t budget = 10'000'000,
                                                 int threads = 1);

/// n n' n = n, n' n n' = n', and n 1_u n' / n' 1_u n diagonal for every unit
/// indicator (sufficient by linearity).
bool isNormalizerPair(const AlgebraElement& f, const AlgebraElement& f2);

/// The *-isomorphism R(R_n) = M_n(R): f -> [f((i,j))].
RingMatrix toMatrix(const AlgebraElement& f);
AlgebraElement fromMatrix(std::shared_ptr<const FiniteGroupoid> rn, const RingMatrix& a);

/// A *-homomorphism presented extensionally by the images of the arrow
/// indicator spanning set.
struct StarHomomorphism {
    std::shared_ptr<const FiniteGroupoid> source;
    std::shared_ptr<const FiniteGroupoid> target;
    RingSpec ring;
    std::vector<AlgebraElement> images; // indexed by source arrow

    const AlgebraElement& imageOf(int arrow) const {
        return images[static_cast<std::size_t>(arrow)];
    }
};

/// Checks multiplicativity and star-compatibility on the spanning set;
/// throws UsageError naming the first failing pair.
void verifyStarHomomorphism(const StarHomomorphism& h);

/// After verification: true iff every unit indicator maps into the target
/// diagonal (sufficient since D is spanned by unit indicators).
bool isDiagonalPreserving(const StarHomomorphism& h);

/// Conjugation by a unitary over the canonical R_n: E_ij -> U E_ij U*.
StarHomomorphism conjugationMap(const RingMatrix& u, std::shared_ptr<const FiniteGroupoid> rn);

} // namespace kb
