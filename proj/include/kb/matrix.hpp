#pragma once

#include <vector>

#include "kb/ring.hpp"

namespace kb {

/// Square matrix over a RingSpec, row-major, exact entries.
class RingMatrix {
public:
    static RingMatrix zero(const RingSpec& ring, int n);
    static RingMatrix identity(const RingSpec& ring, int n);
    static RingMatrix fromEntries(const RingSpec& ring, int n, std::vector<RingElement> entries);

    const RingSpec& ring() const noexcept { return ring_; }
    int dim() const noexcept { return n_; }

    const RingElement& at(int row, int col) const;
    RingMatrix withEntry(int row, int col, RingElement value) const;

    RingMatrix operator+(const RingMatrix& o) const;
    RingMatrix operator*(const RingMatrix& o) const;
    bool operator==(const RingMatrix& o) const;
    bool operator!=(const RingMatrix& o) const { return !(*this == o); }

    /// Conjugate transpose.
    RingMatrix adjoint() const;

    std::vector<std::vector<std::string>> toStrings() const;

private:
    RingMatrix(RingSpec ring, int n, std::vector<RingElement> entries)
        : ring_(std::move(ring)), n_(n), entries_(std::move(entries)) {}

    RingSpec ring_;
    int n_;
    std::vector<RingElement> entries_;
};

/// Column vector over a RingSpec; nonempty.
class RingVector {
public:
    RingVector(RingSpec ring, std::vector<RingElement> entries);

    const RingSpec& ring() const noexcept { return ring_; }
    int dim() const noexcept { return static_cast<int>(entries_.size()); }
    const RingElement& at(int i) const { return entries_[static_cast<std::size_t>(i)]; }
    const std::vector<RingElement>& entries() const noexcept { return entries_; }

    int countNonzero() const;

private:
    RingSpec ring_;
    std::vector<RingElement> entries_;
};

/// U U* = I = U* U, exact equality.
bool isUnitary(const RingMatrix& m);

/// Exactly one nonzero entry in every row and every column.
bool isMonomial(const RingMatrix& m);

/// Sum of norm squares equals 1 exactly.
bool isUnitVector(const RingVector& v);

/// I - 2 v v* for a unit vector v; self-adjoint and unitary by construction,
/// both re-checked exactly.
RingMatrix householderFromVector(const RingVector& v);

/// A non-monomial unitary built from a unit vector with at least two nonzero
/// entries: the Householder matrix when it is already non-monomial, otherwise
/// the 2x2 block [[v_i, -conj(v_j)], [v_j, conj(v_i)]] embedded at the first
/// two nonzero indices of the identity.
RingMatrix nonMonomialUnitaryFromVector(const RingVector& v);

} // namespace kb
