#include "kb/matrix.hpp"

#include "kb/errors.hpp"

namespace kb {

RingMatrix RingMatrix::zero(const RingSpec& ring, int n) {
    if (n < 1) throw UsageError("matrix dimension must be positive");
    return RingMatrix(ring, n,
                      std::vector<RingElement>(static_cast<std::size_t>(n) * n,
                                               RingElement::zero(ring)));
}

RingMatrix RingMatrix::identity(const RingSpec& ring, int n) {
    RingMatrix m = zero(ring, n);
    for (int i = 0; i < n; ++i)
        m.entries_[static_cast<std::size_t>(i) * n + i] = RingElement::one(ring);
    return m;
}

RingMatrix RingMatrix::fromEntries(const RingSpec& ring, int n, std::vector<RingElement> entries) {
    if (n < 1) throw UsageError("matrix dimension must be positive");
    if (entries.size() != static_cast<std::size_t>(n) * n)
        throw UsageError("matrix entry count does not match dimension");
    for (const auto& e : entries)
        if (e.spec() != ring) throw UsageError("matrix entry ring mismatch");
    return RingMatrix(ring, n, std::move(entries));
}

const RingElement& RingMatrix::at(int row, int col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_) throw UsageError("matrix index out of range");
    return entries_[static_cast<std::size_t>(row) * n_ + col];
}

RingMatrix RingMatrix::withEntry(int row, int col, RingElement value) const {
    if (value.spec() != ring_) throw UsageError("matrix entry ring mismatch");
    if (row < 0 || row >= n_ || col < 0 || col >= n_) throw UsageError("matrix index out of range");
    RingMatrix m = *this;
    m.entries_[static_cast<std::size_t>(row) * n_ + col] = std::move(value);
    return m;
}

RingMatrix RingMatrix::operator+(const RingMatrix& o) const {
    if (ring_ != o.ring_ || n_ != o.n_) throw UsageError("matrix shape or ring mismatch");
    std::vector<RingElement> sum;
    sum.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) sum.push_back(entries_[i] + o.entries_[i]);
    return RingMatrix(ring_, n_, std::move(sum));
}

RingMatrix RingMatrix::operator*(const RingMatrix& o) const {
    if (ring_ != o.ring_ || n_ != o.n_) throw UsageError("matrix shape or ring mismatch");
    RingMatrix prod = zero(ring_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            RingElement acc = RingElement::zero(ring_);
            for (int k = 0; k < n_; ++k) acc = acc + at(i, k) * o.at(k, j);
            prod.entries_[static_cast<std::size_t>(i) * n_ + j] = std::move(acc);
        }
    return prod;
}

bool RingMatrix::operator==(const RingMatrix& o) const {
    return ring_ == o.ring_ && n_ == o.n_ && entries_ == o.entries_;
}

RingMatrix RingMatrix::adjoint() const {
    RingMatrix adj = zero(ring_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            adj.entries_[static_cast<std::size_t>(j) * n_ + i] = at(i, j).conjugate();
    return adj;
}

std::vector<std::vector<std::string>> RingMatrix::toStrings() const {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        std::vector<std::string> row;
        row.reserve(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) row.push_back(at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

RingVector::RingVector(RingSpec ring, std::vector<RingElement> entries)
    : ring_(std::move(ring)), entries_(std::move(entries)) {
    if (entries_.empty()) throw UsageError("vector must be nonempty");
    for (const auto& e : entries_)
        if (e.spec() != ring_) throw UsageError("vector entry ring mismatch");
}

int RingVector::countNonzero() const {
    int count = 0;
    for (const auto& e : entries_)
        if (!e.isZero()) ++count;
    return count;
}

bool isUnitary(const RingMatrix& m) {
    RingMatrix id = RingMatrix::identity(m.ring(), m.dim());
    RingMatrix adj = m.adjoint();
    return m * adj == id && adj * m == id;
}

bool isMonomial(const RingMatrix& m) {
    int n = m.dim();
    for (int i = 0; i < n; ++i) {
        int nonzero = 0;
        for (int j = 0; j < n; ++j)
            if (!m.at(i, j).isZero()) ++nonzero;
        if (nonzero != 1) return false;
    }
    for (int j = 0; j < n; ++j) {
        int nonzero = 0;
        for (int i = 0; i < n; ++i)
            if (!m.at(i, j).isZero()) ++nonzero;
        if (nonzero != 1) return false;
    }
    return true;
}

bool isUnitVector(const RingVector& v) {
    RingElement sum = RingElement::zero(v.ring());
    for (const auto& e : v.entries()) sum = sum + e.normSquared();
    return sum.isOne();
}

RingMatrix householderFromVector(const RingVector& v) {
    if (!isUnitVector(v)) throw UsageError("householderFromVector requires a unit vector");
    int n = v.dim();
    const RingSpec& ring = v.ring();
    RingElement two = RingElement::fromInteger(ring, 2);
    RingMatrix u = RingMatrix::zero(ring, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RingElement e = -(two * v.at(i) * v.at(j).conjugate());
            if (i == j) e = e + RingElement::one(ring);
            u = u.withEntry(i, j, std::move(e));
        }
    if (u != u.adjoint() || !isUnitary(u))
        throw InternalError("Householder output failed its self-adjoint unitary contract");
    return u;
}

RingMatrix nonMonomialUnitaryFromVector(const RingVector& v) {
    if (!isUnitVector(v)) throw UsageError("nonMonomialUnitaryFromVector requires a unit vector");
    if (v.countNonzero() < 2)
        throw UsageError("nonMonomialUnitaryFromVector requires at least two nonzero entries");
    RingMatrix h = householderFromVector(v);
    if (!isMonomial(h)) return h;

    // Degenerate case: the two nonzero entries both have |.|^2 = 1/2 and the
    // Householder matrix collapses to a monomial one. The 2x2 block
    // [[v_i, -conj(v_j)], [v_j, conj(v_i)]] at rows/columns {i, j} is then
    // unitary with four nonzero entries.
    int i = -1, j = -1;
    for (int k = 0; k < v.dim(); ++k) {
        if (v.at(k).isZero()) continue;
        if (i < 0)
            i = k;
        else {
            j = k;
            break;
        }
    }
    RingMatrix block = RingMatrix::identity(v.ring(), v.dim());
    block = block.withEntry(i, i, v.at(i));
    block = block.withEntry(i, j, -v.at(j).conjugate());
    block = block.withEntry(j, i, v.at(j));
    block = block.withEntry(j, j, v.at(i).conjugate());
    if (!isUnitary(block) || isMonomial(block))
        throw InternalError("fallback block failed its non-monomial unitary contract");
    return block;
}

} // namespace kb
