#include "kb/algebra.hpp"

#include "kb/enumeration.hpp"
#include "kb/errors.hpp"

namespace kb {

namespace {

void requireSameCarrier(const AlgebraElement& f, const AlgebraElement& g) {
    if (f.groupoid().get() != g.groupoid().get())
        throw UsageError("algebra elements live on different groupoids");
    if (f.ring() != g.ring())
        throw UsageError("algebra elements live over different rings: " + f.ring().name() +
                         " vs " + g.ring().name());
}

} // namespace

AlgebraElement AlgebraElement::zero(std::shared_ptr<const FiniteGroupoid> g,
                                    const RingSpec& ring) {
    return AlgebraElement(std::move(g), ring);
}

AlgebraElement AlgebraElement::indicator(std::shared_ptr<const FiniteGroupoid> g,
                                         const RingSpec& ring, int arrow) {
    if (arrow < 0 || arrow >= g->arrowCount()) throw UsageError("arrow index out of range");
    AlgebraElement f(std::move(g), ring);
    f.coeffs_.emplace(arrow, RingElement::one(ring));
    return f;
}

AlgebraElement AlgebraElement::identity(std::shared_ptr<const FiniteGroupoid> g,
                                        const RingSpec& ring) {
    AlgebraElement f(g, ring);
    for (int u : g->units()) f.coeffs_.emplace(u, RingElement::one(ring));
    return f;
}

AlgebraElement AlgebraElement::fromCoefficients(std::shared_ptr<const FiniteGroupoid> g,
                                                const RingSpec& ring,
                                                std::map<int, RingElement> coeffs) {
    AlgebraElement f(std::move(g), ring);
    for (auto& [arrow, value] : coeffs) {
        if (arrow < 0 || arrow >= f.g_->arrowCount())
            throw UsageError("arrow index out of range");
        if (value.spec() != ring) throw UsageError("coefficient ring mismatch");
        if (!value.isZero()) f.coeffs_.emplace(arrow, std::move(value));
    }
    return f;
}

RingElement AlgebraElement::coefficient(int arrow) const {
    auto it = coeffs_.find(arrow);
    return it == coeffs_.end() ? RingElement::zero(ring_) : it->second;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    requireSameCarrier(*this, o);
    AlgebraElement sum(g_, ring_);
    sum.coeffs_ = coeffs_;
    for (const auto& [arrow, value] : o.coeffs_) {
        auto it = sum.coeffs_.find(arrow);
        if (it == sum.coeffs_.end()) {
            sum.coeffs_.emplace(arrow, value);
        } else {
            it->second = it->second + value;
            if (it->second.isZero()) sum.coeffs_.erase(it);
        }
    }
    return sum;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    return *this + o.scaledBy(-RingElement::one(ring_));
}

AlgebraElement AlgebraElement::scaledBy(const RingElement& c) const {
    if (c.spec() != ring_) throw UsageError("scalar ring mismatch");
    AlgebraElement out(g_, ring_);
    if (c.isZero()) return out;
    for (const auto& [arrow, value] : coeffs_) {
        RingElement scaled = c * value;
        if (!scaled.isZero()) out.coeffs_.emplace(arrow, std::move(scaled));
    }
    return out;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
    return g_.get() == o.g_.get() && ring_ == o.ring_ && coeffs_ == o.coeffs_;
}

std::map<std::string, std::string> AlgebraElement::toStrings() const {
    std::map<std::string, std::string> out;
    for (const auto& [arrow, value] : coeffs_) out[g_->arrowId(arrow)] = value.str();
    return out;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g) {
    requireSameCarrier(f, g);
    AlgebraElement out = AlgebraElement::zero(f.groupoid(), f.ring());
    std::map<int, RingElement> acc;
    const FiniteGroupoid& gpd = *f.groupoid();
    for (const auto& [a, fa] : f.support())
        for (const auto& [b, gb] : g.support()) {
            int c = gpd.compose(a, b);
            if (c < 0) continue;
            RingElement term = fa * gb;
            auto it = acc.find(c);
            if (it == acc.end())
                acc.emplace(c, std::move(term));
            else
                it->second = it->second + term;
        }
    return AlgebraElement::fromCoefficients(f.groupoid(), f.ring(), std::move(acc));
}

AlgebraElement star(const AlgebraElement& f) {
    std::map<int, RingElement> out;
    const FiniteGroupoid& gpd = *f.groupoid();
    for (const auto& [a, fa] : f.support()) out.emplace(gpd.inv(a), fa.conjugate());
    return AlgebraElement::fromCoefficients(f.groupoid(), f.ring(), std::move(out));
}

bool isDiagonal(const AlgebraElement& f) {
    for (const auto& [a, value] : f.support())
        if (!f.groupoid()->isUnit(a)) return false;
    return true;
}

bool isProjection(const AlgebraElement& f) {
    if (f != convolve(f, star(f))) return false;
    // forced by f = f f*; failure here would be a bug, not an input problem
    if (f != star(f) || f != convolve(f, f))
        throw InternalError("projection identity held but self-adjointness or idempotence failed");
    return true;
}

std::vector<AlgebraElement> enumerateProjections(const RingSpec& ring,
                                                 std::shared_ptr<const FiniteGroupoid> g,
                                                 int maxHeight, std::uint64_t budget,
                                                 int threads) {
    ElementTable table = ElementTable::build(ring, maxHeight, 2);
    int arrows = g->arrowCount();
    if (arrows == 0) return {AlgebraElement::zero(std::move(g), ring)};

    struct ProjectionWorker : GradeWorker {
        const ElementTable& table;
        std::shared_ptr<const FiniteGroupoid> g;
        ProjectionWorker(const ElementTable& t, std::shared_ptr<const FiniteGroupoid> gg)
            : table(t), g(std::move(gg)) {}

        bool accept(std::span<const std::size_t> ranks) override {
            std::map<int, RingElement> coeffs;
            for (int a = 0; a < static_cast<int>(ranks.size()); ++a) {
                const RingElement& e = table.elems[ranks[static_cast<std::size_t>(a)]];
                if (!e.isZero()) coeffs.emplace(a, e);
            }
            AlgebraElement f =
                AlgebraElement::fromCoefficients(g, table.spec, std::move(coeffs));
            return isProjection(f);
        }
    };

    auto result = runGradedSearch(
        table, {{arrows, arrows}},
        [&](int) { return std::make_unique<ProjectionWorker>(table, g); }, budget, threads,
        false);

    std::vector<AlgebraElement> out;
    out.reserve(result.collected.size());
    for (const auto& [section, ranks] : result.collected) {
        std::map<int, RingElement> coeffs;
        for (int a = 0; a < static_cast<int>(ranks.size()); ++a) {
            const RingElement& e = table.elems[ranks[static_cast<std::size_t>(a)]];
            if (!e.isZero()) coeffs.emplace(a, e);
        }
        out.push_back(AlgebraElement::fromCoefficients(g, ring, std::move(coeffs)));
    }
    return out;
}

bool isNormalizerPair(const AlgebraElement& f, const AlgebraElement& f2) {
    requireSameCarrier(f, f2);
    if (convolve(convolve(f, f2), f) != f) return false;
    if (convolve(convolve(f2, f), f2) != f2) return false;
    // n D n' and n' D n inside D, checked on the unit indicator spanning set
    for (int u : f.groupoid()->units()) {
        AlgebraElement unit = AlgebraElement::indicator(f.groupoid(), f.ring(), u);
        if (!isDiagonal(convolve(convolve(f, unit), f2))) return false;
        if (!isDiagonal(convolve(convolve(f2, unit), f))) return false;
    }
    return true;
}

RingMatrix toMatrix(const AlgebraElement& f) {
    auto n = f.groupoid()->canonicalRnSize();
    if (!n) throw UsageError("toMatrix requires the canonical R_n groupoid");
    RingMatrix m = RingMatrix::zero(f.ring(), *n);
    for (int i = 1; i <= *n; ++i)
        for (int j = 1; j <= *n; ++j)
            m = m.withEntry(i - 1, j - 1, f.coefficient(f.groupoid()->rnArrow(i, j)));
    return m;
}

AlgebraElement fromMatrix(std::shared_ptr<const FiniteGroupoid> rn, const RingMatrix& a) {
    auto n = rn->canonicalRnSize();
    if (!n) throw UsageError("fromMatrix requires the canonical R_n groupoid");
    if (a.dim() != *n) throw UsageError("matrix dimension does not match the groupoid");
    std::map<int, RingElement> coeffs;
    for (int i = 1; i <= *n; ++i)
        for (int j = 1; j <= *n; ++j) coeffs.emplace(rn->rnArrow(i, j), a.at(i - 1, j - 1));
    return AlgebraElement::fromCoefficients(std::move(rn), a.ring(), std::move(coeffs));
}

void verifyStarHomomorphism(const StarHomomorphism& h) {
    int m = h.source->arrowCount();
    if (static_cast<int>(h.images.size()) != m)
        throw UsageError("homomorphism must present an image for every arrow indicator");
    for (const auto& img : h.images) {
        if (img.groupoid().get() != h.target.get() || img.ring() != h.ring)
            throw UsageError("homomorphism image lives on the wrong carrier");
    }
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            int c = h.source->compose(a, b);
            AlgebraElement expected = c < 0 ? AlgebraElement::zero(h.target, h.ring)
                                            : h.imageOf(c);
            if (convolve(h.imageOf(a), h.imageOf(b)) != expected)
                throw UsageError("not multiplicative on the pair (" + h.source->arrowId(a) +
                                 ", " + h.source->arrowId(b) + ")");
        }
        if (star(h.imageOf(a)) != h.imageOf(h.source->inv(a)))
            throw UsageError("not star-compatible on " + h.source->arrowId(a));
    }
}

bool isDiagonalPreserving(const StarHomomorphism& h) {
    verifyStarHomomorphism(h);
    for (int u : h.source->units())
        if (!isDiagonal(h.imageOf(u))) return false;
    return true;
}

StarHomomorphism conjugationMap(const RingMatrix& u, std::shared_ptr<const FiniteGroupoid> rn) {
    if (!isUnitary(u)) throw UsageError("conjugationMap requires a unitary matrix");
    auto n = rn->canonicalRnSize();
    if (!n || *n != u.dim())
        throw UsageError("conjugationMap requires the canonical R_n for the matrix dimension");
    RingMatrix adj = u.adjoint();
    StarHomomorphism h{rn, rn, u.ring(), {}};
    h.images.reserve(static_cast<std::size_t>(rn->arrowCount()));
    for (int a = 0; a < rn->arrowCount(); ++a) {
        AlgebraElement e = AlgebraElement::indicator(rn, u.ring(), a);
        h.images.push_back(fromMatrix(rn, u * toMatrix(e) * adj));
    }
    return h;
}

} // namespace kb
