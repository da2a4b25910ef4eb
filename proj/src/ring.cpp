#include "kb/ring.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <optional>

#include "kb/errors.hpp"

namespace kb {

namespace {

// Smallest p >= 2 with p^2 | n, or 0 when n is squarefree. n != 0.
std::int64_t squareFactor(std::int64_t n) {
    if (n < 0) n = -n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return p;
    }
    return 0;
}

bool isScalarFamily(RingFamily f) {
    return f == RingFamily::Integers || f == RingFamily::Localized || f == RingFamily::Rationals;
}

bool isPairFamily(RingFamily f) {
    return f == RingFamily::GaussianIntegers || f == RingFamily::Quadratic;
}

// Every prime factor of den divides m.
bool denominatorAllowed(std::int64_t den, std::int64_t m) {
    while (den > 1) {
        std::int64_t g = std::gcd(den, m);
        if (g == 1) return false;
        while (den % g == 0) den /= g;
    }
    return true;
}

} // namespace

RingSpec RingSpec::integers() { return RingSpec{}; }

RingSpec RingSpec::rationals() {
    RingSpec s;
    s.family_ = RingFamily::Rationals;
    return s;
}

RingSpec RingSpec::gaussianIntegers() {
    RingSpec s;
    s.family_ = RingFamily::GaussianIntegers;
    return s;
}

RingSpec RingSpec::localized(std::int64_t m) {
    if (m < 2) throw UsageError("Z[1/m] requires m >= 2, got m = " + std::to_string(m));
    // keeps m^2 (the refutation vector length) inside exact 64-bit range
    if (m > 1'000'000'000)
        throw UsageError("Z[1/m] supports m up to 10^9, got m = " + std::to_string(m));
    RingSpec s;
    s.family_ = RingFamily::Localized;
    s.param_ = m;
    return s;
}

RingSpec RingSpec::quadratic(std::int64_t d, const RingSpec& base) {
    if (d == 0 || d == 1)
        throw UsageError("sqrt argument must be a nonzero squarefree integer other than 1");
    if (std::int64_t p = squareFactor(d); p != 0) {
        std::string detail = (d == p * p) ? std::to_string(d) + " = " + std::to_string(p) + "^2"
                                          : std::to_string(d) + " is divisible by " + std::to_string(p) + "^2";
        throw UsageError("sqrt argument not squarefree: " + detail);
    }
    if (!isScalarFamily(base.family_))
        throw UsageError("square roots can only be adjoined to Z, Z[1/m] or Q (got " + base.name() + ")");
    if (d == -1 && base.family_ == RingFamily::Integers) return gaussianIntegers();
    RingSpec s;
    s.family_ = RingFamily::Quadratic;
    s.param_ = d;
    if (base.family_ != RingFamily::Integers) s.base_ = std::make_shared<const RingSpec>(base);
    return s;
}

RingSpec RingSpec::polynomial(const RingSpec& base) {
    RingSpec s;
    s.family_ = RingFamily::PolyExt;
    s.base_ = std::make_shared<const RingSpec>(base);
    return s;
}

const RingSpec& RingSpec::base() const {
    static const RingSpec kIntegers = integers();
    if (family_ == RingFamily::GaussianIntegers) return kIntegers;
    if (family_ != RingFamily::Quadratic && family_ != RingFamily::PolyExt)
        throw UsageError("ring " + name() + " has no base ring");
    return base_ ? *base_ : kIntegers;
}

bool RingSpec::operator==(const RingSpec& o) const {
    if (family_ != o.family_ || param_ != o.param_) return false;
    if (family_ == RingFamily::Quadratic || family_ == RingFamily::PolyExt) return base() == o.base();
    return true;
}

std::string RingSpec::name() const {
    switch (family_) {
    case RingFamily::Integers: return "Z";
    case RingFamily::Rationals: return "Q";
    case RingFamily::GaussianIntegers: return "Z[i]";
    case RingFamily::Localized: return "Z[1/" + std::to_string(param_) + "]";
    case RingFamily::Quadratic:
        if (param_ == -1) return base().name() + "[i]";
        return base().name() + "[sqrt " + std::to_string(param_) + "]";
    case RingFamily::PolyExt: return base().name() + "[t]";
    }
    return "?";
}

int RingSpec::polyDepth() const {
    int depth = 0;
    const RingSpec* s = this;
    while (true) {
        if (s->family_ == RingFamily::PolyExt) ++depth;
        if (s->family_ == RingFamily::PolyExt || s->family_ == RingFamily::Quadratic)
            s = &s->base();
        else
            break;
    }
    return depth;
}

bool RingSpec::admitsFractions() const {
    switch (family_) {
    case RingFamily::Localized:
    case RingFamily::Rationals: return true;
    case RingFamily::Quadratic:
    case RingFamily::PolyExt: return base().admitsFractions();
    default: return false;
    }
}

std::int64_t RingSpec::invertedInteger() const {
    switch (family_) {
    case RingFamily::Localized: return param_;
    case RingFamily::Rationals: return 2;
    case RingFamily::Quadratic:
    case RingFamily::PolyExt: return base().invertedInteger();
    default: return 0;
    }
}

std::string polyGeneratorName(const RingSpec& polySpec) {
    if (polySpec.family() != RingFamily::PolyExt)
        throw UsageError("not a polynomial extension: " + polySpec.name());
    int depth = polySpec.polyDepth();
    static const char* names[] = {"t", "u", "v", "w"};
    if (depth >= 1 && depth <= 4) return names[depth - 1];
    return "t" + std::to_string(depth);
}

Discreteness isDiscreteAtOne(const RingSpec& spec) {
    switch (spec.family()) {
    case RingFamily::Integers:
    case RingFamily::GaussianIntegers: return Discreteness::Yes;
    case RingFamily::Rationals:
    case RingFamily::Localized: return Discreteness::No;
    case RingFamily::Quadratic:
        // norm-squares are a^2 + |d| b^2 over the base exactly when d < 0
        if (spec.param() < 0 && spec.base().family() == RingFamily::Integers) return Discreteness::Yes;
        return Discreteness::No;
    case RingFamily::PolyExt: return Discreteness::Unknown;
    }
    return Discreteness::Unknown;
}

std::int64_t quadraticParam(const RingSpec& spec) {
    if (spec.family() == RingFamily::GaussianIntegers) return -1;
    if (spec.family() == RingFamily::Quadratic) return spec.param();
    throw UsageError("ring " + spec.name() + " has no adjoined square root");
}

// ---------------------------------------------------------------------------
// RingElement
// ---------------------------------------------------------------------------

RingElement RingElement::zero(const RingSpec& spec) {
    RingElement e;
    e.spec_ = spec;
    if (isPairFamily(spec.family())) {
        e.kids_ = {zero(spec.base()), zero(spec.base())};
    }
    // scalar families: Rational{} is 0; PolyExt: empty coefficient list
    return e;
}

RingElement RingElement::one(const RingSpec& spec) {
    RingElement e;
    e.spec_ = spec;
    switch (spec.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals:
        e.scalar_ = Rational::ofInt(1);
        break;
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic:
        e.kids_ = {one(spec.base()), zero(spec.base())};
        break;
    case RingFamily::PolyExt:
        e.kids_ = {one(spec.base())};
        break;
    }
    return e;
}

RingElement RingElement::fromInteger(const RingSpec& spec, std::int64_t n) {
    if (n == 0) return zero(spec);
    RingElement e;
    e.spec_ = spec;
    switch (spec.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals:
        e.scalar_ = Rational::ofInt(n);
        break;
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic:
        e.kids_ = {fromInteger(spec.base(), n), zero(spec.base())};
        break;
    case RingFamily::PolyExt:
        e.kids_ = {fromInteger(spec.base(), n)};
        break;
    }
    return e;
}

RingElement RingElement::scalar(const RingSpec& spec, Rational value) {
    if (!isScalarFamily(spec.family()))
        throw UsageError("ring " + spec.name() + " does not hold plain scalars");
    if (spec.family() == RingFamily::Integers && value.den != 1)
        throw UsageError(value.str() + " is not an element of Z");
    if (spec.family() == RingFamily::Localized && !denominatorAllowed(value.den, spec.param()))
        throw UsageError(value.str() + " is not an element of " + spec.name());
    RingElement e;
    e.spec_ = spec;
    e.scalar_ = value;
    return e;
}

RingElement RingElement::pair(const RingSpec& spec, RingElement a, RingElement b) {
    if (!isPairFamily(spec.family()))
        throw UsageError("ring " + spec.name() + " has no adjoined square root");
    if (a.spec() != spec.base() || b.spec() != spec.base())
        throw UsageError("pair components must live in the base ring " + spec.base().name());
    RingElement e;
    e.spec_ = spec;
    e.kids_ = {std::move(a), std::move(b)};
    return e;
}

RingElement RingElement::gaussian(std::int64_t a, std::int64_t b) {
    RingSpec g = RingSpec::gaussianIntegers();
    return pair(g, fromInteger(RingSpec::integers(), a), fromInteger(RingSpec::integers(), b));
}

RingElement RingElement::polynomial(const RingSpec& spec, std::vector<RingElement> coeffs) {
    if (spec.family() != RingFamily::PolyExt)
        throw UsageError("ring " + spec.name() + " is not a polynomial extension");
    for (const auto& c : coeffs)
        if (c.spec() != spec.base())
            throw UsageError("coefficients must live in the base ring " + spec.base().name());
    while (!coeffs.empty() && coeffs.back().isZero()) coeffs.pop_back();
    RingElement e;
    e.spec_ = spec;
    e.kids_ = std::move(coeffs);
    return e;
}

bool RingElement::isZero() const {
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals: return scalar_.isZero();
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic: return kids_[0].isZero() && kids_[1].isZero();
    case RingFamily::PolyExt: return kids_.empty();
    }
    return false;
}

bool RingElement::isOne() const {
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals: return scalar_.isOne();
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic: return kids_[0].isOne() && kids_[1].isZero();
    case RingFamily::PolyExt: return kids_.size() == 1 && kids_[0].isOne();
    }
    return false;
}

RingElement RingElement::operator+(const RingElement& o) const {
    if (spec_ != o.spec_)
        throw UsageError("ring mismatch: " + spec_.name() + " vs " + o.spec_.name());
    RingElement e;
    e.spec_ = spec_;
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals:
        e.scalar_ = scalar_ + o.scalar_;
        break;
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic:
        e.kids_ = {kids_[0] + o.kids_[0], kids_[1] + o.kids_[1]};
        break;
    case RingFamily::PolyExt: {
        std::vector<RingElement> sum;
        std::size_t n = std::max(kids_.size(), o.kids_.size());
        sum.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < kids_.size() && i < o.kids_.size())
                sum.push_back(kids_[i] + o.kids_[i]);
            else
                sum.push_back(i < kids_.size() ? kids_[i] : o.kids_[i]);
        }
        while (!sum.empty() && sum.back().isZero()) sum.pop_back();
        e.kids_ = std::move(sum);
        break;
    }
    }
    return e;
}

RingElement RingElement::operator-() const {
    RingElement e;
    e.spec_ = spec_;
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals:
        e.scalar_ = -scalar_;
        break;
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic:
        e.kids_ = {-kids_[0], -kids_[1]};
        break;
    case RingFamily::PolyExt:
        e.kids_.reserve(kids_.size());
        for (const auto& c : kids_) e.kids_.push_back(-c);
        break;
    }
    return e;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const RingElement& o) const {
    if (spec_ != o.spec_)
        throw UsageError("ring mismatch: " + spec_.name() + " vs " + o.spec_.name());
    RingElement e;
    e.spec_ = spec_;
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals:
        e.scalar_ = scalar_ * o.scalar_;
        break;
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic: {
        // (a + b s)(c + d s) = (ac + bd*p) + (ad + bc)s  with s^2 = p
        RingElement p = fromInteger(spec_.base(), quadraticParam(spec_));
        e.kids_ = {kids_[0] * o.kids_[0] + kids_[1] * o.kids_[1] * p,
                   kids_[0] * o.kids_[1] + kids_[1] * o.kids_[0]};
        break;
    }
    case RingFamily::PolyExt: {
        if (kids_.empty() || o.kids_.empty()) return zero(spec_);
        std::vector<RingElement> prod(kids_.size() + o.kids_.size() - 1, zero(spec_.base()));
        for (std::size_t i = 0; i < kids_.size(); ++i)
            for (std::size_t j = 0; j < o.kids_.size(); ++j)
                prod[i + j] = prod[i + j] + kids_[i] * o.kids_[j];
        while (!prod.empty() && prod.back().isZero()) prod.pop_back();
        e.kids_ = std::move(prod);
        break;
    }
    }
    return e;
}

bool RingElement::operator==(const RingElement& o) const {
    if (spec_ != o.spec_) return false;
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals: return scalar_ == o.scalar_;
    default: return kids_ == o.kids_;
    }
}

RingElement RingElement::conjugate() const {
    RingElement e;
    e.spec_ = spec_;
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals:
        e.scalar_ = scalar_;
        break;
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic: {
        // bases are real, so only the sign of the sqrt part can flip
        bool imaginary = quadraticParam(spec_) < 0;
        e.kids_ = {kids_[0].conjugate(), imaginary ? -kids_[1].conjugate() : kids_[1].conjugate()};
        break;
    }
    case RingFamily::PolyExt:
        e.kids_.reserve(kids_.size());
        for (const auto& c : kids_) e.kids_.push_back(c.conjugate());
        break;
    }
    return e;
}

RingElement RingElement::normSquared() const { return *this * conjugate(); }

int RingElement::height() const {
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals: {
        if (scalar_.isZero()) return 0;
        std::int64_t n = scalar_.num < 0 ? -scalar_.num : scalar_.num;
        std::int64_t h = std::max(n, scalar_.den);
        return h > INT32_MAX ? INT32_MAX : static_cast<int>(h);
    }
    default: {
        int h = 0;
        for (const auto& k : kids_) h = std::max(h, k.height());
        return h;
    }
    }
}

void RingElement::appendKey(std::vector<std::int64_t>& out) const {
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals:
        out.push_back(scalar_.num < 0 ? -scalar_.num : scalar_.num);
        out.push_back(scalar_.num < 0 ? 1 : 0);
        out.push_back(scalar_.den);
        break;
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic:
        kids_[0].appendKey(out);
        kids_[1].appendKey(out);
        break;
    case RingFamily::PolyExt:
        out.push_back(static_cast<std::int64_t>(kids_.size()));
        for (const auto& c : kids_) c.appendKey(out);
        break;
    }
}

int RingElement::compareCanonical(const RingElement& a, const RingElement& b) {
    int ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb ? -1 : 1;
    std::vector<std::int64_t> ka, kbv;
    a.appendKey(ka);
    b.appendKey(kbv);
    if (ka < kbv) return -1;
    if (kbv < ka) return 1;
    return 0;
}

const Rational& RingElement::scalarValue() const {
    if (!isScalarFamily(spec_.family()))
        throw UsageError("element of " + spec_.name() + " is not a plain scalar");
    return scalar_;
}

const RingElement& RingElement::pairA() const {
    if (!isPairFamily(spec_.family()))
        throw UsageError("element of " + spec_.name() + " is not a quadratic pair");
    return kids_[0];
}

const RingElement& RingElement::pairB() const {
    if (!isPairFamily(spec_.family()))
        throw UsageError("element of " + spec_.name() + " is not a quadratic pair");
    return kids_[1];
}

std::span<const RingElement> RingElement::coefficients() const {
    if (spec_.family() != RingFamily::PolyExt)
        throw UsageError("element of " + spec_.name() + " is not a polynomial");
    return kids_;
}

int RingElement::degree() const {
    if (spec_.family() != RingFamily::PolyExt)
        throw UsageError("element of " + spec_.name() + " is not a polynomial");
    return static_cast<int>(kids_.size()) - 1;
}

bool RingElement::isExactlyComparable() const {
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals: return true;
    case RingFamily::GaussianIntegers: return kids_[1].isZero();
    case RingFamily::Quadratic:
        if (quadraticParam(spec_) < 0) return kids_[1].isZero() && kids_[0].isExactlyComparable();
        return true;
    case RingFamily::PolyExt:
        if (kids_.size() > 1) return false;
        return kids_.empty() || kids_[0].isExactlyComparable();
    }
    return false;
}

int RingElement::signReal() const {
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals: return scalar_.sign();
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic: {
        std::int64_t d = quadraticParam(spec_);
        if (d < 0) {
            if (!kids_[1].isZero())
                throw UsageError("element " + str() + " of " + spec_.name() + " is not real");
            return kids_[0].signReal();
        }
        // sign of a + b sqrt(d), d > 0: compare a^2 against d b^2 when signs mix
        const Rational& a = kids_[0].scalarValue();
        const Rational& b = kids_[1].scalarValue();
        int sa = a.sign(), sb = b.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        int c = (a * a).cmp(Rational::ofInt(d) * b * b);
        if (c == 0) throw InternalError("sqrt(" + std::to_string(d) + ") compared rational");
        return c > 0 ? sa : sb;
    }
    case RingFamily::PolyExt:
        if (kids_.empty()) return 0;
        if (kids_.size() > 1)
            throw UsageError("nonconstant polynomial " + str() + " has no decidable sign");
        return kids_[0].signReal();
    }
    return 0;
}

int RingElement::compareReal(const RingElement& o) const { return (*this - o).signReal(); }

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

namespace {

void sortCanonical(std::vector<RingElement>& elems) {
    struct Keyed {
        int height;
        std::vector<std::int64_t> key;
        std::size_t idx;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        Keyed k;
        k.height = elems[i].height();
        elems[i].appendKey(k.key);
        k.idx = i;
        keyed.push_back(std::move(k));
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.key < b.key;
    });
    std::vector<RingElement> sorted;
    sorted.reserve(elems.size());
    for (const auto& k : keyed) sorted.push_back(std::move(elems[k.idx]));
    elems = std::move(sorted);
}

} // namespace

std::vector<RingElement> enumerateElements(const RingSpec& spec, int maxHeight, int maxDegree) {
    if (maxHeight < 0) throw UsageError("maxHeight must be nonnegative");
    std::vector<RingElement> out;
    switch (spec.family()) {
    case RingFamily::Integers:
        for (std::int64_t n = -maxHeight; n <= maxHeight; ++n)
            out.push_back(RingElement::fromInteger(spec, n));
        break;
    case RingFamily::Localized:
    case RingFamily::Rationals:
        for (std::int64_t den = 1; den <= maxHeight || den == 1; ++den) {
            if (den > 1 && spec.family() == RingFamily::Localized &&
                !denominatorAllowed(den, spec.param()))
                continue;
            for (std::int64_t num = -maxHeight; num <= maxHeight; ++num) {
                if (den > 1 && (num == 0 || std::gcd(num < 0 ? -num : num, den) != 1)) continue;
                out.push_back(RingElement::scalar(spec, Rational::make(num, den)));
            }
            if (maxHeight == 0) break;
        }
        break;
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic: {
        auto baseElems = enumerateElements(spec.base(), maxHeight, maxDegree);
        for (const auto& a : baseElems)
            for (const auto& b : baseElems)
                out.push_back(RingElement::pair(spec, a, b));
        break;
    }
    case RingFamily::PolyExt: {
        if (maxDegree < 0) throw UsageError("maxDegree must be nonnegative");
        auto baseElems = enumerateElements(spec.base(), maxHeight, maxDegree);
        out.push_back(RingElement::zero(spec));
        // all coefficient tuples (c_0..c_deg) with c_deg != 0
        for (int deg = 0; deg <= maxDegree; ++deg) {
            std::vector<std::size_t> idx(static_cast<std::size_t>(deg) + 1, 0);
            while (true) {
                if (!baseElems[idx.back()].isZero()) {
                    std::vector<RingElement> coeffs;
                    coeffs.reserve(idx.size());
                    for (std::size_t i : idx) coeffs.push_back(baseElems[i]);
                    out.push_back(RingElement::polynomial(spec, std::move(coeffs)));
                }
                std::size_t pos = 0;
                while (pos < idx.size() && ++idx[pos] == baseElems.size()) {
                    idx[pos] = 0;
                    ++pos;
                }
                if (pos == idx.size()) break;
            }
        }
        break;
    }
    }
    sortCanonical(out);
    return out;
}

// ---------------------------------------------------------------------------
// element and spec parsing / printing
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;

    void skipWs() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool atEnd() {
        skipWs();
        return pos >= text.size();
    }

    char peek() {
        skipWs();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool consume(char c) {
        skipWs();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!consume(c)) throw ParseError(std::string("expected '") + c + "' " + what, pos);
    }

    std::optional<std::int64_t> tryInteger() {
        skipWs();
        std::size_t start = pos;
        std::size_t p = pos;
        if (p < text.size() && (text[p] == '-' || text[p] == '+')) ++p;
        std::size_t digits = p;
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
        if (p == digits) return std::nullopt;
        std::int64_t value = 0;
        bool neg = text[start] == '-';
        for (std::size_t i = digits; i < p; ++i) {
            value = checkedMul(value, 10);
            value = checkedAdd(value, text[i] - '0');
        }
        pos = p;
        return neg ? -value : value;
    }

    std::int64_t integer(const char* what) {
        auto v = tryInteger();
        if (!v) throw ParseError(std::string("expected integer ") + what, pos);
        return *v;
    }

    std::optional<std::string> tryWord() {
        skipWs();
        std::size_t p = pos;
        while (p < text.size() && std::isalpha(static_cast<unsigned char>(text[p]))) ++p;
        if (p == pos) return std::nullopt;
        std::string w(text.substr(pos, p - pos));
        pos = p;
        return w;
    }
};

} // namespace

RingSpec RingSpec::parse(std::string_view text) {
    Lexer lx{text};
    RingSpec spec;
    auto head = lx.tryWord();
    if (!head) throw ParseError("ring spec must start with Z or Q", lx.pos);
    if (*head == "Z")
        spec = integers();
    else if (*head == "Q")
        spec = rationals();
    else
        throw ParseError("unknown base ring '" + *head + "' (expected Z or Q)", lx.pos);

    try {
        while (!lx.atEnd()) {
            lx.expect('[', "to open a ring extension");
            if (lx.consume('1')) {
                lx.expect('/', "in Z[1/m]");
                std::int64_t m = lx.integer("m in Z[1/m]");
                if (spec.family_ != RingFamily::Integers)
                    throw ParseError("localization suffix [1/m] applies to Z only", lx.pos);
                spec = localized(m);
            } else if (auto word = lx.tryWord()) {
                if (*word == "i") {
                    spec = quadratic(-1, spec);
                } else if (*word == "sqrt") {
                    std::int64_t d = lx.integer("after sqrt");
                    spec = quadratic(d, spec);
                } else if (*word == "t") {
                    spec = polynomial(spec);
                } else {
                    throw ParseError("unknown extension '" + *word + "'", lx.pos);
                }
            } else {
                throw ParseError("expected i, sqrt D, 1/M or t inside [...]", lx.pos);
            }
            lx.expect(']', "to close the ring extension");
        }
    } catch (const UsageError& e) {
        throw ParseError(e.what(), lx.pos);
    }
    return spec;
}

namespace {

// True when the rendered form needs parentheses as a coefficient: a '+' or
// '-' appears at paren depth 0 past the leading sign.
bool needsParens(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if ((c == '+' || c == '-') && depth == 0 && i > 0) return true;
    }
    return false;
}

// Append "<coeff>*<symbol>" with sign handling; coeff must be nonzero.
void appendTerm(std::string& out, const RingElement& coeff, const std::string& symbol) {
    std::string cs = coeff.str();
    bool neg = false;
    if (!needsParens(cs) && cs.size() > 1 && cs[0] == '-') {
        neg = true;
        cs = cs.substr(1);
    }
    if (!out.empty()) out += neg ? "-" : "+";
    else if (neg) out += "-";
    if (symbol.empty()) {
        out += needsParens(cs) ? "(" + cs + ")" : cs;
        return;
    }
    if (cs == "1") {
        out += symbol;
    } else if (needsParens(cs)) {
        out += "(" + cs + ")*" + symbol;
    } else if (symbol == "i" &&
               std::all_of(cs.begin(), cs.end(), [](unsigned char c) { return std::isdigit(c); })) {
        out += cs + symbol; // tight form: 2-3i
    } else {
        out += cs + "*" + symbol;
    }
}

} // namespace

std::string RingElement::str() const {
    switch (spec_.family()) {
    case RingFamily::Integers:
    case RingFamily::Localized:
    case RingFamily::Rationals: return scalar_.str();
    case RingFamily::GaussianIntegers:
    case RingFamily::Quadratic: {
        if (isZero()) return "0";
        std::int64_t d = quadraticParam(spec_);
        std::string symbol = (d == -1) ? "i" : "sqrt(" + std::to_string(d) + ")";
        std::string out;
        if (!kids_[0].isZero()) appendTerm(out, kids_[0], "");
        if (!kids_[1].isZero()) appendTerm(out, kids_[1], symbol);
        return out;
    }
    case RingFamily::PolyExt: {
        if (kids_.empty()) return "0";
        std::string var = polyGeneratorName(spec_);
        std::string out;
        for (int k = static_cast<int>(kids_.size()) - 1; k >= 0; --k) {
            if (kids_[k].isZero()) continue;
            std::string symbol;
            if (k == 1) symbol = var;
            else if (k > 1) symbol = var + "^" + std::to_string(k);
            appendTerm(out, kids_[k], symbol);
        }
        return out;
    }
    }
    return "?";
}

namespace {

// Element grammar: sum of terms; term = [sign] factor ('*' factor)*;
// factor = rational | 'i' | 'sqrt' '(' int ')' | generator ['^' int]
//        | '(' element ')'.
class ElementParser {
public:
    ElementParser(const RingSpec& spec, std::string_view text) : spec_(spec), lx_{text} {}

    RingElement parse() {
        RingElement value = parseSum();
        if (!lx_.atEnd()) throw ParseError("trailing input after element", lx_.pos);
        return value;
    }

private:
    RingElement parseSum() {
        RingElement acc = RingElement::zero(spec_);
        bool first = true;
        while (true) {
            lx_.skipWs();
            int sign = 1;
            if (lx_.consume('+')) sign = 1;
            else if (lx_.consume('-')) sign = -1;
            else if (!first) break;
            RingElement term = parseTerm();
            acc = (sign > 0) ? acc + term : acc - term;
            first = false;
            char c = lx_.peek();
            if (c != '+' && c != '-') break;
        }
        return acc;
    }

    RingElement parseTerm() {
        RingElement prod = parseFactor();
        while (true) {
            if (lx_.consume('*')) {
                prod = prod * parseFactor();
                continue;
            }
            // juxtaposition: 3i, 2t, 2sqrt(2), (1+i)(1-i)
            char c = lx_.peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
                prod = prod * parseFactor();
                continue;
            }
            break;
        }
        return prod;
    }

    RingElement parseFactor() {
        lx_.skipWs();
        if (lx_.consume('(')) {
            RingElement inner = parseSum();
            lx_.expect(')', "to close subexpression");
            return inner;
        }
        if (auto n = lx_.tryInteger()) {
            // fraction if '/' follows immediately
            Rational value = Rational::ofInt(*n);
            std::size_t save = lx_.pos;
            if (lx_.consume('/')) {
                if (auto den = lx_.tryInteger()) {
                    value = Rational::make(*n, *den);
                } else {
                    lx_.pos = save;
                }
            }
            return scalarInSpec(value);
        }
        if (auto word = lx_.tryWord()) {
            if (*word == "i") return sqrtGenerator(-1);
            if (*word == "sqrt") {
                lx_.expect('(', "after sqrt");
                std::int64_t d = lx_.integer("inside sqrt(...)");
                lx_.expect(')', "to close sqrt(...)");
                return sqrtGenerator(d);
            }
            RingElement gen = polyGenerator(*word);
            if (lx_.consume('^')) {
                std::int64_t e = lx_.integer("exponent");
                if (e < 0) throw ParseError("negative exponent", lx_.pos);
                RingElement p = RingElement::one(spec_);
                for (std::int64_t k = 0; k < e; ++k) p = p * gen;
                return p;
            }
            return gen;
        }
        throw ParseError("expected a number, i, sqrt(...), a generator or '('", lx_.pos);
    }

    // A rational literal embedded into spec_ (checking membership).
    RingElement scalarInSpec(const Rational& value) { return embedScalar(spec_, value); }

    static RingElement embedScalar(const RingSpec& spec, const Rational& value) {
        switch (spec.family()) {
        case RingFamily::Integers:
        case RingFamily::Localized:
        case RingFamily::Rationals: return RingElement::scalar(spec, value);
        case RingFamily::GaussianIntegers:
        case RingFamily::Quadratic:
            return RingElement::pair(spec, embedScalar(spec.base(), value),
                                     RingElement::zero(spec.base()));
        case RingFamily::PolyExt:
            if (value.isZero()) return RingElement::zero(spec);
            return RingElement::polynomial(spec, {embedScalar(spec.base(), value)});
        }
        throw InternalError("unreachable");
    }

    // sqrt(d) (or i for d = -1) embedded into spec_, if the tower adjoins it.
    RingElement sqrtGenerator(std::int64_t d) { return embedSqrt(spec_, d); }

    RingElement embedSqrt(const RingSpec& spec, std::int64_t d) {
        switch (spec.family()) {
        case RingFamily::GaussianIntegers:
        case RingFamily::Quadratic:
            if (quadraticParam(spec) == d)
                return RingElement::pair(spec, RingElement::zero(spec.base()),
                                         RingElement::one(spec.base()));
            break;
        case RingFamily::PolyExt: {
            RingElement inner = embedSqrt(spec.base(), d);
            return RingElement::polynomial(spec, {inner});
        }
        default: break;
        }
        std::string sym = (d == -1) ? "i" : "sqrt(" + std::to_string(d) + ")";
        throw ParseError(sym + " is not an element of " + spec_.name(), lx_.pos);
    }

    RingElement polyGenerator(const std::string& name) { return embedGenerator(spec_, name); }

    RingElement embedGenerator(const RingSpec& spec, const std::string& name) {
        if (spec.family() == RingFamily::PolyExt) {
            if (polyGeneratorName(spec) == name) {
                RingElement genCoeff = RingElement::one(spec.base());
                return RingElement::polynomial(spec, {RingElement::zero(spec.base()), genCoeff});
            }
            RingElement inner = embedGenerator(spec.base(), name);
            return RingElement::polynomial(spec, {inner});
        }
        throw ParseError("'" + name + "' is not an element of " + spec_.name(), lx_.pos);
    }

    RingSpec spec_;
    Lexer lx_;
};

} // namespace

RingElement RingElement::parse(const RingSpec& spec, std::string_view text) {
    try {
        return ElementParser(spec, text).parse();
    } catch (const UsageError& e) {
        throw ParseError(e.what(), 0);
    }
}

} // namespace kb
