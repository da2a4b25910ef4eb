#include "doctest.h"

#include "kb/algebra.hpp"
#include "kb/enumeration.hpp"
#include "kb/errors.hpp"
#include "kb/kindness.hpp"
#include "support.hpp"

using namespace kb;

namespace {

const RingSpec Z = RingSpec::integers();
const RingSpec Q = RingSpec::rationals();
const RingSpec Zi = RingSpec::gaussianIntegers();
const RingSpec Zhalf = RingSpec::localized(2);
const RingSpec Zfifth = RingSpec::localized(5);
const RingSpec Zsqrt2 = RingSpec::quadratic(2);
const RingSpec Zsqrtm5 = RingSpec::quadratic(-5);
const RingSpec Zt = RingSpec::polynomial(Z);

std::vector<RingElement> tuple(const RingSpec& ring, std::initializer_list<const char*> parts) {
    std::vector<RingElement> out;
    for (const char* s : parts) out.push_back(RingElement::parse(ring, s));
    return out;
}

SearchBounds boundsOf(int maxLen, int maxHeight, int maxDim = 2, int threads = 1) {
    SearchBounds b;
    b.maxLen = maxLen;
    b.maxHeight = maxHeight;
    b.maxDim = maxDim;
    b.threads = threads;
    return b;
}

} // namespace

TEST_CASE("condition 1 searches") {
    CHECK_FALSE(searchCondition1(Z, boundsOf(4, 2)).foundWitness());
    CHECK_FALSE(searchCondition1(Zi, boundsOf(4, 2)).foundWitness());

    auto half = searchCondition1(Zhalf, boundsOf(4, 2));
    REQUIRE(half.foundWitness());
    CHECK(*half.witnessVector == tuple(Zhalf, {"1/2", "1/2", "1/2", "1/2"}));

    auto fifth = searchCondition1(Zfifth, boundsOf(4, 5));
    REQUIRE(fifth.foundWitness());
    CHECK(*fifth.witnessVector == tuple(Zfifth, {"3/5", "4/5"}));

    // candidate accounting: covered space when exhausted
    auto exhausted = searchCondition1(Z, boundsOf(3, 1));
    CHECK(exhausted.candidates == 3 + 9 + 27);
}

TEST_CASE("condition 2 searches") {
    CHECK_FALSE(searchCondition2(Z, boundsOf(3, 2)).foundWitness());

    auto half = searchCondition2(Zhalf, boundsOf(2, 2));
    REQUIRE(half.foundWitness());
    CHECK(*half.witnessVector == tuple(Zhalf, {"1/2", "1/2"}));

    auto rationals = searchCondition2(Q, boundsOf(2, 3));
    REQUIRE(rationals.foundWitness());
    CHECK(*rationals.witnessVector == tuple(Q, {"1/2", "1/2"}));
}

TEST_CASE("condition 6 searches and unitary censuses") {
    auto ints = searchCondition6(Z, boundsOf(3, 1, 2));
    CHECK_FALSE(ints.foundWitness());
    CHECK(ints.unitariesByDim[1] == 2);
    CHECK(ints.unitariesByDim[2] == 8); // signed permutations: 2^2 * 2!

    auto gauss = searchCondition6(Zi, boundsOf(3, 1, 2));
    CHECK_FALSE(gauss.foundWitness());
    CHECK(gauss.unitariesByDim[1] == 4);
    CHECK(gauss.unitariesByDim[2] == 32); // monomial with entries in {1,-1,i,-i}: 4^2 * 2!

    auto fifth = searchCondition6(Zfifth, boundsOf(3, 5, 2));
    REQUIRE(fifth.foundWitness());
    CHECK(verifyCondition6Witness(*fifth.witnessMatrix));
    // canonically first witness under the graded order; the brute-force
    // oracle in this file's census test pins the same matrix
    RingMatrix expected = RingMatrix::fromEntries(
        Zfifth, 2,
        {RingElement::parse(Zfifth, "3/5"), RingElement::parse(Zfifth, "4/5"),
         RingElement::parse(Zfifth, "4/5"), RingElement::parse(Zfifth, "-3/5")});
    CHECK(*fifth.witnessMatrix == expected);
}

TEST_CASE("census oracle: brute-force dimension-2 unitaries over height-1 entries") {
    // raw pair arithmetic, independent of RingElement: entries a+bi with
    // a, b in {-1, 0, 1}
    struct C {
        int re, im;
    };
    auto mul = [](C x, C y) { return C{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; };
    auto conj = [](C x) { return C{x.re, -x.im}; };
    std::vector<C> gauss;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) gauss.push_back({a, b});
    int unitaryCount = 0, intUnitaryCount = 0;
    for (const C& a : gauss)
        for (const C& b : gauss)
            for (const C& c : gauss)
                for (const C& d : gauss) {
                    // rows (a,b), (c,d): U U* = I
                    C r00 = {a.re * a.re + a.im * a.im + b.re * b.re + b.im * b.im, 0};
                    C r11 = {c.re * c.re + c.im * c.im + d.re * d.re + d.im * d.im, 0};
                    C r01{0, 0};
                    r01.re = mul(a, conj(c)).re + mul(b, conj(d)).re;
                    r01.im = mul(a, conj(c)).im + mul(b, conj(d)).im;
                    if (r00.re == 1 && r11.re == 1 && r01.re == 0 && r01.im == 0) {
                        ++unitaryCount;
                        if (a.im == 0 && b.im == 0 && c.im == 0 && d.im == 0) ++intUnitaryCount;
                    }
                }
    CHECK(unitaryCount == 32);
    CHECK(intUnitaryCount == 8);
}

TEST_CASE("witness conversion between conditions 1 and 2") {
    SUBCASE("pinned values") {
        auto w1 = witnessCond1FromCond2(tuple(Zhalf, {"1/2", "1/2"}));
        CHECK(w1 == tuple(Zhalf, {"1/2", "1/2", "1/2", "1/2"}));

        auto w2 = witnessCond2FromCond1(tuple(Zhalf, {"1/2", "1/2", "1/2", "1/2"}));
        CHECK(w2 == tuple(Zhalf, {"1/4", "1/4", "1/4", "1/4"}));

        auto w3 = witnessCond2FromCond1(tuple(Zfifth, {"3/5", "4/5"}));
        CHECK(w3 == tuple(Zfifth, {"9/25", "12/25"}));
    }

    SUBCASE("non-witnesses are usage errors") {
        CHECK_THROWS_AS(witnessCond1FromCond2(tuple(Z, {"1", "0"})), UsageError);
        CHECK_THROWS_AS(witnessCond1FromCond2(tuple(Zhalf, {"1", "0", "0"})), UsageError);
        CHECK_THROWS_AS(witnessCond2FromCond1(tuple(Z, {"1", "0"})), UsageError);
    }

    SUBCASE("round trips stay witnesses") {
        for (auto t : {tuple(Zhalf, {"1/2", "1/2"}), tuple(Q, {"1/2", "1/4", "1/4", "-1/4"})}) {
            if (!verifyCondition2Witness(t)) continue;
            auto v = witnessCond1FromCond2(t);
            CHECK(verifyCondition1Witness(v));
            auto back = witnessCond2FromCond1(v);
            CHECK(verifyCondition2Witness(back));
            auto forward = witnessCond1FromCond2(back);
            CHECK(verifyCondition1Witness(forward));
        }
    }
}

TEST_CASE("kind certificates") {
    SUBCASE("discrete-norm leaves") {
        for (const RingSpec& spec : {Z, Zi, Zsqrtm5, RingSpec::quadratic(-2)}) {
            auto outcome = certifyKind(spec);
            REQUIRE(outcome.certified());
            CHECK(outcome.certificate->rule == KindCertificate::Rule::DiscreteNorm);
            CHECK(validateCertificate(*outcome.certificate));
        }
    }

    SUBCASE("adjoined square root") {
        auto outcome = certifyKind(Zsqrt2);
        REQUIRE(outcome.certified());
        const auto& cert = *outcome.certificate;
        CHECK(cert.rule == KindCertificate::Rule::AdjoinSqrt);
        CHECK(cert.adjoined == 2);
        REQUIRE(cert.children.size() == 1);
        CHECK(cert.children[0].rule == KindCertificate::Rule::DiscreteNorm);
        CHECK(*cert.children[0].ring == Z);
        CHECK(validateCertificate(cert));
    }

    SUBCASE("adjoined transcendental, nested") {
        auto outcome = certifyKind(Zt);
        REQUIRE(outcome.certified());
        CHECK(outcome.certificate->rule == KindCertificate::Rule::AdjoinTranscendental);
        CHECK(*outcome.certificate->children[0].ring == Z);
        CHECK(validateCertificate(*outcome.certificate));

        auto nested = certifyKind(RingSpec::polynomial(Zt));
        REQUIRE(nested.certified());
        CHECK(validateCertificate(*nested.certificate));
        CHECK(nested.certificate->children[0].rule ==
              KindCertificate::Rule::AdjoinTranscendental);

        auto gaussPoly = certifyKind(RingSpec::polynomial(Zi));
        REQUIRE(gaussPoly.certified());
        CHECK(validateCertificate(*gaussPoly.certificate));
    }

    SUBCASE("localized rings are refuted by the 1/m vector") {
        auto outcome = certifyKind(RingSpec::localized(6));
        REQUIRE_FALSE(outcome.certified());
        REQUIRE(outcome.disproof.has_value());
        CHECK(outcome.disproof->length == 36);
        CHECK(outcome.disproof->entry == RingElement::parse(RingSpec::localized(6), "1/6"));
        CHECK(outcome.disproof->verifies());
        auto materialized = outcome.disproof->materialize();
        CHECK(materialized.size() == 36);
        CHECK(verifyCondition1Witness(materialized));
    }

    SUBCASE("rationals and fraction-bearing towers are refuted") {
        for (const RingSpec& spec :
             {Q, Zhalf, RingSpec::quadratic(-1, Zhalf), RingSpec::polynomial(Q),
              RingSpec::quadratic(3, Q)}) {
            auto outcome = certifyKind(spec);
            CHECK_FALSE(outcome.certified());
            REQUIRE(outcome.disproof.has_value());
            CHECK(outcome.disproof->verifies());
            CHECK(verifyCondition1Witness(outcome.disproof->materialize()));
        }
    }

    SUBCASE("directed unions validate but are never synthesized") {
        auto a = certifyKind(Z);
        auto b = certifyKind(Zsqrt2);
        auto u = KindCertificate::directedUnion({*a.certificate, *b.certificate});
        CHECK(validateCertificate(u));
        CHECK_THROWS_AS(KindCertificate::directedUnion({}), UsageError);
    }

    SUBCASE("broken certificates fail validation") {
        auto cert = KindCertificate::discreteNorm(Zhalf); // |1/2| < 1 but 1/2 != 0
        CHECK_FALSE(validateCertificate(cert));
        auto wrongRing = KindCertificate::adjoinSqrt(KindCertificate::discreteNorm(Z), 2, "x");
        wrongRing.adjoined = 3; // no longer mirrors the ring
        CHECK_FALSE(validateCertificate(wrongRing));
    }
}

TEST_CASE("certificate soundness: certified rings defeat every bounded search") {
    std::vector<RingSpec> certified = {Z, Zi, Zsqrtm5, Zsqrt2, Zt};
    for (const auto& spec : certified) {
        CAPTURE(spec.name());
        REQUIRE(certifyKind(spec).certified());
        SearchBounds b = boundsOf(4, 2, 2);
        b.budget = 2'000'000'000; // the length-4 polynomial space covers ~244M
        CHECK_FALSE(searchCondition1(spec, b).foundWitness());
        CHECK_FALSE(searchCondition2(spec, b).foundWitness());
        SearchBounds b6 = boundsOf(4, 1, 2);
        CHECK_FALSE(searchCondition6(spec, b6).foundWitness());
    }
}

TEST_CASE("cross-condition consistency at fixture scale") {
    // unkind fixtures: all three searches produce witnesses, and the
    // converter maps carry them across conditions
    struct Fixture {
        RingSpec ring;
        SearchBounds b1, b6;
    };
    std::vector<Fixture> fixtures = {
        {Zhalf, boundsOf(4, 2), boundsOf(4, 2, 4)},
        {Zfifth, boundsOf(4, 5), boundsOf(4, 5, 2)},
        {Q, boundsOf(4, 2), boundsOf(4, 5, 2)},
    };
    for (auto& fx : fixtures) {
        CAPTURE(fx.ring.name());
        fx.b6.budget = 50'000'000'000'000ull; // dim-4 covered spaces are large
        auto r1 = searchCondition1(fx.ring, fx.b1);
        auto r2 = searchCondition2(fx.ring, fx.b1);
        auto r6 = searchCondition6(fx.ring, fx.b6);
        REQUIRE(r1.foundWitness());
        REQUIRE(r2.foundWitness());
        REQUIRE(r6.foundWitness());

        auto v = *r1.witnessVector;
        auto t = witnessCond2FromCond1(v);
        CHECK(verifyCondition2Witness(t));
        auto v2 = witnessCond1FromCond2(t);
        CHECK(verifyCondition1Witness(v2));

        RingMatrix u = nonMonomialUnitaryFromVector(RingVector(fx.ring, v));
        CHECK(verifyCondition6Witness(u));

        // conjugation by the condition-6 witness moves some diagonal unit
        // out of the diagonal: a condition-3 witness
        auto rn = FiniteGroupoid::fullEquivalence(u.dim());
        StarHomomorphism h = conjugationMap(u, rn);
        CHECK_FALSE(isDiagonalPreserving(h));
        bool sawNonDiagonalProjection = false;
        for (int unit : rn->units()) {
            const AlgebraElement& image = h.imageOf(unit);
            CHECK(isProjection(image));
            if (!isDiagonal(image)) sawNonDiagonalProjection = true;
        }
        CHECK(sawNonDiagonalProjection);
    }
}

TEST_CASE("monomial conjugation preserves the diagonal; non-monomial does not") {
    // the (5) <=> (6) bridge on the full height-1 unitary censuses
    for (const RingSpec& ring : {Z, Zi}) {
        ElementTable table = ElementTable::build(ring, 1, 2);
        auto rn = FiniteGroupoid::fullEquivalence(2);
        std::vector<RingMatrix> unitaries;
        std::vector<std::size_t> idx(4, 0);
        while (true) {
            std::vector<RingElement> entries;
            for (std::size_t i : idx) entries.push_back(table.elems[i]);
            RingMatrix m = RingMatrix::fromEntries(ring, 2, entries);
            if (isUnitary(m)) {
                CHECK(isDiagonalPreserving(conjugationMap(m, rn)) == isMonomial(m));
                unitaries.push_back(m);
            }
            std::size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] == table.size()) {
                idx[pos] = 0;
                ++pos;
            }
            if (pos == idx.size()) break;
        }
        CHECK(unitaries.size() == (ring == Z ? 8 : 32));
        // these censuses are all monomial, and monomial unitaries are closed
        // under product and adjoint
        for (const auto& a : unitaries) {
            CHECK(isMonomial(a));
            CHECK(isMonomial(a.adjoint()));
            for (const auto& b : unitaries) CHECK(isMonomial(a * b));
        }
    }
    // and a non-monomial example over Z[1/5]
    RingMatrix rot = RingMatrix::fromEntries(
        Zfifth, 2,
        {RingElement::parse(Zfifth, "3/5"), RingElement::parse(Zfifth, "4/5"),
         RingElement::parse(Zfifth, "-4/5"), RingElement::parse(Zfifth, "3/5")});
    CHECK_FALSE(isDiagonalPreserving(conjugationMap(rot, FiniteGroupoid::fullEquivalence(2))));
}

TEST_CASE("searches over the Gaussian half-integers hit the degenerate converter branch") {
    // Z[1/2][i]: the canonical condition-1 witness is ((1+i)/2, (1+i)/2),
    // whose two entries have norm square 1/2, so the Householder matrix is
    // monomial and the converter must take the 2x2 block fallback
    RingSpec ring = RingSpec::quadratic(-1, Zhalf);
    auto r = searchCondition1(ring, boundsOf(2, 2));
    REQUIRE(r.foundWitness());
    CHECK(*r.witnessVector == tuple(ring, {"1/2+1/2*i", "1/2+1/2*i"}));

    RingMatrix h = householderFromVector(RingVector(ring, *r.witnessVector));
    CHECK(isMonomial(h));
    RingMatrix u = nonMonomialUnitaryFromVector(RingVector(ring, *r.witnessVector));
    CHECK(verifyCondition6Witness(u));
    CHECK(u.at(0, 0) == RingElement::parse(ring, "1/2+1/2*i"));
}

TEST_CASE("projections over kind-certified rings stay diagonal") {
    // condition (2) => (3) at desk scale: no bounded census over a certified
    // ring ever finds a projection outside the diagonal
    auto z2swap = FiniteGroupoid::fromGroupAction({"g0", "g1"}, {{0, 1}, {1, 0}}, {"p", "q"},
                                                  {{0, 1}, {1, 0}});
    struct Case {
        RingSpec ring;
        std::shared_ptr<const FiniteGroupoid> groupoid;
        int maxHeight;
    };
    std::vector<Case> cases = {
        {Z, FiniteGroupoid::fullEquivalence(2), 2},
        {Zi, FiniteGroupoid::fullEquivalence(2), 1},
        {Zsqrtm5, FiniteGroupoid::fullEquivalence(2), 1},
        {Z, z2swap, 2},
        {Z, FiniteGroupoid::disjointUnion(*FiniteGroupoid::fullEquivalence(2),
                                          *FiniteGroupoid::fullEquivalence(1)),
         1},
    };
    for (const auto& c : cases) {
        CAPTURE(c.ring.name());
        REQUIRE(certifyKind(c.ring).certified());
        for (const auto& p : enumerateProjections(c.ring, c.groupoid, c.maxHeight))
            CHECK(isDiagonal(p));
    }
}

namespace {

// Unpruned reference enumeration in the canonical graded order.
std::vector<std::vector<std::size_t>> gradedTuples(const ElementTable& table, int len) {
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
    while (true) {
        tuples.push_back(idx);
        int pos = len - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == table.size()) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    std::stable_sort(tuples.begin(), tuples.end(),
                     [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                         int ta = 0, tb = 0;
                         for (std::size_t r : a) ta += table.heights[r];
                         for (std::size_t r : b) tb += table.heights[r];
                         if (ta != tb) return ta < tb;
                         return a < b;
                     });
    return tuples;
}

std::vector<RingElement> elementsOf(const ElementTable& table,
                                    const std::vector<std::size_t>& ranks) {
    std::vector<RingElement> out;
    for (std::size_t r : ranks) out.push_back(table.elems[r]);
    return out;
}

} // namespace

TEST_CASE("searches agree with an unpruned brute-force oracle") {
    // guards the feasibility pruning: the first witness and its canonical
    // rank must match a reference scan that prunes nothing
    struct TupleCase {
        RingSpec ring;
        int condition;
        int maxLen, maxHeight;
    };
    std::vector<TupleCase> tupleCases = {
        {Z, 1, 4, 2},     {Zhalf, 1, 4, 2}, {Zhalf, 2, 2, 2},
        {Q, 2, 2, 3},     {Zi, 2, 3, 1},    {Zsqrt2, 1, 3, 2},
        {Zfifth, 1, 2, 5},
    };
    for (const auto& tc : tupleCases) {
        CAPTURE(tc.ring.name());
        CAPTURE(tc.condition);
        ElementTable table = ElementTable::build(tc.ring, tc.maxHeight, 2);
        std::optional<std::vector<RingElement>> expected;
        std::uint64_t expectedRank = 0, seen = 0;
        for (int len = 1; len <= tc.maxLen && !expected; ++len) {
            for (const auto& ranks : gradedTuples(table, len)) {
                ++seen;
                auto tuple = elementsOf(table, ranks);
                bool hit = tc.condition == 1 ? verifyCondition1Witness(tuple)
                                             : verifyCondition2Witness(tuple);
                if (hit) {
                    expected = tuple;
                    expectedRank = seen;
                    break;
                }
            }
        }
        auto result = tc.condition == 1 ? searchCondition1(tc.ring, boundsOf(tc.maxLen, tc.maxHeight))
                                        : searchCondition2(tc.ring, boundsOf(tc.maxLen, tc.maxHeight));
        if (expected) {
            REQUIRE(result.foundWitness());
            CHECK(*result.witnessVector == *expected);
            CHECK(result.candidates == expectedRank);
        } else {
            CHECK_FALSE(result.foundWitness());
            std::uint64_t space = 0, power = 1;
            for (int len = 1; len <= tc.maxLen; ++len) {
                power *= table.size();
                space += power;
            }
            CHECK(result.candidates == space);
        }
    }

    // condition 6: dimensions in order, row-major entries
    struct MatrixCase {
        RingSpec ring;
        int maxDim, maxHeight;
    };
    for (const auto& mc : {MatrixCase{Zfifth, 2, 5}, MatrixCase{Zi, 2, 1}, MatrixCase{Q, 2, 3}}) {
        CAPTURE(mc.ring.name());
        ElementTable table = ElementTable::build(mc.ring, mc.maxHeight, 2);
        std::optional<RingMatrix> expected;
        std::uint64_t expectedRank = 0, seen = 0;
        std::map<int, std::uint64_t> unitaries;
        for (int dim = 1; dim <= mc.maxDim && !expected; ++dim) {
            for (const auto& ranks : gradedTuples(table, dim * dim)) {
                ++seen;
                RingMatrix m = RingMatrix::fromEntries(mc.ring, dim, elementsOf(table, ranks));
                if (isUnitary(m)) {
                    ++unitaries[dim];
                    if (!isMonomial(m)) {
                        expected = m;
                        expectedRank = seen;
                        break;
                    }
                }
            }
        }

        SearchBounds b = boundsOf(3, mc.maxHeight, mc.maxDim);
        auto result = searchCondition6(mc.ring, b);
        if (expected) {
            REQUIRE(result.foundWitness());
            CHECK(*result.witnessMatrix == *expected);
            CHECK(result.candidates == expectedRank);
        } else {
            CHECK_FALSE(result.foundWitness());
            CHECK(result.unitariesByDim == unitaries);
        }
    }
}

TEST_CASE("witness determinism across reruns and thread counts") {
    for (int threads : {1, 2, 8}) {
        CAPTURE(threads);
        auto r = searchCondition1(Zhalf, boundsOf(4, 2, 2, threads));
        REQUIRE(r.foundWitness());
        CHECK(*r.witnessVector == tuple(Zhalf, {"1/2", "1/2", "1/2", "1/2"}));
        CHECK(r.candidates == searchCondition1(Zhalf, boundsOf(4, 2)).candidates);

        auto r6 = searchCondition6(Zfifth, boundsOf(3, 5, 2, threads));
        REQUIRE(r6.foundWitness());
        CHECK(*r6.witnessMatrix == *searchCondition6(Zfifth, boundsOf(3, 5, 2)).witnessMatrix);
        CHECK(r6.candidates == searchCondition6(Zfifth, boundsOf(3, 5, 2)).candidates);
    }
}

TEST_CASE("quadratic splits") {
    SUBCASE("pinned examples") {
        auto one = quadraticSplitVector(RingVector(Zsqrt2, tuple(Zsqrt2, {"1"})));
        CHECK(one.rationalPart.isOne());
        CHECK(one.irrationalPart.isZero());
        CHECK(one.expandedBaseVector == tuple(Z, {"1", "0", "0"}));

        auto gauss = quadraticSplitVector(RingVector(Zi, tuple(Zi, {"i"})));
        CHECK(gauss.rationalPart.isOne());
        CHECK(gauss.irrationalPart.isZero());
        CHECK(gauss.expandedBaseVector == tuple(Z, {"0", "1"}));

        auto silver = quadraticSplitVector(RingVector(Zsqrt2, tuple(Zsqrt2, {"1+sqrt(2)"})));
        CHECK(silver.rationalPart == RingElement::fromInteger(Z, 3));
        CHECK(silver.irrationalPart == RingElement::fromInteger(Z, 2));
    }

    SUBCASE("random vectors reassemble the norm sum exactly") {
        kbtest::Rng rng(777);
        for (const RingSpec& spec : {Zsqrt2, Zi, Zsqrtm5}) {
            auto elems = enumerateElements(spec, 3);
            for (int trial = 0; trial < 60; ++trial) {
                std::vector<RingElement> entries;
                int len = 1 + static_cast<int>(rng.next(4));
                for (int k = 0; k < len; ++k) entries.push_back(rng.pick(elems));
                RingVector v(spec, entries);
                auto split = quadraticSplitVector(v); // internal exact checks throw on failure
                RingElement direct = RingElement::zero(spec);
                for (const auto& e : entries) direct = direct + e.normSquared();
                CHECK(RingElement::pair(spec, split.rationalPart, split.irrationalPart) ==
                      direct);
            }
        }
    }

    CHECK_THROWS_AS(quadraticSplitVector(RingVector(Z, tuple(Z, {"1"}))), UsageError);
}

TEST_CASE("polynomial unit-vector reduction") {
    SUBCASE("pinned examples") {
        auto rejected = polyUnitVectorReduce(RingVector(Zt, tuple(Zt, {"t", "1"})));
        REQUIRE_FALSE(rejected.isUnitVectorCandidate());
        CHECK(rejected.topDegree == 2);
        CHECK(*rejected.topCoefficient == RingElement::one(Z));

        auto constant = polyUnitVectorReduce(RingVector(Zt, tuple(Zt, {"1", "0"})));
        REQUIRE(constant.isUnitVectorCandidate());
        CHECK(*constant.baseVector == tuple(Z, {"1", "0"}));

        auto five = polyUnitVectorReduce(RingVector(Zt, tuple(Zt, {"2*t+1", "t"})));
        REQUIRE_FALSE(five.isUnitVectorCandidate());
        CHECK(five.topDegree == 2);
        CHECK(*five.topCoefficient == RingElement::fromInteger(Z, 5));
    }

    SUBCASE("every nonconstant vector is rejected with matching evidence") {
        kbtest::Rng rng(4242);
        for (const RingSpec& spec : {Zt, RingSpec::polynomial(Zi)}) {
            auto elems = enumerateElements(spec, 2, 2);
            for (int trial = 0; trial < 60; ++trial) {
                std::vector<RingElement> entries;
                int len = 1 + static_cast<int>(rng.next(3));
                bool nonconstant = false;
                for (int k = 0; k < len; ++k) {
                    entries.push_back(rng.pick(elems));
                    if (entries.back().degree() > 0) nonconstant = true;
                }
                if (!nonconstant) continue;
                auto r = polyUnitVectorReduce(RingVector(spec, entries));
                REQUIRE_FALSE(r.isUnitVectorCandidate());
                CHECK_FALSE(r.topCoefficient->isZero());
                CHECK(r.topDegree % 2 == 0);
            }
        }
    }

    CHECK_THROWS_AS(polyUnitVectorReduce(RingVector(Z, tuple(Z, {"1"}))), UsageError);
}

TEST_CASE("L-ring violations") {
    CHECK(isLRingViolation(RingVector(Zi, tuple(Zi, {"2", "i", "i", "i"}))));
    CHECK_FALSE(isLRingViolation(RingVector(Z, tuple(Z, {"1", "0", "0"}))));
    CHECK_FALSE(isLRingViolation(RingVector(Z, tuple(Z, {"0", "-1"}))));
    // the kind/L-ring separation: Z[i] passes the kind searches while
    // violating the L-ring identity
    CHECK_FALSE(searchCondition1(Zi, boundsOf(4, 2)).foundWitness());
}

TEST_CASE("budget errors name the bound") {
    SearchBounds tiny = boundsOf(4, 2);
    tiny.budget = 5;
    CHECK_THROWS_WITH_AS(searchCondition1(Zhalf, tiny), doctest::Contains("bound 5"),
                         ResourceError);
}
