#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <vector>

#include "kb/algebra.hpp"
#include "kb/groupoid.hpp"
#include "kb/ring.hpp"

namespace kbtest {

// Deterministic RNG for property tests. mt19937_64 output is pinned by the
// standard; std::uniform_int_distribution is not, so bounds are applied by
// rejection sampling.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next(std::uint64_t bound) {
        if (bound == 0) return 0;
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
        while (true) {
            std::uint64_t v = eng();
            if (v < limit) return v % bound;
        }
    }

    const kb::RingElement& pick(const std::vector<kb::RingElement>& elems) {
        return elems[next(elems.size())];
    }
};

// Valid groupoid with <= 5 units and <= 16 arrows: a random disjoint union
// of full equivalence groupoids and small action groupoids.
inline std::shared_ptr<const kb::FiniteGroupoid> randomGroupoid(Rng& rng) {
    using kb::FiniteGroupoid;
    auto cyclicOnPoint = [](int k) {
        std::vector<std::string> names;
        std::vector<std::vector<int>> table(static_cast<std::size_t>(k),
                                            std::vector<int>(static_cast<std::size_t>(k)));
        std::vector<std::vector<int>> action(static_cast<std::size_t>(k), std::vector<int>{0});
        for (int i = 0; i < k; ++i) names.push_back("g" + std::to_string(i));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % k;
        return FiniteGroupoid::fromGroupAction(names, table, {"p"}, action);
    };
    auto z2swap = []() {
        return FiniteGroupoid::fromGroupAction({"g0", "g1"}, {{0, 1}, {1, 0}}, {"p", "q"},
                                               {{0, 1}, {1, 0}});
    };

    std::shared_ptr<const FiniteGroupoid> g;
    int units = 0, arrows = 0;
    int pieces = 1 + static_cast<int>(rng.next(3));
    for (int p = 0; p < pieces; ++p) {
        std::shared_ptr<const FiniteGroupoid> piece;
        switch (rng.next(6)) {
        case 0: piece = FiniteGroupoid::fullEquivalence(1); break;
        case 1: piece = FiniteGroupoid::fullEquivalence(2); break;
        case 2: piece = FiniteGroupoid::fullEquivalence(3); break;
        case 3: piece = cyclicOnPoint(2); break;
        case 4: piece = cyclicOnPoint(3); break;
        default: piece = z2swap(); break;
        }
        int pu = static_cast<int>(piece->units().size());
        int pa = piece->arrowCount();
        if (!g) {
            g = piece;
            units = pu;
            arrows = pa;
        } else if (units + pu <= 5 && arrows + pa <= 16) {
            g = FiniteGroupoid::disjointUnion(*g, *piece);
            units += pu;
            arrows += pa;
        }
    }
    return g;
}

// Sparse random element: each arrow gets a nonzero coefficient with
// probability about 1/2.
inline kb::AlgebraElement randomAlgebraElement(Rng& rng,
                                               std::shared_ptr<const kb::FiniteGroupoid> g,
                                               const kb::RingSpec& ring,
                                               const std::vector<kb::RingElement>& elems) {
    std::map<int, kb::RingElement> coeffs;
    for (int a = 0; a < g->arrowCount(); ++a) {
        if (rng.next(2) == 0) continue;
        coeffs.emplace(a, rng.pick(elems));
    }
    return kb::AlgebraElement::fromCoefficients(std::move(g), ring, std::move(coeffs));
}

} // namespace kbtest
