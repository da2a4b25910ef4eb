#include "kb/groupoid.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "kb/errors.hpp"

namespace kb {

namespace {

std::string pairId(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

} // namespace

int FiniteGroupoid::arrowIndex(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

void FiniteGroupoid::finalize() {
    // structural R_n detection: n units, n^2 arrows named "(i,j)" with the
    // canonical tables
    rn_.reset();
    int n = static_cast<int>(units_.size());
    if (n >= 1 && arrowCount() == n * n) {
        bool ok = true;
        for (int i = 1; ok && i <= n; ++i) {
            for (int j = 1; ok && j <= n; ++j) {
                int a = arrowIndex(pairId(i, j));
                if (a < 0 || rng(a) != arrowIndex(pairId(i, i)) ||
                    src(a) != arrowIndex(pairId(j, j)) || inv(a) != arrowIndex(pairId(j, i))) {
                    ok = false;
                    break;
                }
                if (isUnit(a) != (i == j)) ok = false;
            }
        }
        for (int i = 1; ok && i <= n; ++i)
            for (int j = 1; ok && j <= n; ++j)
                for (int k = 1; ok && k <= n; ++k)
                    for (int l = 1; ok && l <= n; ++l) {
                        int got = compose(arrowIndex(pairId(i, j)), arrowIndex(pairId(k, l)));
                        int want = (j == k) ? arrowIndex(pairId(i, l)) : -1;
                        if (got != want) ok = false;
                    }
        if (ok) rn_ = n;
    }
}

std::optional<int> FiniteGroupoid::canonicalRnSize() const { return rn_; }

int FiniteGroupoid::rnArrow(int i, int j) const {
    if (!rn_) throw UsageError("groupoid " + name_ + " is not a canonical R_n");
    return arrowIndex(pairId(i, j));
}

std::shared_ptr<const FiniteGroupoid> FiniteGroupoid::fullEquivalence(int n) {
    if (n < 1) throw UsageError("R_n requires n >= 1");
    auto g = std::shared_ptr<FiniteGroupoid>(new FiniteGroupoid());
    g->name_ = "Rn:" + std::to_string(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            g->index_[pairId(i, j)] = static_cast<int>(g->arrowIds_.size());
            g->arrowIds_.push_back(pairId(i, j));
        }
    int m = n * n;
    g->src_.resize(static_cast<std::size_t>(m));
    g->rng_.resize(static_cast<std::size_t>(m));
    g->inv_.resize(static_cast<std::size_t>(m));
    g->unitFlags_.assign(static_cast<std::size_t>(m), false);
    g->comp_.assign(static_cast<std::size_t>(m) * m, -1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            int a = g->index_[pairId(i, j)];
            g->rng_[static_cast<std::size_t>(a)] = g->index_[pairId(i, i)];
            g->src_[static_cast<std::size_t>(a)] = g->index_[pairId(j, j)];
            g->inv_[static_cast<std::size_t>(a)] = g->index_[pairId(j, i)];
            if (i == j) {
                g->unitFlags_[static_cast<std::size_t>(a)] = true;
                g->units_.push_back(a);
            }
        }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int l = 1; l <= n; ++l) {
                int a = g->index_[pairId(i, j)];
                int b = g->index_[pairId(j, l)];
                g->comp_[static_cast<std::size_t>(a) * m + b] = g->index_[pairId(i, l)];
            }
    g->finalize();
    return g;
}

std::shared_ptr<const FiniteGroupoid> FiniteGroupoid::fromGroupAction(
    const std::vector<std::string>& groupNames, const std::vector<std::vector<int>>& group,
    const std::vector<std::string>& pointNames, const std::vector<std::vector<int>>& action) {
    int gn = static_cast<int>(groupNames.size());
    int pn = static_cast<int>(pointNames.size());
    if (gn < 1 || pn < 1) throw UsageError("group and point set must be nonempty");
    if (group.size() != groupNames.size() || action.size() != groupNames.size())
        throw UsageError("group/action table size mismatch");
    auto mul = [&](int a, int b) {
        if (a < 0 || a >= gn || b < 0 || b >= gn ||
            group[static_cast<std::size_t>(a)].size() != static_cast<std::size_t>(gn))
            throw UsageError("malformed group table");
        int r = group[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (r < 0 || r >= gn) throw UsageError("group table entry out of range");
        return r;
    };
    auto act = [&](int g, int x) {
        if (action[static_cast<std::size_t>(g)].size() != static_cast<std::size_t>(pn))
            throw UsageError("malformed action table");
        int r = action[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)];
        if (r < 0 || r >= pn) throw UsageError("action table entry out of range");
        return r;
    };

    // locate the identity, check group axioms
    int e = -1;
    for (int cand = 0; cand < gn; ++cand) {
        bool id = true;
        for (int a = 0; a < gn; ++a)
            if (mul(cand, a) != a || mul(a, cand) != a) id = false;
        if (id) {
            e = cand;
            break;
        }
    }
    if (e < 0) throw UsageError("group table has no identity element");
    for (int a = 0; a < gn; ++a)
        for (int b = 0; b < gn; ++b)
            for (int c = 0; c < gn; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw UsageError("group table is not associative");
    for (int a = 0; a < gn; ++a) {
        bool hasInverse = false;
        for (int b = 0; b < gn; ++b)
            if (mul(a, b) == e && mul(b, a) == e) hasInverse = true;
        if (!hasInverse) throw UsageError("group table has a non-invertible element");
    }
    for (int x = 0; x < pn; ++x)
        if (act(e, x) != x) throw UsageError("not a group action: identity must act trivially");
    for (int a = 0; a < gn; ++a)
        for (int b = 0; b < gn; ++b)
            for (int x = 0; x < pn; ++x)
                if (act(mul(a, b), x) != act(a, act(b, x)))
                    throw UsageError("not a group action: (gh)x != g(hx)");

    auto inverseOf = [&](int a) {
        for (int b = 0; b < gn; ++b)
            if (mul(a, b) == e && mul(b, a) == e) return b;
        return -1;
    };

    // arrows (g, x): src = x, rng = g.x, (g, h.x)(h, x) = (gh, x)
    auto out = std::shared_ptr<FiniteGroupoid>(new FiniteGroupoid());
    out->name_ = "action-groupoid";
    int m = gn * pn;
    auto arrowOf = [&](int g, int x) { return g * pn + x; };
    for (int g = 0; g < gn; ++g)
        for (int x = 0; x < pn; ++x) {
            std::string id = "(" + groupNames[static_cast<std::size_t>(g)] + "," +
                             pointNames[static_cast<std::size_t>(x)] + ")";
            out->index_[id] = static_cast<int>(out->arrowIds_.size());
            out->arrowIds_.push_back(id);
        }
    out->src_.resize(static_cast<std::size_t>(m));
    out->rng_.resize(static_cast<std::size_t>(m));
    out->inv_.resize(static_cast<std::size_t>(m));
    out->unitFlags_.assign(static_cast<std::size_t>(m), false);
    out->comp_.assign(static_cast<std::size_t>(m) * m, -1);
    for (int g = 0; g < gn; ++g)
        for (int x = 0; x < pn; ++x) {
            int a = arrowOf(g, x);
            out->src_[static_cast<std::size_t>(a)] = arrowOf(e, x);
            out->rng_[static_cast<std::size_t>(a)] = arrowOf(e, act(g, x));
            out->inv_[static_cast<std::size_t>(a)] = arrowOf(inverseOf(g), act(g, x));
            if (g == e) {
                out->unitFlags_[static_cast<std::size_t>(a)] = true;
                out->units_.push_back(a);
            }
        }
    for (int g = 0; g < gn; ++g)
        for (int h = 0; h < gn; ++h)
            for (int x = 0; x < pn; ++x) {
                int left = arrowOf(g, act(h, x));
                int right = arrowOf(h, x);
                out->comp_[static_cast<std::size_t>(left) * m + right] = arrowOf(mul(g, h), x);
            }
    out->finalize();
    return out;
}

std::shared_ptr<const FiniteGroupoid> FiniteGroupoid::disjointUnion(const FiniteGroupoid& a,
                                                                    const FiniteGroupoid& b) {
    auto out = std::shared_ptr<FiniteGroupoid>(new FiniteGroupoid());
    out->name_ = a.name_ + " + " + b.name_;
    int ma = a.arrowCount(), mb = b.arrowCount();
    int m = ma + mb;
    auto idOf = [&](bool left, const std::string& id) { return (left ? "1:" : "2:") + id; };
    for (int i = 0; i < ma; ++i) {
        out->index_[idOf(true, a.arrowId(i))] = static_cast<int>(out->arrowIds_.size());
        out->arrowIds_.push_back(idOf(true, a.arrowId(i)));
    }
    for (int i = 0; i < mb; ++i) {
        out->index_[idOf(false, b.arrowId(i))] = static_cast<int>(out->arrowIds_.size());
        out->arrowIds_.push_back(idOf(false, b.arrowId(i)));
    }
    out->src_.resize(static_cast<std::size_t>(m));
    out->rng_.resize(static_cast<std::size_t>(m));
    out->inv_.resize(static_cast<std::size_t>(m));
    out->unitFlags_.assign(static_cast<std::size_t>(m), false);
    out->comp_.assign(static_cast<std::size_t>(m) * m, -1);
    for (int i = 0; i < ma; ++i) {
        out->src_[static_cast<std::size_t>(i)] = a.src(i);
        out->rng_[static_cast<std::size_t>(i)] = a.rng(i);
        out->inv_[static_cast<std::size_t>(i)] = a.inv(i);
        if (a.isUnit(i)) {
            out->unitFlags_[static_cast<std::size_t>(i)] = true;
            out->units_.push_back(i);
        }
        for (int j = 0; j < ma; ++j) {
            int c = a.compose(i, j);
            out->comp_[static_cast<std::size_t>(i) * m + j] = c;
        }
    }
    for (int i = 0; i < mb; ++i) {
        out->src_[static_cast<std::size_t>(ma + i)] = ma + b.src(i);
        out->rng_[static_cast<std::size_t>(ma + i)] = ma + b.rng(i);
        out->inv_[static_cast<std::size_t>(ma + i)] = ma + b.inv(i);
        if (b.isUnit(i)) {
            out->unitFlags_[static_cast<std::size_t>(ma + i)] = true;
            out->units_.push_back(ma + i);
        }
        for (int j = 0; j < mb; ++j) {
            int c = b.compose(i, j);
            out->comp_[static_cast<std::size_t>(ma + i) * m + (ma + j)] = c < 0 ? -1 : ma + c;
        }
    }
    out->finalize();
    return out;
}

std::shared_ptr<const FiniteGroupoid> FiniteGroupoid::fromData(const GroupoidData& data,
                                                               std::string name) {
    auto g = std::shared_ptr<FiniteGroupoid>(new FiniteGroupoid());
    g->name_ = std::move(name);
    for (const auto& arrow : data.arrows) {
        if (g->index_.count(arrow.id))
            throw InputError("duplicate arrow id '" + arrow.id + "'");
        g->index_[arrow.id] = static_cast<int>(g->arrowIds_.size());
        g->arrowIds_.push_back(arrow.id);
    }
    int m = g->arrowCount();
    auto lookup = [&](const std::string& id, const char* where) {
        int a = g->arrowIndex(id);
        if (a < 0) throw InputError(std::string("unknown arrow id '") + id + "' in " + where);
        return a;
    };
    g->src_.resize(static_cast<std::size_t>(m));
    g->rng_.resize(static_cast<std::size_t>(m));
    g->inv_.resize(static_cast<std::size_t>(m));
    g->unitFlags_.assign(static_cast<std::size_t>(m), false);
    g->comp_.assign(static_cast<std::size_t>(m) * m, -1);
    for (const auto& arrow : data.arrows) {
        int a = g->arrowIndex(arrow.id);
        g->src_[static_cast<std::size_t>(a)] = lookup(arrow.src, "src");
        g->rng_[static_cast<std::size_t>(a)] = lookup(arrow.rng, "rng");
        g->inv_[static_cast<std::size_t>(a)] = lookup(arrow.inv, "inv");
    }
    std::set<int> unitSet;
    for (const auto& id : data.units) {
        int u = lookup(id, "units");
        if (!unitSet.insert(u).second) throw InputError("duplicate unit '" + id + "'");
        g->unitFlags_[static_cast<std::size_t>(u)] = true;
        g->units_.push_back(u);
    }
    for (const auto& triple : data.compose) {
        int a = lookup(triple[0], "compose");
        int b = lookup(triple[1], "compose");
        int c = lookup(triple[2], "compose");
        int& slot = g->comp_[static_cast<std::size_t>(a) * m + b];
        if (slot != -1 && slot != c)
            throw InputError("conflicting compose entries for (" + triple[0] + "," + triple[1] + ")");
        slot = c;
    }
    g->finalize();
    return g;
}

std::vector<Violation> validateGroupoid(const FiniteGroupoid& g) {
    std::vector<Violation> out;
    int m = g.arrowCount();
    auto add = [&](const std::string& code, const std::string& message,
                   std::vector<std::string> arrows) {
        out.push_back({code, message, std::move(arrows)});
    };

    for (int u : g.units()) {
        if (g.src(u) != u || g.rng(u) != u)
            add("unit-identity",
                "unit " + g.arrowId(u) + " must be its own src and rng", {g.arrowId(u)});
    }
    for (int a = 0; a < m; ++a) {
        if (!g.isUnit(g.src(a)))
            add("src-not-unit", "src(" + g.arrowId(a) + ") is not a unit", {g.arrowId(a)});
        if (!g.isUnit(g.rng(a)))
            add("rng-not-unit", "rng(" + g.arrowId(a) + ") is not a unit", {g.arrowId(a)});
    }

    for (int a = 0; a < m; ++a) {
        int ia = g.inv(a);
        if (g.inv(ia) != a)
            add("inv-involution", "inv(inv(" + g.arrowId(a) + ")) != " + g.arrowId(a),
                {g.arrowId(a)});
        if (g.src(ia) != g.rng(a) || g.rng(ia) != g.src(a))
            add("inv-src-rng",
                "inv not compatible with src/rng: inv(" + g.arrowId(a) + ") = " + g.arrowId(ia),
                {g.arrowId(a), g.arrowId(ia)});
    }

    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int c = g.compose(a, b);
            bool composable = g.src(a) == g.rng(b);
            if (composable && c < 0)
                add("compose-missing",
                    "composable pair undefined: (" + g.arrowId(a) + "," + g.arrowId(b) + ")",
                    {g.arrowId(a), g.arrowId(b)});
            if (!composable && c >= 0)
                add("compose-extraneous",
                    "compose defined on the non-composable pair (" + g.arrowId(a) + "," +
                        g.arrowId(b) + ")",
                    {g.arrowId(a), g.arrowId(b)});
            if (composable && c >= 0) {
                if (g.rng(c) != g.rng(a) || g.src(c) != g.src(b))
                    add("compose-src-rng",
                        "endpoints of " + g.arrowId(a) + "." + g.arrowId(b) + " = " + g.arrowId(c) +
                            " are wrong",
                        {g.arrowId(a), g.arrowId(b), g.arrowId(c)});
            }
        }

    for (int a = 0; a < m; ++a) {
        int ru = g.rng(a), su = g.src(a);
        if (g.isUnit(ru) && g.compose(ru, a) != a)
            add("unit-law", "unit " + g.arrowId(ru) + " does not act as left identity on " +
                                g.arrowId(a),
                {g.arrowId(a)});
        if (g.isUnit(su) && g.compose(a, su) != a)
            add("unit-law", "unit " + g.arrowId(su) + " does not act as right identity on " +
                                g.arrowId(a),
                {g.arrowId(a)});
        int ia = g.inv(a);
        if (g.compose(a, ia) != ru)
            add("inv-law", g.arrowId(a) + ".inv(" + g.arrowId(a) + ") is not the range unit",
                {g.arrowId(a)});
        if (g.compose(ia, a) != su)
            add("inv-law", "inv(" + g.arrowId(a) + ")." + g.arrowId(a) + " is not the source unit",
                {g.arrowId(a)});
    }

    // associativity over all composable triples, skipping pairs already
    // reported as undefined
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (g.src(a) != g.rng(b)) continue;
            int ab = g.compose(a, b);
            if (ab < 0) continue;
            for (int c = 0; c < m; ++c) {
                if (g.src(b) != g.rng(c)) continue;
                int bc = g.compose(b, c);
                if (bc < 0) continue;
                int left = g.compose(ab, c);
                int right = g.compose(a, bc);
                if (left < 0 || right < 0) continue;
                if (left != right)
                    add("assoc",
                        "(" + g.arrowId(a) + "." + g.arrowId(b) + ")." + g.arrowId(c) +
                            " != " + g.arrowId(a) + ".(" + g.arrowId(b) + "." + g.arrowId(c) + ")",
                        {g.arrowId(a), g.arrowId(b), g.arrowId(c)});
            }
        }

    return out;
}

bool isBisection(const FiniteGroupoid& g, std::span<const int> arrows) {
    std::set<int> srcs, rngs;
    for (int a : arrows) {
        if (a < 0 || a >= g.arrowCount()) throw UsageError("arrow index out of range");
        if (!srcs.insert(g.src(a)).second) return false;
        if (!rngs.insert(g.rng(a)).second) return false;
    }
    return true;
}

std::shared_ptr<const FiniteGroupoid> parseGroupoidText(const std::string& text,
                                                        const std::string& name) {
    if (text.rfind("Rn:", 0) == 0) {
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(text.substr(3), &used);
            if (used != text.size() - 3) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InputError("malformed builtin groupoid name '" + text + "' (expected Rn:k)");
        }
        if (n < 1) throw InputError("builtin groupoid '" + text + "' needs k >= 1");
        return FiniteGroupoid::fullEquivalence(n);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("groupoid document is not valid JSON: ") + e.what());
    }
    try {
        GroupoidData data;
        for (const auto& u : doc.at("units")) data.units.push_back(u.get<std::string>());
        for (const auto& a : doc.at("arrows"))
            data.arrows.push_back({a.at("id").get<std::string>(), a.at("src").get<std::string>(),
                                   a.at("rng").get<std::string>(), a.at("inv").get<std::string>()});
        for (const auto& t : doc.at("compose")) {
            if (!t.is_array() || t.size() != 3)
                throw InputError("compose entries must be [a, b, ab] triples");
            data.compose.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                                    t[2].get<std::string>()});
        }
        return FiniteGroupoid::fromData(data, name);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("groupoid document is missing required fields: ") + e.what());
    }
}

} // namespace kb
