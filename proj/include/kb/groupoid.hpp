#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kb {

/// One axiom violation found by the validator; data, not an error.
struct Violation {
    std::string code;
    std::string message;
    std::vector<std::string> arrows;

    bool operator==(const Violation&) const = default;
};

/// Raw groupoid tables as read from a document: arrows with endpoint and
/// inverse references, plus an explicit partial composition table.
struct GroupoidData {
    std::vector<std::string> units;
    struct Arrow {
        std::string id, src, rng, inv;
    };
    std::vector<Arrow> arrows;
    std::vector<std::array<std::string, 3>> compose;
};

/// Finite discrete groupoid (Hausdorff ample with compact open unit space).
/// Arrows are indexed in construction order; composition is an explicit
/// table. Immutable after construction; the validator is the single source
/// of truth for the axioms.
class FiniteGroupoid {
public:
    /// The groupoid of the universal equivalence relation on {1..n}:
    /// arrows (i,j), rng = i, src = j, (i,j)(k,l) = (i,l) when j = k.
    static std::shared_ptr<const FiniteGroupoid> fullEquivalence(int n);

    /// Action groupoid of a finite group on a finite set. The group comes as
    /// a multiplication table (group[g][h] = index of gh), the action as a
    /// table action[g][x]. Group and action axioms are checked (UsageError).
    static std::shared_ptr<const FiniteGroupoid>
    fromGroupAction(const std::vector<std::string>& groupNames,
                    const std::vector<std::vector<int>>& group,
                    const std::vector<std::string>& pointNames,
                    const std::vector<std::vector<int>>& action);

    static std::shared_ptr<const FiniteGroupoid> disjointUnion(const FiniteGroupoid& a,
                                                               const FiniteGroupoid& b);

    /// Builds from raw tables. Referential problems (unknown ids,
    /// duplicates) are InputErrors; axiom violations are left for
    /// validateGroupoid.
    static std::shared_ptr<const FiniteGroupoid> fromData(const GroupoidData& data,
                                                          std::string name = "groupoid");

    int arrowCount() const noexcept { return static_cast<int>(arrowIds_.size()); }
    const std::string& arrowId(int a) const { return arrowIds_[static_cast<std::size_t>(a)]; }
    int arrowIndex(const std::string& id) const; // -1 when unknown
    const std::vector<int>& units() const noexcept { return units_; }
    bool isUnit(int a) const { return unitFlags_[static_cast<std::size_t>(a)]; }

    int src(int a) const { return src_[static_cast<std::size_t>(a)]; }
    int rng(int a) const { return rng_[static_cast<std::size_t>(a)]; }
    int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
    /// Composition a.b (defined when src(a) = rng(b)); -1 when undefined.
    int compose(int a, int b) const {
        return comp_[static_cast<std::size_t>(a) * arrowIds_.size() + static_cast<std::size_t>(b)];
    }

    const std::string& name() const noexcept { return name_; }

    /// n when this groupoid is structurally the canonical R_n built by
    /// fullEquivalence (matching ids "(i,j)" and tables); nullopt otherwise.
    std::optional<int> canonicalRnSize() const;
    /// Arrow index of "(i,j)" in a canonical R_n (1-based i, j).
    int rnArrow(int i, int j) const;

private:
    FiniteGroupoid() = default;
    void finalize();

    std::string name_;
    std::vector<std::string> arrowIds_;
    std::map<std::string, int> index_;
    std::vector<int> units_;
    std::vector<bool> unitFlags_;
    std::vector<int> src_, rng_, inv_;
    std::vector<int> comp_;
    std::optional<int> rn_;
};

/// Every violated axiom with the offending arrows; empty list = valid.
std::vector<Violation>
validateGroupoid(const FiniteGroupoid& g);

/// src and rng both injective on the subset.
bool isBisection(const FiniteGroupoid& g, std::span<const int> arrows);

/// Parses the groupoid document format (JSON with fields units / arrows /
/// compose) or the builtin name "Rn:k". Does not validate.
std::shared_ptr<const FiniteGroupoid> parseGroupoidText(const std::string& text,
                                                        const std::string& name = "groupoid");

} // namespace kb
