#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "kb/ring.hpp"

namespace kb {

inline std::uint64_t satAdd(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    return __builtin_add_overflow(a, b, &r) ? UINT64_MAX : r;
}

inline std::uint64_t satMul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    return __builtin_mul_overflow(a, b, &r) ? UINT64_MAX : r;
}

/// Element table for bounded searches. Elements sit in canonical order,
/// which is graded by height, so each height class is a contiguous block.
struct ElementTable {
    RingSpec spec;
    std::vector<RingElement> elems;
    std::vector<int> heights;                               // parallel to elems
    std::vector<std::pair<std::size_t, std::size_t>> classes; // [begin,end) per height
    int maxHeight = 0;

    static ElementTable build(const RingSpec& spec, int maxHeight, int maxDegree);

    std::size_t size() const { return elems.size(); }
    std::size_t classBegin(int h) const { return classes[static_cast<std::size_t>(h)].first; }
    std::size_t classSize(int h) const {
        auto [b, e] = classes[static_cast<std::size_t>(h)];
        return e - b;
    }
};

/// N(L, T): number of rank tuples of length L with total height exactly T.
/// Saturating; totals are exact for every space the budget admits.
class GradeCounter {
public:
    GradeCounter(const ElementTable& table, int maxLen);
    std::uint64_t count(int len, int totalHeight) const;
    std::uint64_t totalForLength(int len) const;

private:
    std::vector<std::vector<std::uint64_t>> n_;
};

/// Per-thread visitor for a graded scan. The scanner calls prune(ranks, pos)
/// immediately after ranks[pos] is set (depth-first, so hooks may keep
/// per-position incremental state), and accept(ranks) on complete tuples.
/// accept's return value flags a hit; sideCount is an auxiliary census
/// counter merged by summation when a section completes.
class GradeWorker {
public:
    virtual ~GradeWorker() = default;
    virtual bool prune(std::span<const std::size_t> /*ranks*/, int /*pos*/) { return false; }
    virtual bool accept(std::span<const std::size_t> ranks) = 0;

    std::uint64_t sideCount = 0;
};

using WorkerFactory = std::function<std::unique_ptr<GradeWorker>(int sectionId)>;

/// A section of the search space: tuples of one fixed length (n^2 entries
/// for dimension-n matrices). Sections are exhausted in order.
struct SectionSpec {
    int id;          // reported identifier (vector length or matrix dimension)
    int tupleLength; // number of coordinates
};

struct GradedSearchResult {
    /// First hit in canonical order (section order, then total height, then
    /// lexicographic on ranks), when firstOnly.
    std::optional<std::pair<int, std::vector<std::size_t>>> witness;
    /// Covered candidate count: canonical 1-based rank of the witness, or the
    /// full space size on exhaustion. Independent of pruning and threads.
    std::uint64_t candidates = 0;
    /// sideCount sums per completed section (censuses); absent for the
    /// section where a hit stopped the scan.
    std::map<int, std::uint64_t> sideCountsBySection;
    /// Collect mode: every hit, in canonical order.
    std::vector<std::pair<int, std::vector<std::size_t>>> collected;
};

/// Scans sections grade by grade (total height ascending, lexicographic
/// within a grade), striping each grade across `threads` workers on the
/// first coordinate. Deterministic: the witness, candidate count and
/// censuses do not depend on the thread count. The budget caps the covered
/// candidate space and is enforced before each grade (ResourceError).
GradedSearchResult runGradedSearch(const ElementTable& table,
                                   const std::vector<SectionSpec>& sections,
                                   const WorkerFactory& makeWorker, std::uint64_t budget,
                                   int threads, bool firstOnly);

} // namespace kb
