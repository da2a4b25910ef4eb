#include "kb/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "kb/errors.hpp"

namespace kb {

ElementTable ElementTable::build(const RingSpec& spec, int maxHeight, int maxDegree) {
    ElementTable t;
    t.spec = spec;
    t.elems = enumerateElements(spec, maxHeight, maxDegree);
    t.maxHeight = maxHeight;
    t.heights.reserve(t.elems.size());
    for (const auto& e : t.elems) t.heights.push_back(e.height());
    t.classes.assign(static_cast<std::size_t>(maxHeight) + 1, {0, 0});
    std::size_t i = 0;
    for (int h = 0; h <= maxHeight; ++h) {
        std::size_t begin = i;
        while (i < t.elems.size() && t.heights[i] == h) ++i;
        t.classes[static_cast<std::size_t>(h)] = {begin, i};
    }
    return t;
}

GradeCounter::GradeCounter(const ElementTable& table, int maxLen) {
    int maxT = maxLen * table.maxHeight;
    n_.assign(static_cast<std::size_t>(maxLen) + 1,
              std::vector<std::uint64_t>(static_cast<std::size_t>(maxT) + 1, 0));
    n_[0][0] = 1;
    for (int len = 1; len <= maxLen; ++len) {
        for (int t = 0; t <= len * table.maxHeight; ++t) {
            std::uint64_t acc = 0;
            for (int h = 0; h <= std::min(table.maxHeight, t); ++h) {
                std::uint64_t cls = table.classSize(h);
                if (cls == 0) continue;
                acc = satAdd(acc, satMul(cls, n_[static_cast<std::size_t>(len) - 1]
                                                 [static_cast<std::size_t>(t - h)]));
            }
            n_[static_cast<std::size_t>(len)][static_cast<std::size_t>(t)] = acc;
        }
    }
}

std::uint64_t GradeCounter::count(int len, int totalHeight) const {
    if (len < 0 || totalHeight < 0) return 0;
    if (static_cast<std::size_t>(len) >= n_.size()) return 0;
    const auto& row = n_[static_cast<std::size_t>(len)];
    if (static_cast<std::size_t>(totalHeight) >= row.size()) return 0;
    return row[static_cast<std::size_t>(totalHeight)];
}

std::uint64_t GradeCounter::totalForLength(int len) const {
    std::uint64_t acc = 0;
    for (std::uint64_t v : n_[static_cast<std::size_t>(len)]) acc = satAdd(acc, v);
    return acc;
}

namespace {

// 0-based rank of a tuple inside its (length, totalHeight) grade.
std::uint64_t rankInGrade(const ElementTable& table, const GradeCounter& counter,
                          std::span<const std::size_t> ranks, int totalHeight) {
    std::uint64_t rank = 0;
    int rem = totalHeight;
    int len = static_cast<int>(ranks.size());
    for (int pos = 0; pos < len; ++pos) {
        int hw = table.heights[ranks[static_cast<std::size_t>(pos)]];
        for (int h = 0; h < hw; ++h) {
            if (rem - h < 0) continue;
            rank = satAdd(rank, satMul(table.classSize(h), counter.count(len - pos - 1, rem - h)));
        }
        std::uint64_t within = ranks[static_cast<std::size_t>(pos)] - table.classBegin(hw);
        rank = satAdd(rank, satMul(within, counter.count(len - pos - 1, rem - hw)));
        rem -= hw;
    }
    return rank;
}

struct GradeScanShared {
    std::atomic<std::size_t> bestFirstRank{SIZE_MAX};
};

// One worker's depth-first pass over a single (length, totalHeight) grade.
class GradeScan {
public:
    GradeScan(const ElementTable& table, int len, int totalHeight, GradeWorker& worker,
              int workerId, int threads, bool firstOnly, GradeScanShared& shared,
              std::vector<std::vector<std::size_t>>* hits)
        : table_(table), len_(len), worker_(worker), workerId_(workerId), threads_(threads),
          firstOnly_(firstOnly), shared_(shared), hits_(hits),
          prefix_(static_cast<std::size_t>(len), 0), totalHeight_(totalHeight) {}

    std::optional<std::vector<std::size_t>> run() {
        scan(0, totalHeight_);
        return found_;
    }

private:
    // Iterate position `pos` over elements whose height keeps the exact
    // total reachable; canonical element order makes this lexicographic.
    void scan(int pos, int rem) {
        int coordsLeft = len_ - pos - 1;
        int hMin = std::max(0, rem - coordsLeft * table_.maxHeight);
        int hMax = std::min(table_.maxHeight, rem);
        std::size_t stripeCounter = 0;
        for (int h = hMin; h <= hMax; ++h) {
            if (pos == len_ - 1 && h != rem) continue;
            auto [begin, end] = table_.classes[static_cast<std::size_t>(h)];
            for (std::size_t r = begin; r < end; ++r) {
                if (pos == 0) {
                    std::size_t mine = stripeCounter++;
                    if (threads_ > 1 && mine % static_cast<std::size_t>(threads_) !=
                                            static_cast<std::size_t>(workerId_))
                        continue;
                    // a hit under a later first coordinate cannot beat the
                    // current best, so the whole stripe tail can be dropped
                    if (firstOnly_ && r > shared_.bestFirstRank.load(std::memory_order_relaxed))
                        return;
                }
                prefix_[static_cast<std::size_t>(pos)] = r;
                std::span<const std::size_t> view(prefix_.data(),
                                                  static_cast<std::size_t>(pos) + 1);
                if (worker_.prune(view, pos)) continue;
                if (pos == len_ - 1) {
                    if (worker_.accept(prefix_)) {
                        if (firstOnly_) {
                            found_ = prefix_;
                            std::size_t first = prefix_[0];
                            std::size_t cur = shared_.bestFirstRank.load();
                            while (first < cur &&
                                   !shared_.bestFirstRank.compare_exchange_weak(cur, first)) {
                            }
                            return;
                        }
                        if (hits_) hits_->push_back(prefix_);
                    }
                } else {
                    scan(pos + 1, rem - h);
                    if (found_) return;
                }
            }
        }
    }

    const ElementTable& table_;
    int len_;
    GradeWorker& worker_;
    int workerId_;
    int threads_;
    bool firstOnly_;
    GradeScanShared& shared_;
    std::vector<std::vector<std::size_t>>* hits_;
    std::vector<std::size_t> prefix_;
    int totalHeight_;
    std::optional<std::vector<std::size_t>> found_;
};

} // namespace

GradedSearchResult runGradedSearch(const ElementTable& table,
                                   const std::vector<SectionSpec>& sections,
                                   const WorkerFactory& makeWorker, std::uint64_t budget,
                                   int threads, bool firstOnly) {
    if (threads < 1) throw UsageError("thread count must be positive");
    GradedSearchResult result;
    std::uint64_t covered = 0;

    for (const auto& section : sections) {
        GradeCounter counter(table, section.tupleLength);
        std::vector<std::unique_ptr<GradeWorker>> workers;
        for (int w = 0; w < threads; ++w) workers.push_back(makeWorker(section.id));

        std::uint64_t sectionCovered = 0;
        for (int t = 0; t <= section.tupleLength * table.maxHeight; ++t) {
            std::uint64_t gradeSize = counter.count(section.tupleLength, t);
            if (gradeSize == 0) continue;
            std::uint64_t after = satAdd(satAdd(covered, sectionCovered), gradeSize);
            if (after > budget)
                throw ResourceError(
                    "candidate budget exceeded: bound " + std::to_string(budget) +
                    ", the next grade would raise the covered space to " +
                    (after == UINT64_MAX ? std::string("more than 2^64-1")
                                         : std::to_string(after)) +
                    " candidates");

            GradeScanShared shared;
            std::vector<std::optional<std::vector<std::size_t>>> found(
                static_cast<std::size_t>(threads));
            std::vector<std::vector<std::vector<std::size_t>>> gradeHits(
                static_cast<std::size_t>(threads));

            auto runWorker = [&](int w) {
                GradeScan scan(table, section.tupleLength, t,
                               *workers[static_cast<std::size_t>(w)], w, threads, firstOnly,
                               shared, firstOnly ? nullptr : &gradeHits[static_cast<std::size_t>(w)]);
                found[static_cast<std::size_t>(w)] = scan.run();
            };

            if (threads == 1) {
                runWorker(0);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(static_cast<std::size_t>(threads));
                for (int w = 0; w < threads; ++w) pool.emplace_back(runWorker, w);
                for (auto& th : pool) th.join();
            }

            if (firstOnly) {
                std::optional<std::vector<std::size_t>> best;
                for (const auto& f : found)
                    if (f && (!best || *f < *best)) best = f;
                if (best) {
                    result.witness = {section.id, *best};
                    std::uint64_t rank = rankInGrade(table, counter, *best, t);
                    result.candidates = satAdd(satAdd(satAdd(covered, sectionCovered), rank), 1);
                    return result;
                }
            } else {
                std::vector<std::vector<std::size_t>> merged;
                for (auto& h : gradeHits)
                    for (auto& v : h) merged.push_back(std::move(v));
                std::sort(merged.begin(), merged.end());
                for (auto& v : merged) result.collected.emplace_back(section.id, std::move(v));
            }
            sectionCovered = satAdd(sectionCovered, gradeSize);
        }

        std::uint64_t side = 0;
        for (const auto& w : workers) side = satAdd(side, w->sideCount);
        result.sideCountsBySection[section.id] = side;
        covered = satAdd(covered, sectionCovered);
    }

    result.candidates = covered;
    return result;
}

} // namespace kb
