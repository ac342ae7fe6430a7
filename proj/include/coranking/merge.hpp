#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coranking/corank.hpp"

namespace coranking {

/// Nested canonical cuts carving the merged order into `processors`
/// equal-mass slices: cuts[0] is all zeros, cuts[processors] the full
/// lengths, cuts[k] the canonical cut at rank floor(k*total/processors).
struct MergePlan {
    std::vector<CutVector> cuts;
    int processors = 0;
};

template <typename Key>
MergePlan partition_for_merge(const Instance<Key>& inst, int processors) {
    if (processors < 1)
        throw std::invalid_argument("partition_for_merge: processor count must be >= 1");
    MergePlan plan;
    plan.processors = processors;
    plan.cuts.reserve(static_cast<std::size_t>(processors) + 1);
    for (int k = 0; k <= processors; ++k) {
        const std::int64_t rank = static_cast<std::int64_t>(k) * inst.total / processors;
        plan.cuts.push_back(corank_canonical(inst, rank));
    }
#ifndef NDEBUG
    for (int k = 0; k < processors; ++k)
        for (std::size_t t = 0; t < inst.lists.size(); ++t)
            assert(plan.cuts[static_cast<std::size_t>(k)].index[t] <=
                   plan.cuts[static_cast<std::size_t>(k) + 1].index[t]);
#endif
    return plan;
}

/// Merges the per-list segments [from[t], to[t]) into `out` in the strict
/// (key, list, position) order, via a cursor heap keyed (key, list).
template <typename Key>
void merge_range(const Instance<Key>& inst, const CutVector& from,
                 const CutVector& to, Key* out) {
    using Cursor = std::pair<Key, int>; // min by (key, list)
    std::priority_queue<Cursor, std::vector<Cursor>, std::greater<Cursor>> heap;
    std::vector<std::int64_t> at(inst.lists.size());
    for (std::size_t t = 0; t < inst.lists.size(); ++t) {
        at[t] = from.index[t];
        if (at[t] < to.index[t])
            heap.emplace(inst.lists[t][static_cast<std::size_t>(at[t])], static_cast<int>(t));
    }
    while (!heap.empty()) {
        const auto [value, t] = heap.top();
        heap.pop();
        *out++ = value;
        const auto u = static_cast<std::size_t>(t);
        if (++at[u] < to.index[u])
            heap.emplace(inst.lists[u][static_cast<std::size_t>(at[u])], t);
    }
}

/// Serial reference merge: one heap pass over the whole instance, no
/// partitioning. Kept as the baseline the parallel kernel is checked and
/// benchmarked against.
template <typename Key>
std::vector<Key> merge_all(const Instance<Key>& inst) {
    if (inst.lists.empty())
        throw std::invalid_argument("merge_all: instance needs at least one list");
    CutVector from{std::vector<std::int64_t>(inst.lists.size(), 0), 0};
    CutVector to{std::vector<std::int64_t>(inst.lists.size()), inst.total};
    for (std::size_t t = 0; t < inst.lists.size(); ++t)
        to.index[t] = static_cast<std::int64_t>(inst.lists[t].size());
    std::vector<Key> out(static_cast<std::size_t>(inst.total));
    merge_range(inst, from, to, out.data());
    return out;
}

/// Partitions the merged order into `processors` slices and merges them
/// concurrently. Slices read disjoint index ranges of the immutable input
/// and write disjoint output ranges, so the result is identical for any
/// thread count and bit-identical to merge_all.
template <typename Key>
std::vector<Key> parallel_merge(const Instance<Key>& inst, int processors) {
    const MergePlan plan = partition_for_merge(inst, processors);
    std::vector<Key> out(static_cast<std::size_t>(inst.total));
    Key* const base = out.data();
#pragma omp parallel for schedule(static)
    for (int k = 0; k < processors; ++k) {
        const auto& from = plan.cuts[static_cast<std::size_t>(k)];
        const auto& to = plan.cuts[static_cast<std::size_t>(k) + 1];
        merge_range(inst, from, to, base + from.rank);
    }
    return out;
}

} // namespace coranking
