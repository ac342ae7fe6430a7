#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coranking/corank.hpp"

namespace coranking {

/// One source of knapsack items, sorted by density (value per weight)
/// non-increasing, with prefix sums for O(1) weight/value of any prefix.
template <typename Q>
struct KnapsackShard {
    std::vector<Q> density;       // non-increasing, >= 0
    std::vector<Q> weight;        // > 0
    std::vector<Q> prefix_weight; // size n+1
    std::vector<Q> prefix_value;  // size n+1; value of item j = density[j]*weight[j]
};

template <typename Q>
KnapsackShard<Q> make_shard(std::vector<Q> density, std::vector<Q> weight) {
    if (density.size() != weight.size())
        throw std::invalid_argument("make_shard: density/weight arity mismatch");
    KnapsackShard<Q> shard;
    shard.prefix_weight.push_back(Q{});
    shard.prefix_value.push_back(Q{});
    for (std::size_t j = 0; j < density.size(); ++j) {
        if (density[j] < Q{})
            throw std::invalid_argument("make_shard: negative density");
        if (!(Q{} < weight[j]))
            throw std::invalid_argument("make_shard: weight must be positive");
        if (j > 0 && density[j - 1] < density[j])
            throw std::invalid_argument("make_shard: densities must be non-increasing");
        shard.prefix_weight.push_back(shard.prefix_weight.back() + weight[j]);
        shard.prefix_value.push_back(shard.prefix_value.back() + density[j] * weight[j]);
    }
    shard.density = std::move(density);
    shard.weight = std::move(weight);
    return shard;
}

template <typename Q>
struct FractionalPick {
    int shard = -1;
    std::int64_t item = -1;
    Q amount{}; // in (0,1)
};

template <typename Q>
struct KnapsackSolution {
    std::vector<std::int64_t> counts; // whole items taken per shard
    std::optional<FractionalPick<Q>> fraction;
    Q total_value{};
    Q total_weight{};
    int corank_calls = 0; // rank searches spent solving
};

/// Summed weight of the per-shard prefixes selected by `cut`. O(m).
template <typename Q>
Q prefix_weight_total(const std::vector<KnapsackShard<Q>>& shards, const CutVector& cut) {
    if (cut.index.size() != shards.size())
        throw std::invalid_argument("prefix_weight_total: cut arity mismatch");
    Q sum{};
    for (std::size_t t = 0; t < shards.size(); ++t) {
        const auto i = cut.index[t];
        if (i < 0 || i > static_cast<std::int64_t>(shards[t].weight.size()))
            throw std::invalid_argument("prefix_weight_total: cut index out of range");
        sum += shards[t].prefix_weight[static_cast<std::size_t>(i)];
    }
    return sum;
}

/// Greedy fractional knapsack across pre-sorted shards without merging
/// them: co-ranking on negated densities gives the top-K item split for
/// any K, and a binary search on K finds the largest whole-item prefix
/// that fits. At most one item is taken fractionally.
template <typename Q>
KnapsackSolution<Q> knapsack_split(const std::vector<KnapsackShard<Q>>& shards,
                                   const Q& capacity) {
    if (capacity < Q{})
        throw std::invalid_argument("knapsack_split: negative capacity");
    if (shards.empty())
        throw std::invalid_argument("knapsack_split: no shards");

    // Negating the non-increasing densities yields non-decreasing lists,
    // so the canonical (key, shard, position) order is density descending
    // with ties to the lower shard then lower item index.
    std::vector<std::vector<Q>> keys(shards.size());
    for (std::size_t t = 0; t < shards.size(); ++t) {
        keys[t].reserve(shards[t].density.size());
        for (const Q& d : shards[t].density)
            keys[t].push_back(-d);
    }
    const Instance<Q> inst = make_instance(std::move(keys));

    KnapsackSolution<Q> solution;
    const auto weight_at = [&](std::int64_t rank) {
        ++solution.corank_calls;
        return prefix_weight_total(shards, corank_canonical(inst, rank));
    };

    // Largest rank whose canonical prefix still fits; monotone because
    // weights are positive and canonical prefixes are nested.
    std::int64_t lo = 0, hi = inst.total;
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo + 1) / 2;
        if (capacity < weight_at(mid))
            hi = mid - 1;
        else
            lo = mid;
    }

    const CutVector cut = corank_canonical(inst, lo);
    ++solution.corank_calls;
    solution.counts = cut.index;
    for (std::size_t t = 0; t < shards.size(); ++t) {
        const auto i = static_cast<std::size_t>(cut.index[t]);
        solution.total_weight += shards[t].prefix_weight[i];
        solution.total_value += shards[t].prefix_value[i];
    }

    if (solution.total_weight < capacity && lo < inst.total) {
        // The next item in canonical order is the receiver boundary of the
        // cut: the smallest excluded (key, shard) pair.
        int pick = -1;
        for (std::size_t t = 0; t < shards.size(); ++t) {
            if (cut.index[t] >= static_cast<std::int64_t>(shards[t].density.size()))
                continue;
            if (pick < 0) {
                pick = static_cast<int>(t);
                continue;
            }
            const Q& best = shards[static_cast<std::size_t>(pick)]
                                .density[static_cast<std::size_t>(cut.index[static_cast<std::size_t>(pick)])];
            const Q& cand = shards[t].density[static_cast<std::size_t>(cut.index[t])];
            if (best < cand) pick = static_cast<int>(t);
        }
        assert(pick >= 0);
        const auto item = cut.index[static_cast<std::size_t>(pick)];
        const Q& item_weight =
            shards[static_cast<std::size_t>(pick)].weight[static_cast<std::size_t>(item)];
        const Q& item_density =
            shards[static_cast<std::size_t>(pick)].density[static_cast<std::size_t>(item)];
        const Q amount = (capacity - solution.total_weight) / item_weight;
        assert(Q{} < amount && amount < Q{1}); // lo is maximal, so the item cannot fit whole
        solution.fraction = FractionalPick<Q>{pick, item, amount};
        solution.total_value += amount * item_density * item_weight;
        solution.total_weight = capacity;
    }
    return solution;
}

} // namespace coranking
