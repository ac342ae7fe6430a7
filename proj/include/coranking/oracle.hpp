#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coranking/corank.hpp"

namespace coranking {

/// (key, list) pairs of every element, sorted by key then list index.
/// Positions stay ascending inside equal (key, list) groups because the
/// sort is stable, so this materializes the strict (key, list, position)
/// order without storing positions.
template <typename Key>
std::vector<std::pair<Key, int>> sorted_triples(const Instance<Key>& inst) {
    std::vector<std::pair<Key, int>> triples;
    triples.reserve(static_cast<std::size_t>(inst.total));
    for (std::size_t t = 0; t < inst.lists.size(); ++t)
        for (const Key& v : inst.lists[t])
            triples.emplace_back(v, static_cast<int>(t));
    std::stable_sort(triples.begin(), triples.end(),
                     [](const auto& a, const auto& b) {
                         if (a.first < b.first) return true;
                         if (b.first < a.first) return false;
                         return a.second < b.second;
                     });
    return triples;
}

/// Per-list counts of the first `rank` entries of a pre-sorted triple
/// sequence. Shared by the exhaustive oracle and bulk test loops that
/// reuse one sort across many ranks.
template <typename Key>
CutVector count_prefix(const std::vector<std::pair<Key, int>>& triples,
                       std::size_t lists, std::int64_t rank) {
    CutVector cut{std::vector<std::int64_t>(lists, 0), rank};
    for (std::int64_t j = 0; j < rank; ++j)
        ++cut.index[static_cast<std::size_t>(triples[static_cast<std::size_t>(j)].second)];
    return cut;
}

/// Exhaustive reference: sorts every element and counts the prefix.
/// O(total log total); the canonical answer by definition.
template <typename Key>
CutVector oracle_corank(const Instance<Key>& inst, std::int64_t rank) {
    if (rank < 0 || rank > inst.total)
        throw std::invalid_argument("oracle_corank: rank out of range");
    return count_prefix(sorted_triples(inst), inst.lists.size(), rank);
}

/// The rank-th smallest key (1-based) of the multiset union.
template <typename Key>
Key oracle_kth_value(const Instance<Key>& inst, std::int64_t rank) {
    if (rank < 1 || rank > inst.total)
        throw std::invalid_argument("oracle_kth_value: rank out of range");
    std::vector<Key> values;
    values.reserve(static_cast<std::size_t>(inst.total));
    for (const auto& list : inst.lists)
        values.insert(values.end(), list.begin(), list.end());
    auto nth = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
    std::nth_element(values.begin(), nth, values.end());
    return *nth;
}

/// Value-space competitor: bisects a key threshold with global count-<=
/// probes (one binary search per list per probe), then deals the
/// threshold-valued runs to lists in ascending index order. Produces the
/// same canonical cut as oracle_corank by a route that never sorts.
template <std::integral Key>
CutVector value_space_baseline(const Instance<Key>& inst, std::int64_t rank) {
    if (rank < 0 || rank > inst.total)
        throw std::invalid_argument("value_space_baseline: rank out of range");
    const std::size_t m = inst.lists.size();
    CutVector cut{std::vector<std::int64_t>(m, 0), rank};
    if (rank == 0) return cut;

    Key lo{}, hi{};
    bool first = true;
    for (const auto& list : inst.lists) {
        if (list.empty()) continue;
        if (first || list.front() < lo) lo = list.front();
        if (first || hi < list.back()) hi = list.back();
        first = false;
    }
    const auto count_le = [&](Key v) {
        std::int64_t count = 0;
        for (const auto& list : inst.lists)
            count += std::upper_bound(list.begin(), list.end(), v) - list.begin();
        return count;
    };
    // Smallest key whose count-<= reaches the rank.
    while (lo < hi) {
        const Key mid = std::midpoint(lo, hi); // rounds toward lo
        if (count_le(mid) >= rank)
            hi = mid;
        else
            lo = mid + 1;
    }
    std::int64_t pool = rank;
    std::vector<std::int64_t> run_begin(m), run_end(m);
    for (std::size_t t = 0; t < m; ++t) {
        const auto& list = inst.lists[t];
        run_begin[t] = std::lower_bound(list.begin(), list.end(), lo) - list.begin();
        run_end[t] = std::upper_bound(list.begin(), list.end(), lo) - list.begin();
        pool -= run_begin[t];
    }
    for (std::size_t t = 0; t < m; ++t) {
        const auto take = std::min(run_end[t] - run_begin[t], pool);
        cut.index[t] = run_begin[t] + take;
        pool -= take;
    }
    return cut;
}

enum class DupProfile { None, Heavy, Runs };

/// Deterministic instance generator. The seed fully determines the output.
struct GenSpec {
    int m_min = 1;
    int m_max = 1;
    std::int64_t n_min = 0;
    std::int64_t n_max = 0;
    DupProfile dups = DupProfile::None;
    std::int64_t key_universe = 0; // 0 = profile default
    std::uint64_t seed = 0;
};

inline Instance<std::int64_t> gen_instance(const GenSpec& spec) {
    if (spec.m_min < 1 || spec.m_min > spec.m_max)
        throw std::invalid_argument("gen_instance: empty list-count range");
    if (spec.n_min < 0 || spec.n_min > spec.n_max)
        throw std::invalid_argument("gen_instance: empty length range");
    std::mt19937_64 rng(spec.seed);
    const auto draw = [&rng](std::int64_t span) { // uniform-ish in [0, span)
        return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(span));
    };

    const int m = spec.m_min + static_cast<int>(draw(spec.m_max - spec.m_min + 1));
    std::vector<std::vector<std::int64_t>> lists(static_cast<std::size_t>(m));
    for (auto& list : lists) {
        const std::int64_t n = spec.n_min + draw(spec.n_max - spec.n_min + 1);
        list.reserve(static_cast<std::size_t>(n));
        switch (spec.dups) {
        case DupProfile::None: {
            const std::int64_t universe =
                spec.key_universe > 0 ? spec.key_universe : (std::int64_t{1} << 40);
            for (std::int64_t j = 0; j < n; ++j)
                list.push_back(draw(universe) - universe / 2);
            std::sort(list.begin(), list.end());
            break;
        }
        case DupProfile::Heavy: {
            // Tiny universe {0,1,2}: counting the draws yields the list
            // already sorted.
            const std::int64_t universe =
                spec.key_universe > 0 ? std::min<std::int64_t>(spec.key_universe, 3) : 3;
            std::int64_t count[3] = {0, 0, 0};
            for (std::int64_t j = 0; j < n; ++j)
                ++count[draw(universe)];
            for (std::int64_t v = 0; v < 3; ++v)
                list.insert(list.end(), static_cast<std::size_t>(count[v]), v);
            break;
        }
        case DupProfile::Runs: {
            // Long constant runs over a small shared universe, values
            // non-decreasing run to run.
            const std::int64_t universe = spec.key_universe > 0 ? spec.key_universe : 8;
            std::int64_t value = draw(universe);
            std::int64_t placed = 0;
            while (placed < n) {
                const std::int64_t len = 1 + draw(n - placed);
                list.insert(list.end(), static_cast<std::size_t>(len), value);
                placed += len;
                value += draw(3);
            }
            break;
        }
        }
    }
    return make_instance(std::move(lists));
}

} // namespace coranking
