#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coranking/indexed_heap.hpp"

namespace coranking {

enum class Bound : std::uint8_t { NegInf = 0, Finite = 1, PosInf = 2 };

/// A cut boundary value: either a sentinel or an element key, tagged with
/// the list it came from. Sentinels never collide with legitimate keys.
template <typename Key>
struct BoundaryKey {
    Bound tag = Bound::NegInf;
    Key value{}; // meaningful only when tag == Bound::Finite
    int list = -1;

    bool operator==(const BoundaryKey&) const = default;
};

/// Orders boundary keys by sentinel tag, then by finite value. Equal finite
/// values (and equal sentinels) compare equivalent; the id tie rule of the
/// surrounding heap decides between them.
template <typename Key>
struct BoundaryValueLess {
    bool operator()(const BoundaryKey<Key>& a, const BoundaryKey<Key>& b) const {
        if (a.tag != b.tag) return a.tag < b.tag;
        if (a.tag != Bound::Finite) return false;
        return a.value < b.value;
    }
};

/// -1 / 0 / +1 on tag-then-value, ignoring the list component.
template <typename Key>
int compare_boundaries(const BoundaryKey<Key>& a, const BoundaryKey<Key>& b) {
    BoundaryValueLess<Key> less;
    if (less(a, b)) return -1;
    if (less(b, a)) return 1;
    return 0;
}

/// A collection of sorted input sequences. Lists are non-decreasing,
/// duplicates allowed, empty lists allowed; `total` caches the summed length.
template <typename Key>
struct Instance {
    std::vector<std::vector<Key>> lists;
    std::int64_t total = 0;
};

/// Builds an Instance, rejecting an empty collection or an out-of-order list.
template <typename Key>
Instance<Key> make_instance(std::vector<std::vector<Key>> lists) {
    if (lists.empty())
        throw std::invalid_argument("instance needs at least one list");
    std::int64_t total = 0;
    for (const auto& list : lists) {
        if (!std::is_sorted(list.begin(), list.end()))
            throw std::invalid_argument("instance list is not non-decreasing");
        total += static_cast<std::int64_t>(list.size());
    }
    return Instance<Key>{std::move(lists), total};
}

/// Per-list prefix lengths together with the rank they add up to.
struct CutVector {
    std::vector<std::int64_t> index;
    std::int64_t rank = 0;

    bool operator==(const CutVector&) const = default;
};

inline std::int64_t cut_mass(const CutVector& cut) {
    return std::accumulate(cut.index.begin(), cut.index.end(), std::int64_t{0});
}

/// Lower/upper feasibility bounds, one pair per list. Lower bounds only
/// rise and upper bounds only fall while the search runs.
struct BoundsState {
    std::vector<std::int64_t> lower;
    std::vector<std::int64_t> upper;
};

/// One committed donor->receiver move, with both convergence measures:
/// the peeked boundary pair and the summed bound width after the move.
template <typename Key>
struct Transfer {
    std::int64_t round = 0;
    int donor = -1;
    int receiver = -1;
    std::int64_t delta = 0;
    BoundaryKey<Key> donor_left{};
    BoundaryKey<Key> receiver_right{};
    std::int64_t width_sum = 0;
};

template <typename Key>
struct RoundStats {
    std::int64_t rounds = 0;
    std::int64_t heap_updates = 0;
    std::vector<Transfer<Key>> transfers; // recorded only when tracing
};

template <typename Key>
struct CorankResult {
    CutVector cut;
    RoundStats<Key> stats;
};

/// Raised when a round can move no mass although the stop condition is
/// unmet. Unreachable on well-formed input; any occurrence is a defect.
class StalledError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void check_list_index(std::int64_t i, std::int64_t n, const char* what) {
    if (i < 0 || i > n)
        throw std::invalid_argument(std::string(what) + ": index out of range");
}

} // namespace detail

/// Key of the last element in the prefix of length `i` of list `t`,
/// or the low sentinel when the prefix is empty.
template <typename Key>
BoundaryKey<Key> boundary_left(const Instance<Key>& inst, int t, std::int64_t i) {
    const auto& list = inst.lists[static_cast<std::size_t>(t)];
    detail::check_list_index(i, static_cast<std::int64_t>(list.size()), "boundary_left");
    if (i == 0) return {Bound::NegInf, Key{}, t};
    return {Bound::Finite, list[static_cast<std::size_t>(i - 1)], t};
}

/// Key of the first element excluded by the prefix of length `i` of list
/// `t`, or the high sentinel when the whole list is included.
template <typename Key>
BoundaryKey<Key> boundary_right(const Instance<Key>& inst, int t, std::int64_t i) {
    const auto& list = inst.lists[static_cast<std::size_t>(t)];
    const auto n = static_cast<std::int64_t>(list.size());
    detail::check_list_index(i, n, "boundary_right");
    if (i == n) return {Bound::PosInf, Key{}, t};
    return {Bound::Finite, list[static_cast<std::size_t>(i)], t};
}

/// Initial feasible cut: fills lists to capacity in ascending list order
/// until `rank` units are placed.
template <typename Key>
CutVector water_fill_init(const Instance<Key>& inst, std::int64_t rank) {
    if (inst.lists.empty())
        throw std::invalid_argument("water_fill_init: instance needs at least one list");
    if (rank < 0 || rank > inst.total)
        throw std::invalid_argument("water_fill_init: rank out of range");
    CutVector cut{std::vector<std::int64_t>(inst.lists.size(), 0), rank};
    std::int64_t need = rank;
    for (std::size_t t = 0; t < inst.lists.size() && need > 0; ++t) {
        const auto take = std::min<std::int64_t>(static_cast<std::int64_t>(inst.lists[t].size()), need);
        cut.index[t] = take;
        need -= take;
    }
    return cut;
}

/// True iff the cut has mass `rank` and the largest included key does not
/// exceed the smallest excluded key across all lists (sentinels at the
/// ends). O(m). Throws on a malformed cut (wrong arity or out-of-range
/// index); on well-formed input this is a total predicate.
template <typename Key>
bool is_valid_corank(const Instance<Key>& inst, const CutVector& cut) {
    const std::size_t m = inst.lists.size();
    if (cut.index.size() != m)
        throw std::invalid_argument("is_valid_corank: cut arity mismatch");
    bool have_left = false, have_right = false;
    Key max_left{}, min_right{};
    std::int64_t mass = 0;
    for (std::size_t t = 0; t < m; ++t) {
        const auto& list = inst.lists[t];
        const auto n = static_cast<std::int64_t>(list.size());
        const auto i = cut.index[t];
        detail::check_list_index(i, n, "is_valid_corank");
        mass += i;
        if (i > 0) {
            const Key& left = list[static_cast<std::size_t>(i - 1)];
            if (!have_left || max_left < left) max_left = left;
            have_left = true;
        }
        if (i < n) {
            const Key& right = list[static_cast<std::size_t>(i)];
            if (!have_right || right < min_right) min_right = right;
            have_right = true;
        }
    }
    if (mass != cut.rank) return false;
    if (!have_left || !have_right) return true;
    return !(min_right < max_left);
}

/// Donor/receiver halving search for a cut of mass `rank` whose prefixes
/// form a consistent global frontier. Each round moves mass from the list
/// with the largest included key to the list with the smallest excluded
/// key, halving the tighter side's feasible range, at O(log m) heap cost.
/// Round counts grow with the list count and the log of the list lengths;
/// only the boundary elements of each list are ever inspected.
template <typename Key>
CorankResult<Key> corank(const Instance<Key>& inst, std::int64_t rank,
                         bool record_transfers = false) {
    const int m = static_cast<int>(inst.lists.size());
    CutVector cut = water_fill_init(inst, rank); // validates m >= 1 and rank range

    BoundsState bounds{std::vector<std::int64_t>(static_cast<std::size_t>(m), 0),
                       std::vector<std::int64_t>(static_cast<std::size_t>(m), 0)};
    for (int t = 0; t < m; ++t)
        bounds.upper[static_cast<std::size_t>(t)] =
            static_cast<std::int64_t>(inst.lists[static_cast<std::size_t>(t)].size());

    using Heap = IndexedHeap<BoundaryKey<Key>, BoundaryValueLess<Key>>;
    Heap max_left(m, {HeapDirection::Max, TieBreak::LargerIdFirst});
    Heap min_right(m, {HeapDirection::Min, TieBreak::SmallerIdFirst});
    for (int t = 0; t < m; ++t) {
        max_left.insert(t, boundary_left(inst, t, cut.index[static_cast<std::size_t>(t)]));
        min_right.insert(t, boundary_right(inst, t, cut.index[static_cast<std::size_t>(t)]));
    }

    RoundStats<Key> stats;
    for (;;) {
        const auto [left_top, donor] = max_left.peek();
        const auto [right_top, receiver] = min_right.peek();
        const int cmp = compare_boundaries(left_top, right_top);
        if (cmp < 0 || (cmp == 0 && donor <= receiver)) break;

        const auto d = static_cast<std::size_t>(donor);
        const auto r = static_cast<std::size_t>(receiver);
        const std::int64_t donor_slack = cut.index[d] - bounds.lower[d];
        const std::int64_t receiver_headroom = bounds.upper[r] - cut.index[r];
        const std::int64_t step =
            std::min((donor_slack + 1) / 2, (receiver_headroom + 1) / 2);
        if (step == 0)
            throw StalledError("corank: no movable mass before reaching a valid cut");

        bounds.upper[d] = cut.index[d];
        bounds.lower[r] = cut.index[r];
        cut.index[d] -= step;
        cut.index[r] += step;

        max_left.update_key(donor, boundary_left(inst, donor, cut.index[d]));
        min_right.update_key(donor, boundary_right(inst, donor, cut.index[d]));
        max_left.update_key(receiver, boundary_left(inst, receiver, cut.index[r]));
        min_right.update_key(receiver, boundary_right(inst, receiver, cut.index[r]));
        stats.heap_updates += 4;
        ++stats.rounds;
        if (record_transfers) {
            std::int64_t width_sum = 0;
            for (int t = 0; t < m; ++t)
                width_sum += bounds.upper[static_cast<std::size_t>(t)] -
                             bounds.lower[static_cast<std::size_t>(t)];
            stats.transfers.push_back({stats.rounds, donor, receiver, step,
                                       left_top, right_top, width_sum});
        }
        assert(cut_mass(cut) == rank);
        assert(bounds.lower[d] <= cut.index[d] && cut.index[d] <= bounds.upper[d]);
        assert(bounds.lower[r] <= cut.index[r] && cut.index[r] <= bounds.upper[r]);
    }
    assert(is_valid_corank(inst, cut));
    return {std::move(cut), std::move(stats)};
}

/// Rewrites a valid cut into the unique cut that counts, per list, the
/// first `rank` elements under the strict order (key, list, position).
/// Only elements equal to the largest included key can move between lists;
/// their pooled count is dealt to lists in ascending index order.
template <typename Key>
CutVector canonicalize_cut(const Instance<Key>& inst, const CutVector& cut) {
    if (!is_valid_corank(inst, cut))
        throw std::invalid_argument("canonicalize_cut: input cut is not valid");
    const std::size_t m = inst.lists.size();
    CutVector out{std::vector<std::int64_t>(m, 0), cut.rank};
    if (cut.rank == 0) return out;

    bool have_edge = false;
    Key edge{}; // largest included key; exists because rank > 0
    for (std::size_t t = 0; t < m; ++t) {
        if (cut.index[t] == 0) continue;
        const Key& left = inst.lists[t][static_cast<std::size_t>(cut.index[t] - 1)];
        if (!have_edge || edge < left) edge = left;
        have_edge = true;
    }

    // Everything below the edge key is included in any valid cut; only the
    // edge-valued runs are negotiable.
    std::vector<std::int64_t> run_begin(m), run_end(m);
    std::int64_t pool = cut.rank;
    for (std::size_t t = 0; t < m; ++t) {
        const auto& list = inst.lists[t];
        run_begin[t] = std::lower_bound(list.begin(), list.end(), edge) - list.begin();
        run_end[t] = std::upper_bound(list.begin(), list.end(), edge) - list.begin();
        pool -= run_begin[t];
    }
    assert(pool >= 0);
    for (std::size_t t = 0; t < m; ++t) {
        const auto take = std::min(run_end[t] - run_begin[t], pool);
        out.index[t] = run_begin[t] + take;
        pool -= take;
    }
    assert(pool == 0);
    return out;
}

template <typename Key>
CutVector corank_canonical(const Instance<Key>& inst, std::int64_t rank) {
    return canonicalize_cut(inst, corank(inst, rank).cut);
}

} // namespace coranking
