#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coranking/corank.hpp"
#include "coranking/indexed_heap.hpp"

using coranking::Bound;
using coranking::BoundaryKey;
using coranking::BoundaryValueLess;
using coranking::HeapDirection;
using coranking::HeapOrder;
using coranking::IndexedHeap;
using coranking::TieBreak;

namespace {

using BKey = BoundaryKey<std::int64_t>;
using BHeap = IndexedHeap<BKey, BoundaryValueLess<std::int64_t>>;

BKey fin(std::int64_t v) { return {Bound::Finite, v, -1}; }

int ceil_log2(int m) {
    int bits = 0;
    while ((1 << bits) < m) ++bits;
    return bits;
}

} // namespace

TEST_CASE("insert and peek basics") {
    BHeap heap(4, {HeapDirection::Min, TieBreak::SmallerIdFirst});
    heap.insert(0, fin(5));
    CHECK(heap.peek() == std::pair{fin(5), 0});

    heap.insert(1, fin(2));
    CHECK(heap.peek() == std::pair{fin(2), 1});
}

TEST_CASE("min heap breaks key ties toward the smaller id") {
    BHeap heap(4, {HeapDirection::Min, TieBreak::SmallerIdFirst});
    heap.insert(1, fin(4));
    heap.insert(0, fin(4));
    CHECK(heap.peek().second == 0);
}

TEST_CASE("max heap breaks key ties toward the larger id") {
    BHeap heap(4, {HeapDirection::Max, TieBreak::LargerIdFirst});
    heap.insert(0, fin(7));
    heap.insert(2, fin(7));
    CHECK(heap.peek() == std::pair{fin(7), 2});
}

TEST_CASE("min heap returns the smallest key") {
    BHeap heap(3, {HeapDirection::Min, TieBreak::SmallerIdFirst});
    heap.insert(0, fin(3));
    heap.insert(1, fin(1));
    heap.insert(2, fin(2));
    CHECK(heap.peek() == std::pair{fin(1), 1});
    CHECK(heap.peek() == std::pair{fin(1), 1}); // peek does not modify
}

TEST_CASE("update_key moves entries both ways") {
    BHeap heap(2, {HeapDirection::Min, TieBreak::SmallerIdFirst});
    heap.insert(0, fin(1));
    heap.insert(1, fin(5));
    heap.update_key(0, fin(9));
    CHECK(heap.peek() == std::pair{fin(5), 1});

    BHeap max_heap(2, {HeapDirection::Max, TieBreak::LargerIdFirst});
    max_heap.insert(0, fin(1));
    max_heap.insert(1, fin(5));
    max_heap.update_key(0, BKey{Bound::PosInf, 0, -1});
    CHECK(max_heap.peek().second == 0);
    CHECK(max_heap.peek().first.tag == Bound::PosInf);
}

TEST_CASE("update_key to the identical key leaves peek unchanged") {
    BHeap heap(3, {HeapDirection::Min, TieBreak::SmallerIdFirst});
    heap.insert(0, fin(3));
    heap.insert(1, fin(1));
    const auto before = heap.peek();
    heap.update_key(1, fin(1));
    CHECK(heap.peek() == before);
}

TEST_CASE("usage errors") {
    BHeap heap(2, {HeapDirection::Min, TieBreak::SmallerIdFirst});
    CHECK_THROWS_AS(heap.peek(), std::invalid_argument);
    CHECK_THROWS_AS(heap.update_key(0, fin(1)), std::invalid_argument);
    heap.insert(0, fin(1));
    CHECK_THROWS_AS(heap.insert(0, fin(2)), std::invalid_argument);
    CHECK_THROWS_AS(heap.insert(2, fin(2)), std::invalid_argument);
    CHECK_THROWS_AS(heap.insert(-1, fin(2)), std::invalid_argument);
}

TEST_CASE("differential test against a linear-scan oracle") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 500; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 256);
        const HeapOrder order{rng() % 2 ? HeapDirection::Min : HeapDirection::Max,
                              rng() % 2 ? TieBreak::SmallerIdFirst : TieBreak::LargerIdFirst};
        // Small universes force ties, wide ones force rebalancing.
        const std::int64_t universe = rng() % 2 ? 8 : 1'000'000;
        IndexedHeap<std::int64_t> heap(m, order);
        std::vector<std::int64_t> live(static_cast<std::size_t>(m));
        std::vector<bool> present(static_cast<std::size_t>(m), false);
        int live_count = 0;
        const int swap_budget = ceil_log2(m) + 1;

        const auto scan = [&] {
            int best = -1;
            for (int id = 0; id < m; ++id) {
                if (!present[static_cast<std::size_t>(id)]) continue;
                if (best < 0) {
                    best = id;
                    continue;
                }
                const auto a = live[static_cast<std::size_t>(id)];
                const auto b = live[static_cast<std::size_t>(best)];
                bool ahead;
                if (a != b) {
                    ahead = order.direction == HeapDirection::Min ? a < b : b < a;
                } else {
                    ahead = order.tie == TieBreak::SmallerIdFirst ? id < best : id > best;
                }
                if (ahead) best = id;
            }
            return best;
        };

        const int ops = 32 + static_cast<int>(rng() % 256);
        for (int op = 0; op < ops; ++op) {
            const auto key = static_cast<std::int64_t>(rng() % universe);
            if (live_count < m && (live_count == 0 || rng() % 2)) {
                int id = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
                while (present[static_cast<std::size_t>(id)]) id = (id + 1) % m;
                heap.insert(id, key);
                present[static_cast<std::size_t>(id)] = true;
                live[static_cast<std::size_t>(id)] = key;
                ++live_count;
            } else {
                int id = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
                while (!present[static_cast<std::size_t>(id)]) id = (id + 1) % m;
                heap.update_key(id, key);
                live[static_cast<std::size_t>(id)] = key;
            }
            REQUIRE(heap.last_op_swaps() <= swap_budget);
            REQUIRE(heap.peek().second == scan());
            if (m <= 64) heap.check_heap(); // parent/child order after every op
        }
        heap.check_heap();
    }
}
