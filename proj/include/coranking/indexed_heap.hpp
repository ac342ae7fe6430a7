#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coranking {

enum class HeapDirection { Min, Max };
enum class TieBreak { SmallerIdFirst, LargerIdFirst };

struct HeapOrder {
    HeapDirection direction = HeapDirection::Min;
    TieBreak tie = TieBreak::SmallerIdFirst;
};

/// Addressable binary heap over the fixed id universe {0..capacity-1}.
///
/// Keys may compare equal under KeyLess; equal keys are ordered by id
/// according to the tie rule, so the heap order is a strict total order
/// on (key, id) pairs. A position map gives O(log capacity) update_key
/// and O(1) peek. There is no pop: ids stay resident once inserted.
template <typename Key, typename KeyLess = std::less<Key>>
class IndexedHeap {
public:
    explicit IndexedHeap(int capacity, HeapOrder order = {}, KeyLess less = {})
        : order_(order), less_(std::move(less)),
          keys_(static_cast<std::size_t>(capacity < 0 ? 0 : capacity)),
          pos_(static_cast<std::size_t>(capacity < 0 ? 0 : capacity), kAbsent) {
        if (capacity < 0)
            throw std::invalid_argument("IndexedHeap: negative capacity");
        slots_.reserve(static_cast<std::size_t>(capacity));
    }

    int capacity() const { return static_cast<int>(pos_.size()); }
    int size() const { return static_cast<int>(slots_.size()); }
    bool empty() const { return slots_.empty(); }

    bool contains(int id) const {
        return id >= 0 && id < capacity() && pos_[static_cast<std::size_t>(id)] != kAbsent;
    }

    const Key& key_of(int id) const {
        require(contains(id), "key_of: id not present");
        return keys_[static_cast<std::size_t>(id)];
    }

    void insert(int id, Key key) {
        require(id >= 0 && id < capacity(), "insert: id out of range");
        require(!contains(id), "insert: duplicate id");
        swaps_ = 0;
        keys_[static_cast<std::size_t>(id)] = std::move(key);
        slots_.push_back(id);
        pos_[static_cast<std::size_t>(id)] = static_cast<int>(slots_.size()) - 1;
        sift_up(static_cast<int>(slots_.size()) - 1);
    }

    void update_key(int id, Key key) {
        require(contains(id), "update_key: id not present");
        swaps_ = 0;
        keys_[static_cast<std::size_t>(id)] = std::move(key);
        const int s = pos_[static_cast<std::size_t>(id)];
        sift_up(s);
        sift_down(pos_[static_cast<std::size_t>(id)]);
    }

    /// Extremal entry under the heap order, unchanged.
    std::pair<Key, int> peek() const {
        require(!empty(), "peek: empty heap");
        const int id = slots_[0];
        return {keys_[static_cast<std::size_t>(id)], id};
    }

    /// Slot swaps performed by the most recent insert/update_key.
    int last_op_swaps() const { return swaps_; }

    /// Walks every parent/child pair; throws if the heap property is broken
    /// or the position map disagrees with the slot array.
    void check_heap() const {
        const int n = size();
        for (int s = 0; s < n; ++s) {
            const int id = slots_[static_cast<std::size_t>(s)];
            if (pos_[static_cast<std::size_t>(id)] != s)
                throw std::logic_error("IndexedHeap: position map out of sync");
            if (s > 0) {
                const int parent = slots_[static_cast<std::size_t>((s - 1) / 2)];
                if (before(id, parent))
                    throw std::logic_error("IndexedHeap: heap property violated");
            }
        }
    }

private:
    static constexpr int kAbsent = -1;

    static void require(bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("IndexedHeap: ") + what);
    }

    // True when a belongs closer to the top than b.
    bool before(int a, int b) const {
        const Key& ka = keys_[static_cast<std::size_t>(a)];
        const Key& kb = keys_[static_cast<std::size_t>(b)];
        if (less_(ka, kb)) return order_.direction == HeapDirection::Min;
        if (less_(kb, ka)) return order_.direction == HeapDirection::Max;
        return order_.tie == TieBreak::SmallerIdFirst ? a < b : a > b;
    }

    void swap_slots(int s, int t) {
        std::swap(slots_[static_cast<std::size_t>(s)], slots_[static_cast<std::size_t>(t)]);
        pos_[static_cast<std::size_t>(slots_[static_cast<std::size_t>(s)])] = s;
        pos_[static_cast<std::size_t>(slots_[static_cast<std::size_t>(t)])] = t;
        ++swaps_;
    }

    void sift_up(int s) {
        while (s > 0) {
            const int parent = (s - 1) / 2;
            if (!before(slots_[static_cast<std::size_t>(s)], slots_[static_cast<std::size_t>(parent)]))
                break;
            swap_slots(s, parent);
            s = parent;
        }
    }

    void sift_down(int s) {
        const int n = size();
        for (;;) {
            int best = s;
            const int left = 2 * s + 1;
            const int right = 2 * s + 2;
            if (left < n && before(slots_[static_cast<std::size_t>(left)], slots_[static_cast<std::size_t>(best)]))
                best = left;
            if (right < n && before(slots_[static_cast<std::size_t>(right)], slots_[static_cast<std::size_t>(best)]))
                best = right;
            if (best == s) break;
            swap_slots(s, best);
            s = best;
        }
    }

    HeapOrder order_;
    KeyLess less_;
    std::vector<Key> keys_;  // keyed by id; valid while id is present
    std::vector<int> pos_;   // id -> slot, kAbsent when not present
    std::vector<int> slots_; // slot -> id
    int swaps_ = 0;
};

} // namespace coranking
