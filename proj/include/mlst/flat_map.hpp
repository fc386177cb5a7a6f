#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "huge_alloc.hpp"

namespace mlst {

// Open-addressed hash map from uint64 keys to nonnegative int32 values,
// linear probing, backward-shift deletion. Built for the suffix trees' child
// index: a handful of lookups and updates per pushed symbol with constant
// churn from sliding windows, so it wants flat storage, no per-entry
// allocation, and real erase. Key and value share a slot so a probe touches
// one cache line; val == -1 marks an empty slot. The table only grows.
class FlatMap {
 public:
  // Value stored under `key`, or -1.
  int32_t get(uint64_t key) const {
    if (slots_.empty()) return -1;
    for (size_t i = mix(key) & mask_;; i = (i + 1) & mask_) {
      if (slots_[i].val == -1) return -1;
      if (slots_[i].key == key) return slots_[i].val;
    }
  }

  // Inserts or overwrites. `val` must be >= 0.
  void put(uint64_t key, int32_t val) {
    if (slots_.empty() || (size_ + 1) * 4 > capacity() * 3) grow();
    for (size_t i = mix(key) & mask_;; i = (i + 1) & mask_) {
      if (slots_[i].val == -1) {
        slots_[i] = {key, val};
        ++size_;
        return;
      }
      if (slots_[i].key == key) {
        slots_[i].val = val;
        return;
      }
    }
  }

  // Removes `key` if present. Backward shift: every displaced entry whose
  // probe path runs through the hole moves into it, so no tombstones.
  void erase(uint64_t key) {
    if (slots_.empty()) return;
    size_t i = mix(key) & mask_;
    for (;; i = (i + 1) & mask_) {
      if (slots_[i].val == -1) return;
      if (slots_[i].key == key) break;
    }
    for (size_t j = (i + 1) & mask_; slots_[j].val != -1; j = (j + 1) & mask_) {
      size_t h = mix(slots_[j].key) & mask_;
      if (((j - h) & mask_) >= ((j - i) & mask_)) {
        slots_[i] = slots_[j];
        i = j;
      }
    }
    slots_[i].val = -1;
    --size_;
  }

  // Address of the slot a lookup of `key` would inspect first; for
  // software prefetch by callers that know the key a little in advance.
  const void* probe_address(uint64_t key) const {
    return slots_.empty() ? nullptr : &slots_[mix(key) & mask_];
  }

  size_t size() const { return size_; }
  size_t capacity() const { return slots_.size(); }

 private:
  struct Slot {
    uint64_t key;
    int32_t val;
  };

  // SplitMix64 finalizer.
  static size_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return static_cast<size_t>(x ^ (x >> 31));
  }

  void grow() {
    const size_t cap = slots_.empty() ? 16 : 2 * slots_.size();
    auto old = std::move(slots_);
    slots_.assign(cap, Slot{0, -1});
    mask_ = cap - 1;
    size_ = 0;
    for (const Slot& s : old)
      if (s.val != -1) put(s.key, s.val);
  }

  std::vector<Slot, HugePageAllocator<Slot>> slots_;
  size_t size_ = 0;
  size_t mask_ = 0;
};

}  // namespace mlst
