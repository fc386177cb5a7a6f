#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cost_model.hpp"
#include "sliding_window_tree.hpp"

namespace mlst {

// A factor reference: `length` symbols copied from `offset` positions back.
// offset == 0 means no occurrence was available.
struct MatchRef {
  uint64_t length = 0;
  uint64_t offset = 0;
  friend bool operator==(const MatchRef&, const MatchRef&) = default;
};

struct SpfEntry {
  uint64_t length;
  uint64_t offset;
  friend bool operator==(const SpfEntry&, const SpfEntry&) = default;
};

// One sliding suffix tree per codeword-length class of back-offsets, all
// sharing a single append-only text buffer. Layer x holds the last sw_x
// symbols, where sw_x is the largest offset whose codeword is as short as
// the x-th distinct length, so "occurs in layer x but not in layer x-1"
// pins the offset class of a match exactly.
//
// Two positions matter: time() counts consumed symbols, cursor() is the
// match anchor. advance() moves both together. A parser that needs to
// discover how far a match reaches feeds symbols with extend(), which grows
// every window in place of sliding it (keeping offsets anchored at the
// cursor) and freezes, per layer, the longest still-matching lookahead
// prefix with an occurrence position. rebase() then moves the cursor to the
// next anchor and lets the windows slide again. rep_lpf()/rep_spf() read
// the frozen snapshots; rep_pattern() queries the live windows.
class MultilayerIndex {
 public:
  MultilayerIndex(CostModel model, uint64_t max_window)
      : model_(model),
        geometry_(layer_sizes(model, max_window)),
        text_(std::make_shared<std::vector<uint8_t>>()) {
    layers_.reserve(geometry_.count());
    for (uint64_t cap : geometry_.sizes) layers_.emplace_back(cap, text_);
    snaps_.resize(layers_.size());
  }

  // Equivalent to extend() then rebase(time()). When the cursor is already
  // at the frontier the rebase would discard every snapshot the extend just
  // took, so that round trip is skipped.
  void advance(uint8_t symbol) {
    if (cursor_ == time_) {
      if (text_->size() == time_) text_->push_back(symbol);
      for (const auto& layer : layers_) layer.prefetch(symbol);
      for (auto& layer : layers_) {
        layer.set_extension(0);
        layer.push(symbol);
      }
      ++time_;
      cursor_ = time_;
      for (auto& s : snaps_) s = {0, 0};
      spf_dirty_ = true;
      return;
    }
    extend(symbol);
    rebase(time_);
  }

  void extend(uint8_t symbol) {
    if (text_->size() == time_) text_->push_back(symbol);
    const uint64_t ext = time_ + 1 - cursor_;
    for (const auto& layer : layers_) layer.prefetch(symbol);
    for (auto& layer : layers_) {
      layer.set_extension(ext);
      layer.push(symbol);
    }
    ++time_;
    const uint64_t need = time_ - cursor_;
    for (size_t i = 0; i < layers_.size(); ++i) {
      auto [len, pos] = layers_[i].longest_repeated_suffix();
      // the whole lookahead T[cursor, time) still occurs in layer i: record
      // where its copy starts, trimming the repeated suffix to that length
      if (len >= need) snaps_[i] = {need, pos + (len - need)};
    }
    spf_dirty_ = true;
  }

  void rebase(uint64_t new_cursor) {
    if (new_cursor < cursor_ || new_cursor > time_)
      throw std::invalid_argument("rebase: cursor out of range");
    assert(time_ - new_cursor <= 1);
    if (new_cursor == cursor_) return;
    cursor_ = new_cursor;
    const uint64_t need = time_ - cursor_;
    for (size_t i = 0; i < layers_.size(); ++i) {
      layers_[i].set_extension(need);
      if (need > 0) {
        auto [len, pos] = layers_[i].longest_repeated_suffix();
        snaps_[i] = len >= need ? Snap{need, pos + (len - need)} : Snap{0, 0};
      } else {
        snaps_[i] = {0, 0};
      }
    }
    spf_dirty_ = true;
  }

  // Longest prefix of the lookahead that occurs before the cursor, with the
  // offset taken from the smallest layer holding it; that layer's class
  // contains the rightmost occurrence's offset, so the codeword cost is the
  // same. (0, 0) when nothing matched.
  MatchRef rep_lpf() const {
    const uint64_t best = snaps_.back().len;
    if (best == 0) return {0, 0};
    for (size_t i = 0;; ++i) {
      assert(i < snaps_.size());
      if (snaps_[i].len == best) return {best, cursor_ - snaps_[i].pos};
    }
  }

  // Per-class prefix matches: for each distinct match length over the
  // layers, one entry (length, offset) with the offset from the smallest
  // layer reaching that length. Lengths strictly decrease; so do the
  // offsets' codeword costs.
  const std::vector<SpfEntry>& rep_spf() const {
    if (spf_dirty_) {
      spf_.clear();
      for (size_t i = layers_.size(); i-- > 0;) {
        const Snap& s = snaps_[i];
        if (s.len == 0) continue;
        const uint64_t d = cursor_ - s.pos;
        if (!spf_.empty() && spf_.back().length == s.len)
          spf_.back().offset = d;  // same length from a smaller class wins
        else
          spf_.push_back({s.len, d});
      }
      spf_dirty_ = false;
    }
    return spf_;
  }

  // Occurrence of an explicit pattern, reported as (|p|, offset back from
  // time()) with the offset from the smallest layer containing p, or
  // (|p|, 0) when no layer does. Presence is monotone across layers since
  // the windows are nested.
  MatchRef rep_pattern(std::span<const uint8_t> p) const {
    if (p.empty()) throw std::invalid_argument("rep_pattern: empty pattern");
    size_t lo = 0, hi = layers_.size();
    while (lo < hi) {
      size_t mid = lo + (hi - lo) / 2;
      if (layers_[mid].find(p))
        hi = mid;
      else
        lo = mid + 1;
    }
    if (lo == layers_.size()) return {p.size(), 0};
    std::optional<uint64_t> j = layers_[lo].find(p);
    assert(j);
    return {p.size(), time_ - *j};
  }

  uint64_t time() const { return time_; }
  uint64_t cursor() const { return cursor_; }
  CostModel model() const { return model_; }
  const LayerSizes& geometry() const { return geometry_; }
  size_t layer_count() const { return layers_.size(); }
  const SlidingWindowTree& layer(size_t i) const { return layers_.at(i); }

  uint64_t op_count() const {
    uint64_t total = 0;
    for (const auto& layer : layers_) total += layer.op_count();
    return total;
  }

 private:
  struct Snap {
    uint64_t len = 0;
    uint64_t pos = 0;
  };

  CostModel model_;
  LayerSizes geometry_;
  std::shared_ptr<std::vector<uint8_t>> text_;
  std::vector<SlidingWindowTree> layers_;  // ascending capacity
  std::vector<Snap> snaps_;                // frozen per-layer lookahead matches
  uint64_t time_ = 0;
  uint64_t cursor_ = 0;
  mutable std::vector<SpfEntry> spf_;
  mutable bool spf_dirty_ = true;
};

}  // namespace mlst
