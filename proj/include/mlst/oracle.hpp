#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cost_model.hpp"
#include "sliding_window_tree.hpp"

namespace mlst {

inline constexpr uint64_t npos = ~0ull;

// Offset to the rightmost occurrence of p ending at or before position i:
// i - j for the largest j with text[j, j+|p|) == p and j + |p| <= i. 0 when
// p is empty or does not occur.
inline uint64_t naive_rightmost(std::span<const uint8_t> text, uint64_t i,
                                std::span<const uint8_t> p) {
  if (p.empty() || p.size() > i) return 0;
  for (uint64_t j = i - p.size() + 1; j-- > 0;) {
    if (std::equal(p.begin(), p.end(), text.begin() + static_cast<size_t>(j))) return i - j;
  }
  return 0;
}

// Offset to the rightmost occurrence of p starting before `pos` (it may run
// past pos, which is how self-referencing copies arise). Only starts within
// `window` positions back are considered. 0 when absent.
inline uint64_t naive_rightmost_before(std::span<const uint8_t> text, uint64_t pos,
                                       std::span<const uint8_t> p, uint64_t window = ~0ull) {
  if (p.empty() || pos == 0 || p.size() > text.size()) return 0;
  uint64_t jmax = std::min<uint64_t>(pos - 1, text.size() - p.size());
  uint64_t jmin = window < pos ? pos - window : 0;
  for (uint64_t j = jmax + 1; j-- > jmin;) {
    if (std::equal(p.begin(), p.end(), text.begin() + static_cast<size_t>(j))) return pos - j;
  }
  return 0;
}

// Leftmost counterpart: the largest usable offset.
inline uint64_t naive_leftmost_before(std::span<const uint8_t> text, uint64_t pos,
                                      std::span<const uint8_t> p, uint64_t window = ~0ull) {
  if (p.empty() || pos == 0 || p.size() > text.size()) return 0;
  uint64_t jmax = std::min<uint64_t>(pos - 1, text.size() - p.size());
  uint64_t jmin = window < pos ? pos - window : 0;
  for (uint64_t j = jmin; j <= jmax; ++j) {
    if (std::equal(p.begin(), p.end(), text.begin() + static_cast<size_t>(j))) return pos - j;
  }
  return 0;
}

// Longest prefix of text[i..) that also occurs starting at some j < i
// (overlap past i allowed), with the smallest such j. (0, npos) when i == 0
// or nothing matches.
struct LpfResult {
  uint64_t length;
  uint64_t pos;
};

inline LpfResult naive_lpf(std::span<const uint8_t> text, uint64_t i) {
  uint64_t best = 0, bpos = npos;
  for (uint64_t j = 0; j < i; ++j) {
    uint64_t l = 0;
    while (i + l < text.size() && text[static_cast<size_t>(j + l)] == text[static_cast<size_t>(i + l)]) ++l;
    if (l > best) {
      best = l;
      bpos = j;
    }
  }
  return {best, bpos};
}

// For every prefix length m of text[i..) that occurs starting before i, the
// offset of the rightmost such occurrence, with its codeword cost under the
// given model. Ascending in m; stops at the first absent length.
struct NaiveSpfEntry {
  uint64_t length;
  uint64_t offset;
  unsigned cost_bits;
};

inline std::vector<NaiveSpfEntry> naive_spf(std::span<const uint8_t> text, uint64_t i,
                                            CostModel model) {
  std::vector<NaiveSpfEntry> out;
  for (uint64_t m = 1; i + m <= text.size(); ++m) {
    uint64_t d = naive_rightmost_before(text, i, text.subspan(static_cast<size_t>(i), static_cast<size_t>(m)));
    if (d == 0) break;
    out.push_back({m, d, bitlen(model, d)});
  }
  return out;
}

// Reference structure that answers rightmost occurrences from a single
// sliding suffix tree. After every push it re-walks the repeated suffix
// from the root one symbol at a time, stamping the occurrence on each node
// it passes; newly created leaves stamp their paths the same way. The
// stamps make answers exact, and the walk cost is what makes this a
// baseline: proportional to the repeated-suffix length per update, so runs
// of one symbol drive it quadratic while a layered index stays bounded.
//
// Reported occurrences are positions in the whole stream; with a window
// smaller than the input the rightmost occurrence may already have slid
// out, so exactness holds when the window covers the text.
struct RmstStep {
  uint64_t length;
  uint64_t ref;  // rightmost other occurrence of the repeated suffix, npos if length 0
};

class RmstBaseline {
 public:
  explicit RmstBaseline(uint64_t window) : tree_(window) {}

  RmstStep step(uint8_t symbol) {
    tree_.push(symbol);
    for (auto [node, start] : tree_.fresh_internal_) {
      occ(node) = static_cast<int64_t>(start);
      ++updates_;
    }
    for (uint64_t j : tree_.fresh_leaves_) stamp_path(j);

    const uint64_t len = tree_.lrs_len_;
    if (len == 0) return {0, npos};
    const uint64_t pos = tree_.front_ - len;
    int32_t v = tree_.root_;
    uint64_t depth = 0;
    for (;;) {
      if (depth == len) {  // locus at a node: the stamp is the previous occurrence
        int64_t prev = occ(v);
        occ(v) = static_cast<int64_t>(pos);
        ++updates_;
        return {len, static_cast<uint64_t>(prev)};
      }
      int32_t c = tree_.child(v, tree_.at(pos + depth));
      uint64_t el = tree_.edge_len(c);
      uint64_t take = std::min<uint64_t>(el, len - depth);
      for (uint64_t i = 0; i < take; ++i) {  // validate the path symbol by symbol
        if (tree_.at(tree_.nodes_[c].label_start + i) != tree_.at(pos + depth + i))
          throw std::logic_error("baseline walk diverged from the indexed path");
        ++updates_;
      }
      depth += take;
      if (take < el) {  // locus mid-edge: the subtree below is c's
        uint64_t prev = tree_.is_leaf(c) ? tree_.nodes_[c].leaf_start
                                         : static_cast<uint64_t>(occ(c));
        return {len, prev};
      }
      if (depth < len) {
        occ(c) = static_cast<int64_t>(pos);
        ++updates_;
      }
      v = c;
    }
  }

  uint64_t update_count() const { return updates_; }
  const SlidingWindowTree& tree() const { return tree_; }

 private:
  void stamp_path(uint64_t j) {
    int32_t v = tree_.root_;
    uint64_t depth = 0;
    for (;;) {
      int32_t c = tree_.child(v, tree_.at(j + depth));
      if (tree_.is_leaf(c)) return;  // reached the new leaf itself
      uint64_t el = tree_.edge_len(c);
      for (uint64_t i = 0; i < el; ++i) {
        if (tree_.at(tree_.nodes_[c].label_start + i) != tree_.at(j + depth + i))
          throw std::logic_error("baseline walk diverged from the indexed path");
        ++updates_;
      }
      depth += el;
      occ(c) = static_cast<int64_t>(j);
      ++updates_;
      v = c;
    }
  }

  // Rightmost-occurrence stamps, indexed by node id. Kept outside the tree
  // so its nodes stay lean. A recycled id may carry a stale stamp, which is
  // harmless: every fresh internal node is stamped before any read, and
  // leaves answer from leaf_start.
  int64_t& occ(int32_t v) {
    if (occ_.size() < tree_.nodes_.size()) occ_.resize(tree_.nodes_.size(), -1);
    return occ_[static_cast<size_t>(v)];
  }

  SlidingWindowTree tree_;
  std::vector<int64_t> occ_;
  uint64_t updates_ = 0;
};

inline std::vector<RmstStep> rmst_build_and_query(std::span<const uint8_t> text, uint64_t window,
                                                  uint64_t* update_count = nullptr) {
  RmstBaseline b(window);
  std::vector<RmstStep> out;
  out.reserve(text.size());
  for (uint8_t ch : text) out.push_back(b.step(ch));
  if (update_count) *update_count = b.update_count();
  return out;
}

}  // namespace mlst
