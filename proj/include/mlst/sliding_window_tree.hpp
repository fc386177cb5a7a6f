#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flat_map.hpp"
#include "huge_alloc.hpp"

namespace mlst {

// Online suffix tree over the tail of an append-only symbol stream.
//
// The tree always indexes exactly the suffixes of the current window
// T[window_start(), time()), whose length is capped at capacity() plus a
// caller-controlled extension. Symbols enter one at a time through push();
// when the window overflows, the oldest suffix is removed and the tree is
// repaired in place.
//
// Edge labels are (start, length) references into a shared append-only text
// buffer, so labels stay readable even when they point at symbols that have
// already left the window. Every position handed out by a query, however,
// is a leaf suffix start and therefore lies inside the window.
//
// push() is amortized O(1) (Ukkonen's cascade plus at most one eviction).
// find(p) costs O(|p|) to locate the pattern plus a walk to one leaf.
class SlidingWindowTree {
 public:
  static constexpr uint64_t npos = ~0ull;

  explicit SlidingWindowTree(uint64_t capacity,
                             std::shared_ptr<std::vector<uint8_t>> text = nullptr)
      : cap_(capacity), text_(text ? std::move(text) : std::make_shared<std::vector<uint8_t>>()) {
    if (cap_ == 0) throw std::invalid_argument("window capacity must be >= 1");
    root_ = alloc();
    act_node_ = root_;
  }

  void push(uint8_t symbol) {
    if (text_->size() == front_) {
      text_->push_back(symbol);
    } else {
      assert(text_->size() == front_ + 1 && (*text_)[front_] == symbol);
    }
    const uint64_t pos = front_;
    fresh_internal_.clear();
    fresh_leaves_.clear();
    assert(pending_ == -1);

    uint64_t cand = lrs_len_ + 1;  // trying suffix T[pos+1-cand .. pos]
    for (;;) {
      ++ops_;
      if (act_off_ == 0) {
        link_pending(act_node_);
        if (int32_t c = child(act_node_, symbol); c != -1) {
          act_child_ = c;
          act_pos_ = nodes_[c].label_start;
          act_off_ = 1;
          break;  // already present: longest repeated suffix grows
        }
        new_leaf(pos, pos + 1 - cand, act_node_);
      } else {
        if (at(nodes_[act_child_].label_start + act_off_) == symbol) {
          ++act_off_;
          break;
        }
        // split the edge, hang the new suffix off the split point
        int32_t u = alloc();
        Node& cn = nodes_[act_child_];
        nodes_[u].label_start = cn.label_start;
        nodes_[u].label_len = act_off_;
        nodes_[u].head_byte = cn.head_byte;
        replace_child(act_node_, act_child_, u);
        cn.label_start += act_off_;
        cn.head_byte = at(cn.label_start);
        if (!is_leaf(act_child_)) cn.label_len -= act_off_;
        attach(u, act_child_);
        link_pending(u);  // one level shallower on the same path: the link target
        pending_ = u;
        fresh_internal_.push_back({u, pos + 1 - cand});
        new_leaf(pos, pos + 1 - cand, u);
      }
      --cand;
      if (cand == 0) break;  // even the single symbol was new
      if (act_node_ == root_) {
        act_pos_ = pos + 1 - cand;
        act_off_ = cand - 1;
      } else {
        act_node_ = nodes_[act_node_].slink;
        act_depth_ -= 1;
        assert(act_node_ != -1);
      }
      act_child_ = -1;  // the jump rewrote the point; the cache is stale
      canonize();
      if (act_off_ == 0) link_pending(act_node_);
    }
    lrs_len_ = cand;
    canonize();
    if (act_off_ == 0) link_pending(act_node_);
    assert(pending_ == -1);

    ++front_;
    while (front_ - tail_ > cap_ + ext_) evict_oldest();
  }

  // Longest suffix of the consumed stream that also occurs starting earlier
  // inside the window: (length, start of one such earlier occurrence).
  // (0, npos) when no nonempty suffix repeats.
  std::pair<uint64_t, uint64_t> longest_repeated_suffix() const {
    if (lrs_len_ == 0) return {0, npos};
    int32_t v = act_off_ > 0 ? act_child_ : act_node_;
    while (!is_leaf(v)) {
      v = nodes_[v].first_child;
      ++ops_;
    }
    return {lrs_len_, nodes_[v].leaf_start};
  }

  // Start of some occurrence of `pattern` inside the window, or nullopt.
  // The empty pattern reports the current position.
  std::optional<uint64_t> find(std::span<const uint8_t> pattern) const {
    if (pattern.empty()) return front_;
    int32_t u = root_;
    size_t matched = 0;
    while (matched < pattern.size()) {
      int32_t c = child(u, pattern[matched]);
      if (c == -1) return std::nullopt;
      uint64_t el = edge_len(c);
      uint64_t take = std::min<uint64_t>(el, pattern.size() - matched);
      for (uint64_t i = 1; i < take; ++i) {
        ++ops_;
        if (at(nodes_[c].label_start + i) != pattern[matched + i]) return std::nullopt;
      }
      matched += take;
      if (matched == pattern.size()) {
        while (!is_leaf(c)) {
          c = nodes_[c].first_child;
          ++ops_;
        }
        return nodes_[c].leaf_start;
      }
      u = c;
    }
    return std::nullopt;  // unreachable
  }

  // Allows the window to exceed capacity by `extra` symbols; shrinking the
  // allowance evicts immediately.
  void set_extension(uint64_t extra) {
    ext_ = extra;
    while (front_ - tail_ > cap_ + ext_) evict_oldest();
  }

  // Warms the cache lines the next push(symbol) inspects: the active node's
  // neighborhood and, when the push will evict, the departing leaf's
  // surroundings. The leaf itself was warmed a push in advance (leaves_
  // evict in order), so reading its fields here is cheap and the lines they
  // point at get a full push of lead time. Several trees advancing in
  // lockstep call this up front so their misses overlap instead of
  // serializing.
  void prefetch(uint8_t symbol) const {
    const Node& an = nodes_[act_node_];  // usually resident: root or near it
    if (act_child_ != -1) {
      __builtin_prefetch(&nodes_[act_child_]);
      // a mid-edge break would update the child index under this key
      if (const void* s = cmap_.probe_address(ckey(act_node_, at(act_pos_))))
        __builtin_prefetch(s);
    } else if (const void* s = cmap_.probe_address(ckey(act_node_, symbol))) {
      __builtin_prefetch(s);
    }
    if (an.first_child != -1) __builtin_prefetch(&nodes_[an.first_child]);
    if (front_ - tail_ >= cap_ + ext_ && !leaves_.empty()) {
      const Node& lf = nodes_[leaves_.front()];
      __builtin_prefetch(&nodes_[lf.parent]);
      if (lf.prev_sibling != -1) __builtin_prefetch(&nodes_[lf.prev_sibling]);
      if (lf.next_sibling != -1) __builtin_prefetch(&nodes_[lf.next_sibling]);
      if (const void* s = cmap_.probe_address(ckey(lf.parent, lf.head_byte)))
        __builtin_prefetch(s);
      if (leaves_.size() > 1) __builtin_prefetch(&nodes_[leaves_[1]]);
    }
  }


  uint64_t capacity() const { return cap_; }
  uint64_t extension() const { return ext_; }
  uint64_t time() const { return front_; }
  uint64_t window_start() const { return tail_; }
  uint64_t window_length() const { return front_ - tail_; }
  size_t node_count() const { return live_; }
  uint64_t op_count() const { return ops_; }
  const std::shared_ptr<std::vector<uint8_t>>& text() const { return text_; }

 private:
  friend class RmstBaseline;

  static constexpr uint64_t open_label = ~0ull;

  // Kept lean: the pools see random access, so bytes per node are misses.
  // String depth lives in act_depth_ (only ever needed for the active
  // node), and the rightmost-tracking baseline keeps its per-node scratch
  // on the side. head_byte mirrors at(label_start) and is kept current by
  // every relabeling site, sparing the child-index updates a detour through
  // cold text.
  struct Node {
    uint64_t label_start = 0;
    uint64_t label_len = open_label;  // open for leaves
    uint64_t leaf_start = npos;       // suffix start; leaves only
    int32_t parent = -1;
    int32_t first_child = -1;
    int32_t next_sibling = -1;
    int32_t prev_sibling = -1;
    int32_t slink = -1;
    uint8_t head_byte = 0;  // leading symbol of the edge label
  };
  static_assert(sizeof(Node) == 48);

  uint8_t at(uint64_t i) const { return (*text_)[i]; }
  bool is_leaf(int32_t v) const { return nodes_[v].leaf_start != npos; }

  uint64_t edge_len(int32_t v) const {
    const Node& n = nodes_[v];
    return n.label_len == open_label ? text_->size() - n.label_start : n.label_len;
  }

  int32_t alloc() {
    int32_t id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
      nodes_[id] = Node{};
    } else {
      id = static_cast<int32_t>(nodes_.size());
      nodes_.emplace_back();
    }
    ++live_;
    return id;
  }

  void release(int32_t v) {
    free_.push_back(v);
    --live_;
  }

  // Children are reachable two ways: a doubly linked sibling list for
  // enumeration ("any child", "the only child") and a flat map keyed by
  // (parent, leading edge symbol) for the by-symbol lookups the insertion
  // cascade lives on. attach/detach/replace_child keep both in sync and
  // read the leading symbol from the child's label, so callers must finish
  // list surgery before relabeling an edge.
  static uint64_t ckey(int32_t u, uint8_t first) {
    return (uint64_t(uint32_t(u)) << 8) | first;
  }

  int32_t child(int32_t u, uint8_t first) const { return cmap_.get(ckey(u, first)); }

  void attach(int32_t parent, int32_t c) {
    Node& cn = nodes_[c];
    assert(at(cn.label_start) == cn.head_byte);
    cn.parent = parent;
    cn.prev_sibling = -1;
    cn.next_sibling = nodes_[parent].first_child;
    if (cn.next_sibling != -1) nodes_[cn.next_sibling].prev_sibling = c;
    nodes_[parent].first_child = c;
    cmap_.put(ckey(parent, cn.head_byte), c);
  }

  void detach(int32_t parent, int32_t c) {
    Node& cn = nodes_[c];
    assert(at(cn.label_start) == cn.head_byte);
    if (cn.prev_sibling == -1)
      nodes_[parent].first_child = cn.next_sibling;
    else
      nodes_[cn.prev_sibling].next_sibling = cn.next_sibling;
    if (cn.next_sibling != -1) nodes_[cn.next_sibling].prev_sibling = cn.prev_sibling;
    cn.prev_sibling = cn.next_sibling = -1;
    cn.parent = -1;
    cmap_.erase(ckey(parent, cn.head_byte));
  }

  // Both labels must begin with the same symbol at call time.
  void replace_child(int32_t parent, int32_t oldc, int32_t newc) {
    Node& on = nodes_[oldc];
    Node& nn = nodes_[newc];
    assert(on.head_byte == nn.head_byte);
    nn.prev_sibling = on.prev_sibling;
    nn.next_sibling = on.next_sibling;
    if (nn.prev_sibling == -1)
      nodes_[parent].first_child = newc;
    else
      nodes_[nn.prev_sibling].next_sibling = newc;
    if (nn.next_sibling != -1) nodes_[nn.next_sibling].prev_sibling = newc;
    nn.parent = parent;
    on.prev_sibling = on.next_sibling = -1;
    on.parent = -1;
    cmap_.put(ckey(parent, on.head_byte), newc);
  }

  int32_t new_leaf(uint64_t pos, uint64_t suffix_start, int32_t parent) {
    int32_t lf = alloc();
    nodes_[lf].label_start = pos;
    nodes_[lf].label_len = open_label;
    nodes_[lf].leaf_start = suffix_start;
    nodes_[lf].head_byte = at(pos);
    attach(parent, lf);
    leaves_.push_back(lf);
    fresh_leaves_.push_back(suffix_start);
    return lf;
  }

  void link_pending(int32_t target) {
    if (pending_ != -1) {
      nodes_[pending_].slink = target;
      pending_ = -1;
    }
  }

  // Walks the active point down so that 0 <= act_off_ < edge length of the
  // child it sits on. act_child_ caches that child (-1 when the point sits
  // on a node or was just rewritten by a jump); a still-valid cache skips
  // the child lookup, which is the common case after a mid-edge step. On
  // landing, act_pos_ re-anchors at the child's own label: the walk text it
  // arrived with spells the same symbols but may belong to an occurrence
  // that diverges past the landing point, and later steps read onward from
  // act_pos_.
  void canonize() {
    while (act_off_ > 0) {
      int32_t c = act_child_ != -1 ? act_child_ : child(act_node_, at(act_pos_));
      assert(c != -1);
      uint64_t el = edge_len(c);
      if (act_off_ < el) {
        act_child_ = c;
        act_pos_ = nodes_[c].label_start;
        return;
      }
      act_node_ = c;
      act_depth_ += el;
      act_pos_ += el;
      act_off_ -= el;
      act_child_ = -1;
      ++ops_;
    }
    act_child_ = -1;
  }

  void evict_oldest() {
    ++ops_;
    int32_t lf = leaves_.front();
    assert(is_leaf(lf) && nodes_[lf].leaf_start == tail_);

    if (act_off_ > 0 && act_child_ == lf) {
      // The repeated-suffix locus sits on the departing leaf's edge: its
      // only other occurrence starts exactly at the window head. Recycle
      // the leaf as the suffix one position later and shorten the locus;
      // the shortened suffix is guaranteed to still repeat in the window.
      int32_t u = act_node_;
      assert(nodes_[lf].parent == u);
      const uint64_t d = lrs_len_;
      const uint64_t ns = front_ - d;
      // same leading symbol (both occurrences agree past the split point),
      // so head_byte and the child-map entry for (u, symbol) stay correct
      assert(at(ns + act_depth_) == nodes_[lf].head_byte);
      nodes_[lf].label_start = ns + act_depth_;
      nodes_[lf].leaf_start = ns;
      leaves_.pop_front();
      leaves_.push_back(lf);
      lrs_len_ = d - 1;
      if (u == root_) {
        act_pos_ = ns + 1;
        act_off_ = lrs_len_;
      } else {
        act_node_ = nodes_[u].slink;
        act_depth_ -= 1;
        assert(act_node_ != -1);
      }
      act_child_ = -1;
      canonize();
    } else {
      int32_t u = nodes_[lf].parent;
      detach(u, lf);
      release(lf);
      leaves_.pop_front();
      if (u != root_ && nodes_[u].first_child != -1 &&
          nodes_[nodes_[u].first_child].next_sibling == -1) {
        merge_unary(u);
      }
    }
    ++tail_;
  }

  // Folds a non-root internal node with a single child into that child's
  // edge. The active point may reference the dying node; re-express it on
  // the merged edge first. No suffix link can point at a unary node.
  // detach() keys off the child's old leading symbol, so it must run
  // before the relabel; replace_child() then sees the absorbed label.
  void merge_unary(int32_t u) {
    int32_t c = nodes_[u].first_child;
    int32_t w = nodes_[u].parent;
    const uint64_t ul = nodes_[u].label_len;
    if (act_node_ == u) {
      act_node_ = w;
      act_depth_ -= ul;
      act_pos_ = nodes_[c].label_start - ul;
      act_off_ += ul;
      act_child_ = c;
    } else if (act_child_ == u) {
      act_child_ = c;
      act_pos_ = nodes_[c].label_start - ul;
    }
    detach(u, c);
    nodes_[c].label_start -= ul;
    nodes_[c].head_byte = nodes_[u].head_byte;
    if (!is_leaf(c)) nodes_[c].label_len += ul;
    replace_child(w, u, c);
    release(u);
  }

  uint64_t cap_;
  uint64_t ext_ = 0;
  std::shared_ptr<std::vector<uint8_t>> text_;
  std::vector<Node, HugePageAllocator<Node>> nodes_;
  std::vector<int32_t> free_;
  std::deque<int32_t> leaves_;  // in increasing suffix-start order
  FlatMap cmap_;                // (node, leading symbol) -> child
  size_t live_ = 0;

  int32_t root_ = -1;
  int32_t act_node_ = -1;
  int32_t act_child_ = -1;
  uint64_t act_pos_ = 0;    // global anchor of the partial edge text
  uint64_t act_off_ = 0;
  uint64_t act_depth_ = 0;  // string depth of act_node_
  uint64_t lrs_len_ = 0;
  int32_t pending_ = -1;  // split node awaiting its suffix link

  uint64_t front_ = 0;  // symbols consumed
  uint64_t tail_ = 0;   // window start
  mutable uint64_t ops_ = 0;

  // split nodes created by the latest push, with the inserting suffix start,
  // and the suffix starts of leaves added by the latest push
  std::vector<std::pair<int32_t, uint64_t>> fresh_internal_;
  std::vector<uint64_t> fresh_leaves_;
};

}  // namespace mlst
