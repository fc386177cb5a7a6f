#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bitio.hpp"

namespace mlst {

// How back-offsets are priced. `gamma` is Elias gamma (self-delimiting);
// `binary` is the plain MSB-anchored binary length, usable when the length
// is known from context. Both are monotone in the binary magnitude of the
// offset, so they induce the same dyadic layer structure below.
enum class CostModel : uint8_t {
  gamma = 1,
  binary = 2,
};

// codeword length in bits for an offset x >= 1
inline unsigned bitlen(CostModel model, uint64_t x) {
  if (x == 0) throw std::invalid_argument("bitlen: offset must be >= 1");
  auto w = static_cast<unsigned>(std::bit_width(x));  // floor(log2 x) + 1
  return model == CostModel::gamma ? 2 * w - 1 : w;
}

// Elias gamma: floor(log2 x) zeros, then x in binary (MSB first)
inline void write_gamma(BitWriter& bw, uint64_t x) {
  if (x == 0) throw std::invalid_argument("write_gamma: value must be >= 1");
  auto w = static_cast<unsigned>(std::bit_width(x));
  for (unsigned i = 1; i < w; ++i) bw.put(0);
  bw.put_bits(x, w);
}

inline uint64_t read_gamma(BitReader& br) {
  unsigned zeros = 0;
  while (br.get() == 0) ++zeros;
  uint64_t x = 1;
  while (zeros-- > 0) x = (x << 1) | br.get();
  return x;
}

// The distinct codeword lengths that offsets 1..n can take, together with
// the largest offset reachable at each length. sizes is strictly increasing
// and ends at n; bit_costs is the parallel list of codeword lengths.
struct LayerSizes {
  std::vector<uint64_t> sizes;
  std::vector<unsigned> bit_costs;
  size_t count() const { return sizes.size(); }
};

inline LayerSizes layer_sizes(CostModel model, uint64_t n) {
  if (n == 0) throw std::invalid_argument("layer_sizes: n must be >= 1");
  LayerSizes ls;
  uint64_t lo = 1;
  while (lo <= n) {
    unsigned cost = bitlen(model, lo);
    // largest j in [lo, n] with the same codeword length; bitlen is
    // non-decreasing, so binary search works
    uint64_t a = lo, b = n;
    while (a < b) {
      uint64_t mid = a + (b - a + 1) / 2;
      if (bitlen(model, mid) == cost)
        a = mid;
      else
        b = mid - 1;
    }
    ls.sizes.push_back(a);
    ls.bit_costs.push_back(cost);
    lo = a + 1;
  }
  return ls;
}

// Half-open-from-below offset range (lo, hi] priced at bit_costs[x].
// x is a 0-based layer index.
struct ClassInterval {
  uint64_t lo;  // exclusive
  uint64_t hi;  // inclusive
};

inline ClassInterval class_interval(const LayerSizes& ls, size_t x) {
  if (x >= ls.sizes.size()) throw std::out_of_range("class_interval: no such layer");
  return {x == 0 ? 0 : ls.sizes[x - 1], ls.sizes[x]};
}

// Checks sw_i >= k * sw_(i-1) for 1-based layers i in [max(k_hat,1), s-1],
// taking sw_0 (the window below the smallest layer) as 1. With k_hat >= 2
// this is the usual pairwise geometric-growth check over real layers.
inline bool growth_property_holds(const LayerSizes& ls, uint64_t k, uint64_t k_hat) {
  const size_t s = ls.sizes.size();
  const size_t first = k_hat < 1 ? 1 : static_cast<size_t>(k_hat);
  for (size_t i = first; i < s; ++i) {
    uint64_t prev = i >= 2 ? ls.sizes[i - 2] : 1;
    if (ls.sizes[i - 1] < k * prev) return false;
  }
  return true;
}

}  // namespace mlst
