#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

// Brute-force reference helpers shared by the test binaries. Everything here
// favors being obviously correct over being fast.
namespace testutil {

inline std::vector<uint8_t> bytes(std::string_view s) {
  return std::vector<uint8_t>(s.begin(), s.end());
}

// Alphabets up to 26 map onto 'a'..; larger ones use raw byte values.
inline std::vector<uint8_t> random_text(std::mt19937_64& rng, size_t len, unsigned alphabet) {
  std::vector<uint8_t> t(len);
  std::uniform_int_distribution<unsigned> d(0, alphabet - 1);
  for (auto& c : t) {
    unsigned v = d(rng);
    c = static_cast<uint8_t>(alphabet <= 26 ? 'a' + v : v);
  }
  return t;
}

// Longest suffix of t[0..i) that also starts at some j in [tail, i - len),
// with the rightmost such j; (0, ~0) when no nonempty suffix repeats.
inline std::pair<uint64_t, uint64_t> naive_lrs_rightmost(std::span<const uint8_t> t, uint64_t i,
                                                         uint64_t tail) {
  const uint64_t w = i - tail;
  for (uint64_t len = w == 0 ? 0 : w - 1; len > 0; --len) {
    const uint64_t suf = i - len;
    for (uint64_t j = suf; j-- > tail;) {
      if (std::equal(t.begin() + suf, t.begin() + i, t.begin() + j)) return {len, j};
    }
  }
  return {0, ~0ull};
}

// One parse anchor, brute force: for every prefix length m of t[i..) that
// occurs starting in [i - window, i) (the copy may overlap past i), the
// offset of the rightmost such occurrence. rightmost[m - 1] holds it;
// lpf is the largest covered m.
struct AnchorScan {
  uint64_t lpf = 0;
  std::vector<uint64_t> rightmost;
};

inline AnchorScan scan_anchor(std::span<const uint8_t> t, uint64_t i, uint64_t window) {
  AnchorScan s;
  const uint64_t jmin = window < i ? i - window : 0;
  for (uint64_t j = i; j-- > jmin;) {
    uint64_t l = 0;
    while (i + l < t.size() && t[j + l] == t[i + l]) ++l;
    if (l > s.rightmost.size()) s.rightmost.resize(l, 0);
    for (uint64_t m = l; m >= 1; --m) {
      if (s.rightmost[m - 1]) break;  // shorter prefixes already have a closer start
      s.rightmost[m - 1] = i - j;
    }
  }
  s.lpf = s.rightmost.size();
  return s;
}

}  // namespace testutil
