#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitio.hpp"
#include "cost_model.hpp"
#include "multilayer_index.hpp"
#include "oracle.hpp"

namespace mlst {

inline constexpr uint64_t min_match = 2;

struct Token {
  uint64_t length = 0;  // 0 for a literal
  uint64_t offset = 0;
  uint8_t literal = 0;

  bool is_match() const { return length != 0; }
  static Token match(uint64_t len, uint64_t off) { return {len, off, 0}; }
  static Token lit(uint8_t b) { return {0, 0, b}; }
  friend bool operator==(const Token&, const Token&) = default;
};

// Greedy factorization: at each anchor take the longest prefix the index
// can reach, if it is at least min_match long, else one literal. The index
// must be fresh; symbols are fed as lookahead until the match stops
// growing, then the cursor jumps to the next anchor.
inline std::vector<Token> parse_greedy(MultilayerIndex& ix, std::span<const uint8_t> text) {
  if (ix.time() != 0) throw std::invalid_argument("parse_greedy: index already consumed input");
  std::vector<Token> out;
  const uint64_t n = text.size();
  uint64_t p = 0;
  while (p < n) {
    while (ix.time() < n) {
      ix.extend(text[static_cast<size_t>(ix.time())]);
      if (ix.rep_lpf().length < ix.time() - ix.cursor()) break;
    }
    MatchRef m = ix.rep_lpf();
    if (m.length >= min_match) {
      out.push_back(Token::match(m.length, m.offset));
      p += m.length;
    } else {
      out.push_back(Token::lit(text[static_cast<size_t>(p)]));
      ++p;
    }
    ix.rebase(p);
  }
  return out;
}

// Container: 4-byte magic, version, cost-model id, window log, and the
// original length as little-endian u64, then the token bitstream. Tokens
// are flag-prefixed: 0 + 8 raw bits for a literal, 1 + gamma(length-1) +
// gamma(offset) for a match. Offsets are always gamma coded in the stream;
// the model id records how they were priced during parsing.
inline constexpr char container_magic[4] = {'M', 'L', 'S', 'T'};
inline constexpr uint8_t container_version = 1;
inline constexpr size_t header_size = 15;
inline constexpr unsigned max_window_log = 30;

struct ContainerInfo {
  CostModel model;
  unsigned window_log;
  uint64_t original_length;
};

class CorruptStream : public std::runtime_error {
 public:
  CorruptStream(const std::string& what, size_t byte_offset)
      : std::runtime_error(what + " at byte " + std::to_string(byte_offset)),
        byte_offset(byte_offset) {}
  size_t byte_offset;
};

inline std::vector<uint8_t> encode(std::span<const Token> tokens, CostModel model,
                                   unsigned window_log) {
  if (window_log > max_window_log) throw std::invalid_argument("encode: window log out of range");
  const uint64_t window = uint64_t(1) << window_log;
  BitWriter bw;
  uint64_t produced = 0;
  for (const Token& t : tokens) {
    if (t.is_match()) {
      if (t.length < min_match || t.offset == 0 || t.offset > produced || t.offset > window)
        throw std::invalid_argument("encode: invalid match token");
      bw.put(1);
      write_gamma(bw, t.length - 1);
      write_gamma(bw, t.offset);
      produced += t.length;
    } else {
      bw.put(0);
      bw.put_bits(t.literal, 8);
      ++produced;
    }
  }
  std::vector<uint8_t> out;
  out.reserve(header_size + bw.bytes().size());
  out.insert(out.end(), container_magic, container_magic + 4);
  out.push_back(container_version);
  out.push_back(static_cast<uint8_t>(model));
  out.push_back(static_cast<uint8_t>(window_log));
  for (unsigned i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(produced >> (8 * i)));
  const auto& payload = bw.bytes();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

inline ContainerInfo read_header(std::span<const uint8_t> bytes) {
  if (bytes.size() < header_size) throw CorruptStream("truncated header", bytes.size());
  for (size_t i = 0; i < 4; ++i) {
    if (bytes[i] != static_cast<uint8_t>(container_magic[i])) throw CorruptStream("bad magic", i);
  }
  if (bytes[4] != container_version) throw CorruptStream("unsupported version", 4);
  if (bytes[5] != 1 && bytes[5] != 2) throw CorruptStream("unknown cost model", 5);
  if (bytes[6] > max_window_log) throw CorruptStream("window log out of range", 6);
  uint64_t n = 0;
  for (unsigned i = 0; i < 8; ++i) n |= static_cast<uint64_t>(bytes[7 + i]) << (8 * i);
  return {static_cast<CostModel>(bytes[5]), bytes[6], n};
}

inline std::vector<uint8_t> decode(std::span<const uint8_t> bytes) {
  const ContainerInfo info = read_header(bytes);
  std::vector<uint8_t> out;
  out.reserve(static_cast<size_t>(info.original_length));
  BitReader br(bytes.subspan(header_size));
  const uint64_t window = uint64_t(1) << info.window_log;
  try {
    while (out.size() < info.original_length) {
      if (br.get()) {
        const uint64_t len = read_gamma(br) + 1;
        const uint64_t off = read_gamma(br);
        if (off > out.size())
          throw CorruptStream("match offset " + std::to_string(off) +
                                  " exceeds produced output (position " +
                                  std::to_string(out.size()) + ")",
                              header_size + br.byte_pos());
        if (off > window)
          throw CorruptStream("match offset beyond window", header_size + br.byte_pos());
        if (out.size() + len > info.original_length)
          throw CorruptStream("output overrun", header_size + br.byte_pos());
        size_t src = out.size() - static_cast<size_t>(off);
        for (uint64_t i = 0; i < len; ++i) out.push_back(out[src++]);  // may overlap itself
      } else {
        out.push_back(static_cast<uint8_t>(br.get_bits(8)));
      }
    }
  } catch (const std::out_of_range&) {
    throw CorruptStream("truncated stream", header_size + br.byte_pos());
  }
  return out;
}

inline std::vector<uint8_t> compress(std::span<const uint8_t> text,
                                     CostModel model = CostModel::gamma,
                                     unsigned window_log = 20) {
  if (window_log > max_window_log) throw std::invalid_argument("compress: window log out of range");
  MultilayerIndex ix(model, uint64_t(1) << window_log);
  auto tokens = parse_greedy(ix, text);
  return encode(tokens, model, window_log);
}

inline std::vector<uint8_t> decompress(std::span<const uint8_t> bytes) { return decode(bytes); }

// Prices the offsets of one greedy parse three ways. The parse (and with it
// every match length) is strategy-independent; only the occurrence chosen
// for each match differs:
//   rep               what the index reported
//   rightmost_oracle  rightmost in-window occurrence, recomputed naively
//   leftmost          leftmost in-window occurrence (the largest offset)
enum class OffsetStrategy { rep, rightmost_oracle, leftmost };

struct BillReport {
  uint64_t offset_bits = 0;
  uint64_t match_count = 0;
  uint64_t literal_count = 0;
};

inline BillReport offset_bill(std::span<const uint8_t> text, OffsetStrategy strategy,
                              CostModel model, uint64_t max_window) {
  MultilayerIndex ix(model, max_window);
  auto tokens = parse_greedy(ix, text);
  BillReport r;
  uint64_t p = 0;
  for (const Token& t : tokens) {
    if (!t.is_match()) {
      ++r.literal_count;
      ++p;
      continue;
    }
    ++r.match_count;
    uint64_t d = t.offset;
    auto prefix = text.subspan(static_cast<size_t>(p), static_cast<size_t>(t.length));
    if (strategy == OffsetStrategy::rightmost_oracle)
      d = naive_rightmost_before(text, p, prefix, max_window);
    else if (strategy == OffsetStrategy::leftmost)
      d = naive_leftmost_before(text, p, prefix, max_window);
    if (d == 0) throw std::logic_error("offset_bill: match without occurrence");
    r.offset_bits += bitlen(model, d);
    p += t.length;
  }
  return r;
}

}  // namespace mlst
