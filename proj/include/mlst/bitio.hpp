#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mlst {

// MSB-first bit sink backed by a growing byte buffer. The final byte is
// zero-padded.
class BitWriter {
 public:
  void put(unsigned bit) {
    if (nbits_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<uint8_t>(0x80u >> (nbits_ % 8));
    ++nbits_;
  }

  // writes the low `count` bits of `value`, most significant first
  void put_bits(uint64_t value, unsigned count) {
    for (unsigned i = count; i-- > 0;) put(static_cast<unsigned>(value >> i) & 1u);
  }

  size_t bit_count() const { return nbits_; }
  const std::vector<uint8_t>& bytes() const { return bytes_; }

  std::vector<uint8_t> take() {
    nbits_ = 0;
    return std::move(bytes_);
  }

  // codeword as "0"/"1" text, for tables and debugging
  std::string to_string() const {
    std::string s;
    s.reserve(nbits_);
    for (size_t i = 0; i < nbits_; ++i)
      s += ((bytes_[i >> 3] >> (7 - (i & 7))) & 1u) ? '1' : '0';
    return s;
  }

 private:
  std::vector<uint8_t> bytes_;
  size_t nbits_ = 0;
};

// MSB-first reader over a fixed byte range. Reading past the end throws
// std::out_of_range; callers that need a softer failure check bits_left().
class BitReader {
 public:
  explicit BitReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  unsigned get() {
    if (pos_ >= bytes_.size() * 8) throw std::out_of_range("bit stream exhausted");
    unsigned bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return bit;
  }

  uint64_t get_bits(unsigned count) {
    uint64_t v = 0;
    while (count-- > 0) v = (v << 1) | get();
    return v;
  }

  size_t bit_pos() const { return pos_; }
  size_t byte_pos() const { return pos_ >> 3; }
  size_t bits_left() const { return bytes_.size() * 8 - pos_; }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

}  // namespace mlst
