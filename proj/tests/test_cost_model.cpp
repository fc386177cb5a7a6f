#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <mlst/cost_model.hpp>

using mlst::BitReader;
using mlst::BitWriter;
using mlst::bitlen;
using mlst::class_interval;
using mlst::CostModel;
using mlst::layer_sizes;

namespace {

std::string gamma_string(uint64_t x) {
  BitWriter bw;
  mlst::write_gamma(bw, x);
  return bw.to_string();
}

}  // namespace

TEST_CASE("gamma codewords for 1..18 match the classic table") {
  const char* want[] = {"1",         "010",       "011",       "00100",     "00101",
                        "00110",     "00111",     "0001000",   "0001001",   "0001010",
                        "0001011",   "0001100",   "0001101",   "0001110",   "0001111",
                        "000010000", "000010001", "000010010"};
  for (uint64_t x = 1; x <= 18; ++x) {
    CAPTURE(x);
    std::string code = want[x - 1];
    CHECK(gamma_string(x) == code);
    CHECK(bitlen(CostModel::gamma, x) == code.size());
  }
}

TEST_CASE("codeword lengths at the class boundaries") {
  CHECK(bitlen(CostModel::gamma, 1) == 1);
  CHECK(bitlen(CostModel::gamma, 2) == 3);
  CHECK(bitlen(CostModel::gamma, 3) == 3);
  CHECK(bitlen(CostModel::gamma, 4) == 5);
  CHECK(bitlen(CostModel::gamma, 7) == 5);
  CHECK(bitlen(CostModel::gamma, 8) == 7);
  CHECK(bitlen(CostModel::gamma, 15) == 7);
  CHECK(bitlen(CostModel::gamma, 16) == 9);
  CHECK(bitlen(CostModel::gamma, 18) == 9);
  CHECK(bitlen(CostModel::binary, 1) == 1);
  CHECK(bitlen(CostModel::binary, 2) == 2);
  CHECK(bitlen(CostModel::binary, 3) == 2);
  CHECK(bitlen(CostModel::binary, 4) == 3);
  CHECK(bitlen(CostModel::binary, 18) == 5);
  CHECK_THROWS_AS(bitlen(CostModel::gamma, 0), std::invalid_argument);
  CHECK_THROWS_AS(bitlen(CostModel::binary, 0), std::invalid_argument);
}

TEST_CASE("bit lengths are monotone in the offset") {
  for (CostModel m : {CostModel::gamma, CostModel::binary}) {
    unsigned prev = 1;
    for (uint64_t x = 1; x <= (uint64_t(1) << 16); ++x) {
      unsigned b = bitlen(m, x);
      if (b < prev) {
        CAPTURE(x);
        REQUIRE(b >= prev);
      }
      prev = b;
    }
  }
}

TEST_CASE("gamma decoding consumes exactly one codeword") {
  const std::vector<uint8_t> nine{0b00010010};  // gamma(9) plus one pad bit
  BitReader br(nine);
  CHECK(mlst::read_gamma(br) == 9);
  CHECK(br.bit_pos() == 7);

  BitWriter bw;
  bw.put_bits(0b010, 3);
  bw.put(1);
  auto two_then_one = bw.take();
  BitReader br2(two_then_one);
  CHECK(mlst::read_gamma(br2) == 2);
  CHECK(mlst::read_gamma(br2) == 1);

  const std::vector<uint8_t> cut{0b00000000};  // run of zeros, no payload
  BitReader br3(cut);
  CHECK_THROWS_AS(mlst::read_gamma(br3), std::out_of_range);
}

TEST_CASE("gamma round-trips with the advertised length") {
  std::vector<uint64_t> xs;
  for (uint64_t x = 1; x <= (uint64_t(1) << 20); ++x) xs.push_back(x);
  for (unsigned b = 21; b <= 40; ++b) {
    xs.push_back((uint64_t(1) << b) - 1);
    xs.push_back(uint64_t(1) << b);
    xs.push_back((uint64_t(1) << b) + 1);
  }
  BitWriter bw;
  for (uint64_t x : xs) mlst::write_gamma(bw, x);
  auto stream = bw.take();
  BitReader br(stream);
  for (uint64_t x : xs) {
    size_t before = br.bit_pos();
    uint64_t got = mlst::read_gamma(br);
    size_t used = br.bit_pos() - before;
    if (got != x || used != bitlen(CostModel::gamma, x)) {
      CAPTURE(x);
      REQUIRE(got == x);
      REQUIRE(used == bitlen(CostModel::gamma, x));
    }
  }
  CHECK(br.bits_left() < 8);
  CHECK_THROWS_AS(mlst::write_gamma(bw, 0), std::invalid_argument);
}

TEST_CASE("layer sizes enumerate the codeword-length classes") {
  auto g18 = layer_sizes(CostModel::gamma, 18);
  CHECK(g18.sizes == std::vector<uint64_t>{1, 3, 7, 15, 18});
  CHECK(g18.bit_costs == std::vector<unsigned>{1, 3, 5, 7, 9});

  auto g6 = layer_sizes(CostModel::gamma, 6);
  CHECK(g6.sizes == std::vector<uint64_t>{1, 3, 6});
  CHECK(g6.bit_costs == std::vector<unsigned>{1, 3, 5});

  auto g1 = layer_sizes(CostModel::gamma, 1);
  CHECK(g1.sizes == std::vector<uint64_t>{1});
  CHECK(g1.bit_costs == std::vector<unsigned>{1});

  auto b18 = layer_sizes(CostModel::binary, 18);
  CHECK(b18.sizes == std::vector<uint64_t>{1, 3, 7, 15, 18});
  CHECK(b18.bit_costs == std::vector<unsigned>{1, 2, 3, 4, 5});

  CHECK_THROWS_AS(layer_sizes(CostModel::gamma, 0), std::invalid_argument);
}

TEST_CASE("class intervals partition the offset range") {
  auto g18 = layer_sizes(CostModel::gamma, 18);
  CHECK(class_interval(g18, 0).lo == 0);
  CHECK(class_interval(g18, 0).hi == 1);
  CHECK(class_interval(g18, 2).lo == 3);
  CHECK(class_interval(g18, 2).hi == 7);
  CHECK(class_interval(g18, 4).lo == 15);
  CHECK(class_interval(g18, 4).hi == 18);
  CHECK_THROWS_AS(class_interval(g18, 5), std::out_of_range);

  for (CostModel m : {CostModel::gamma, CostModel::binary}) {
    for (uint64_t n : {uint64_t(1), uint64_t(2), uint64_t(3), uint64_t(100), uint64_t(65535),
                       uint64_t(65536)}) {
      auto ls = layer_sizes(m, n);
      uint64_t expect_lo = 0;
      for (size_t x = 0; x < ls.count(); ++x) {
        auto [lo, hi] = class_interval(ls, x);
        REQUIRE(lo == expect_lo);
        REQUIRE(hi > lo);
        REQUIRE(bitlen(m, lo + 1) == ls.bit_costs[x]);
        REQUIRE(bitlen(m, hi) == ls.bit_costs[x]);
        if (x + 1 < ls.count()) REQUIRE(ls.bit_costs[x] < ls.bit_costs[x + 1]);
        expect_lo = hi;
      }
      REQUIRE(expect_lo == n);
    }
  }

  // bit length is constant inside every class, checked densely once
  auto big = layer_sizes(CostModel::gamma, uint64_t(1) << 16);
  size_t cls = 0;
  for (uint64_t d = 1; d <= (uint64_t(1) << 16); ++d) {
    if (d > big.sizes[cls]) ++cls;
    if (bitlen(CostModel::gamma, d) != big.bit_costs[cls]) {
      CAPTURE(d);
      REQUIRE(bitlen(CostModel::gamma, d) == big.bit_costs[cls]);
    }
  }
}

TEST_CASE("window growth check") {
  auto g18 = layer_sizes(CostModel::gamma, 18);
  CHECK(growth_property_holds(g18, 2, 2));
  CHECK_FALSE(growth_property_holds(g18, 3, 2));
  CHECK_FALSE(growth_property_holds(g18, 2, 1));  // the bottom window is too small for k=2

  auto g6 = layer_sizes(CostModel::gamma, 6);
  CHECK(growth_property_holds(g6, 2, 2));

  auto g1 = layer_sizes(CostModel::gamma, 1);
  CHECK(growth_property_holds(g1, 2, 2));  // nothing to compare
}
