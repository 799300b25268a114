// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "packconv/errors.hpp"
#include "packconv/oracle.hpp"
#include "packconv/packing.hpp"
#include "packconv/params.hpp"
#include "packconv/random.hpp"
#include "support/generators.hpp"

namespace packconv {
namespace {

using testing::Fill;

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected packconv::Error";
  return Errc::invalid_argument;
}

QuantSeq useq(std::vector<std::int64_t> v, int bits = 4) { return {std::move(v), bits, false}; }
QuantSeq sseq(std::vector<std::int64_t> v, int bits = 4) { return {std::move(v), bits, true}; }

PackedWord pack(const QuantSeq& s, int slice, int width) {
  return s.is_signed ? pack_signed(s, slice, width) : pack_unsigned(s, slice, width);
}

TEST(PackUnsigned, Examples) {
  EXPECT_EQ(pack_unsigned(useq({0, 0, 0}), 10, 32).bits(), 0u);
  EXPECT_EQ(pack_unsigned(useq({3, 5, 7}), 10, 32).bits(), 7345155u);  // 3 + 5*2^10 + 7*2^20
  EXPECT_EQ(pack_unsigned(useq({15}), 10, 32).bits(), 15u);
  EXPECT_EQ(pack_unsigned(useq({15}), 10, 32).width(), 32);
}

TEST(PackUnsigned, Errors) {
  // 4 + 3 * 10 = 34 bits > 32
  EXPECT_EQ(error_code([] { pack_unsigned(useq({1, 1, 1, 1}), 10, 32); }), Errc::overflow);
  EXPECT_EQ(error_code([] { pack_unsigned(useq({16}), 10, 32); }), Errc::range);
  EXPECT_EQ(error_code([] { pack_unsigned(useq({-1}), 10, 32); }), Errc::range);
}

TEST(PackSigned, Examples) {
  // slice0 = 1023 (-1), slice1 = 2 - 1 = 1
  const PackedWord a = pack_signed(sseq({-1, 2}), 10, 32);
  EXPECT_EQ(a.bits(), 2047u);
  EXPECT_EQ(a.to_integer(), -1 + 2 * 1024);

  EXPECT_EQ(pack_signed(sseq({5, 3}), 10, 32).bits(), 3077u);

  // The low slice is the 10-bit two's complement of -8; the word carries
  // the sign extension above it.
  const PackedWord c = pack_signed(sseq({-8}), 10, 32);
  EXPECT_EQ(c.field(0, 10), 1016u);
  EXPECT_EQ(c.to_integer(), -8);
  EXPECT_EQ(c.bits(), (u128{1} << 32) - 8);
}

TEST(PackSigned, SliceFieldsFollowBorrowRule) {
  const QuantSeq s = sseq({-3, -8, 7, 0, -1});
  const PackedWord w = pack_signed(s, 9, 64);
  std::int64_t borrow = 0;
  for (int n = 0; n < 4; ++n) {
    const std::uint64_t expected =
        static_cast<std::uint64_t>(s.values[static_cast<std::size_t>(n)] - borrow) & 0x1ff;
    EXPECT_EQ(w.field(9 * n, 9), expected) << "slice " << n;
    borrow = static_cast<std::int64_t>(expected >> 8);
  }
}

TEST(PackSigned, Errors) {
  EXPECT_EQ(error_code([] { pack_signed(sseq({-9}), 10, 32); }), Errc::range);
  // slices must leave room for the borrow: S >= bitwidth + 1
  EXPECT_EQ(error_code([] { pack_signed(sseq({1, 1}), 4, 32); }), Errc::range);
  // 4 + 2*14 = 32 fits the rule of thumb, but all -8 needs a 5-bit top slice
  EXPECT_EQ(error_code([] { pack_signed(sseq({-8, -8, -8}), 14, 32); }), Errc::overflow);
  EXPECT_NO_THROW(pack_signed(sseq({-8, -8, -8}), 14, 33));
}

TEST(PackSigned, PolynomialValueIdentity) {
  Sampler rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const int bits = static_cast<int>(rng.uniform(2, 8));
    const int slice = static_cast<int>(rng.uniform(bits + 1, 20));
    const auto len = static_cast<std::size_t>(rng.uniform(1, 6));
    const QuantSeq s = testing::make_seq(rng, len, bits, true);
    const int width = bits + static_cast<int>(len - 1) * slice + 1;
    i128 expected = 0;
    for (std::size_t n = 0; n < len; ++n) {
      expected += static_cast<i128>(s.values[n]) * (i128{1} << (slice * static_cast<int>(n)));
    }
    EXPECT_EQ(pack_signed(s, slice, width).to_integer(), expected);
  }
}

TEST(Multiply, ExamplesAndCounter) {
  const PackedWord a = pack_unsigned(useq({3, 5, 7}), 10, 32);
  const PackedWord b = pack_unsigned(useq({2, 4, 6}), 10, 32);
  const PackedWord zero(0, 32);
  const PackedWord one(1, 32);

  const std::uint64_t before = wide_multiply_count();
  EXPECT_EQ(multiply(zero, b).bits(), 0u);
  EXPECT_EQ(multiply(one, b).bits(), b.bits());
  const PackedWord prod = multiply(a, b);
  EXPECT_EQ(prod.bits(), u128{7345155} * u128{6295554});
  EXPECT_EQ(prod.width(), 64);
  EXPECT_EQ(wide_multiply_count() - before, 3u);
}

TEST(Multiply, SignedProductIsExact) {
  const PackedWord a = PackedWord::from_integer(-5, 8, true);
  const PackedWord b = PackedWord::from_integer(100, 8, false);
  const PackedWord p = multiply(a, b);
  EXPECT_TRUE(p.is_signed());
  EXPECT_EQ(p.to_integer(), -500);
  EXPECT_EQ(p.width(), 16);
}

TEST(Multiply, RejectsWidthBeyond128) {
  EXPECT_EQ(error_code([] { multiply(PackedWord(1, 64), PackedWord(1, 65)); }), Errc::overflow);
}

TEST(Accumulate, GrowsWidthByLog2Count) {
  std::vector<PackedWord> words(5, PackedWord((u128{1} << 40) - 1, 40));
  const PackedWord sum = accumulate(words);
  EXPECT_EQ(sum.width(), 43);
  EXPECT_EQ(sum.to_integer(), 5 * ((i128{1} << 40) - 1));
}

TEST(Unpack, Examples) {
  const PackedWord a = pack_unsigned(useq({3, 5, 7}), 10, 32);
  const PackedWord b = pack_unsigned(useq({2, 4, 6}), 10, 32);
  EXPECT_EQ(unpack(multiply(a, b), 10, 5, false), (std::vector<std::int64_t>{6, 22, 52, 58, 42}));

  EXPECT_EQ(unpack(PackedWord(0, 64), 7, 4, false), std::vector<std::int64_t>(4, 0));

  const PackedWord sa = pack_signed(sseq({-1, 2, 0}), 10, 32);
  const PackedWord sb = pack_signed(sseq({3, -2, 1}), 10, 32);
  EXPECT_EQ(unpack(multiply(sa, sb), 10, 5, true),
            (std::vector<std::int64_t>{-3, 8, -5, 2, 0}));
}

TEST(Unpack, RangeErrors) {
  EXPECT_EQ(error_code([] { unpack(PackedWord(0, 20), 10, 3, false); }), Errc::range);
  EXPECT_EQ(error_code([] { unpack(PackedWord(0, 20), 0, 1, false); }), Errc::range);
  EXPECT_NO_THROW(unpack(PackedWord(0, 21), 10, 3, false));
}

TEST(Unpack, RoundTripWithoutMultiplication) {
  Sampler rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const bool is_signed = rng.coin();
    const int bits = static_cast<int>(rng.uniform(is_signed ? 2 : 1, 8));
    const int slice = static_cast<int>(rng.uniform(bits + 1, 16));
    const auto len = static_cast<std::size_t>(rng.uniform(1, 7));
    const QuantSeq s = testing::make_seq(rng, len, bits, is_signed);
    const int width = bits + static_cast<int>(len - 1) * slice + 1;
    EXPECT_EQ(unpack(pack(s, slice, width), slice, static_cast<int>(len), is_signed), s.values);
  }
}

// Product segmentation: one multiply of every searched geometry reproduces the
// direct convolution. Short inputs are padded to n and k slices.
TEST(ProductSegmentation, MatchesReferenceConvolution) {
  Sampler rng(2024);
  int checked = 0;
  for (const MultiplierSpec spec : {MultiplierSpec{27, 18}, MultiplierSpec{32, 32}}) {
    for (int p = 1; p <= 8; ++p) {
      for (int q = 1; q <= 8; ++q) {
        for (const auto& quant : testing::signedness_variants(p, q)) {
          const PackParams params = search_optimal(spec, quant, 1);
          for (Fill fill : {Fill::random, Fill::random, Fill::all_min, Fill::all_max,
                            Fill::alternating}) {
            const auto f_len = static_cast<std::size_t>(
                fill == Fill::random ? rng.uniform(1, params.n) : params.n);
            const auto g_len = static_cast<std::size_t>(
                fill == Fill::random ? rng.uniform(1, params.k) : params.k);
            QuantSeq f = testing::make_seq(rng, f_len, p, quant.signed_f, fill);
            QuantSeq g = testing::make_seq(rng, g_len, q, quant.signed_g, fill);
            const auto [expected, ops] = oracle::naive_conv1d(f, g);

            f.values.resize(static_cast<std::size_t>(params.n), 0);
            g.values.resize(static_cast<std::size_t>(params.k), 0);
            const PackedWord prod = multiply(pack(f, params.slice_bits, spec.bit_a),
                                             pack(g, params.slice_bits, spec.bit_b));
            const auto segments =
                unpack(prod, params.slice_bits, params.segments(), quant.any_signed());
            auto padded = expected;
            padded.resize(segments.size(), 0);
            ASSERT_EQ(segments, padded)
                << spec.bit_a << "x" << spec.bit_b << " p=" << p << " q=" << q
                << " sf=" << quant.signed_f << " sg=" << quant.signed_g;
            ++checked;
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

}  // namespace
}  // namespace packconv
