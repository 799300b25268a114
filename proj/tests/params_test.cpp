// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "packconv/errors.hpp"
#include "packconv/params.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"

namespace packconv {
namespace {

using testing::brute_force_optimal;
using testing::Geometry;
using testing::geometry_of;

const MultiplierSpec kDsp{27, 18};
const MultiplierSpec kCpu{32, 32};

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected packconv::Error";
  return Errc::invalid_argument;
}

TEST(GuardBits, Examples) {
  EXPECT_EQ(guard_bits(1, 1, 5), 0);
  EXPECT_EQ(guard_bits(1, 3, 3), 2);
  EXPECT_EQ(guard_bits(4, 3, 3), 4);  // ceil(log2 12)
  EXPECT_EQ(guard_bits(1, 8, 8), 3);
  EXPECT_EQ(guard_bits(2, 9, 4), 3);
  EXPECT_EQ(error_code([] { guard_bits(0, 1, 1); }), Errc::range);
}

TEST(GuardBits, MatchesLogarithmDefinition) {
  for (std::int64_t m = 1; m <= 130; ++m) {
    for (int n = 1; n <= 12; ++n) {
      for (int k = 1; k <= 12; ++k) {
        EXPECT_EQ(guard_bits(m, n, k), testing::ceil_log2(m * std::min(n, k)));
      }
    }
  }
}

TEST(SliceWidth, Examples) {
  EXPECT_EQ(slice_width({4, 4}, 2), 10);
  EXPECT_EQ(slice_width({1, 1}, 0), 1);
  EXPECT_EQ(slice_width({1, 4}, 2), 6);
  EXPECT_EQ(slice_width({4, 1}, 2), 6);
}

TEST(SliceWidth, OneBitAgainstSignedGetsExtraBit) {
  EXPECT_EQ(slice_width({1, 4, false, true}, 2), 7);
  EXPECT_EQ(slice_width({4, 1, true, false}, 2), 7);
  // Both multi-bit: no extra bit, whatever the signedness.
  EXPECT_EQ(slice_width({4, 4, true, true}, 2), 10);
}

TEST(QuantSpec, RejectsSignedOneBitAndOutOfRangeWidths) {
  EXPECT_EQ(error_code([] { QuantSpec{1, 4, true, false}.validate(); }), Errc::invalid_argument);
  EXPECT_EQ(error_code([] { QuantSpec{4, 1, false, true}.validate(); }), Errc::invalid_argument);
  EXPECT_EQ(error_code([] { QuantSpec{0, 4}.validate(); }), Errc::invalid_argument);
  EXPECT_EQ(error_code([] { QuantSpec{9, 4}.validate(); }), Errc::invalid_argument);
  EXPECT_NO_THROW((QuantSpec{1, 1}.validate()));
}

TEST(MultiplierSpec, RequiresAccumulatorHeadroom) {
  EXPECT_NO_THROW((MultiplierSpec{64, 57}.validate()));
  EXPECT_EQ(error_code([] { MultiplierSpec{64, 58}.validate(); }), Errc::invalid_argument);
  EXPECT_EQ(error_code([] { MultiplierSpec{0, 8}.validate(); }), Errc::invalid_argument);
}

TEST(SearchOptimal, CpuFourBit) {
  const PackParams p = search_optimal(kCpu, {4, 4}, 1);
  EXPECT_EQ(geometry_of(p), (Geometry{2, 10, 3, 3, 13}));
}

TEST(SearchOptimal, DspBinary) {
  const PackParams p = search_optimal(kDsp, {1, 1}, 1);
  EXPECT_EQ(p.ops(), 60);
  EXPECT_EQ(p.n * p.k, 36);
  EXPECT_EQ(geometry_of(p), (Geometry{2, 3, 9, 4, 60}));
}

TEST(SearchOptimal, DspFourBit) {
  const PackParams p = search_optimal(kDsp, {4, 4}, 1);
  EXPECT_EQ(p.ops(), 8);
  EXPECT_EQ(geometry_of(p), (Geometry{1, 9, 3, 2, 8}));
}

TEST(SearchOptimal, CpuBinaryTops113) {
  const PackParams p = search_optimal(kCpu, {1, 1}, 1);
  EXPECT_EQ(geometry_of(p), (Geometry{3, 4, 8, 8, 113}));
}

TEST(SearchOptimal, ChannelAccumulationWidensGuardBits) {
  // Up to 21 channels keep n = k = 3 on a 32x32 multiplier; 22 do not.
  EXPECT_EQ(geometry_of(search_optimal(kCpu, {4, 4}, 21)), (Geometry{6, 14, 3, 3, 13}));
  EXPECT_EQ(geometry_of(search_optimal(kCpu, {4, 4}, 22)), (Geometry{6, 14, 3, 2, 8}));
  EXPECT_EQ(geometry_of(search_optimal(kCpu, {4, 4}, 64)), (Geometry{7, 15, 2, 2, 5}));
}

TEST(SearchOptimal, InfeasibleWhenOperandWiderThanPort) {
  EXPECT_EQ(error_code([] { search_optimal({4, 4}, {5, 4}, 1); }), Errc::infeasible);
  EXPECT_EQ(error_code([] { search_optimal({8, 3}, {2, 4}, 1); }), Errc::infeasible);
  EXPECT_EQ(error_code([] { search_optimal(kCpu, {4, 4}, 0); }), Errc::range);
}

TEST(SearchOptimal, ResultSatisfiesInvariants) {
  for (const auto& spec : {kDsp, kCpu, MultiplierSpec{16, 16}, MultiplierSpec{64, 57}}) {
    for (int p = 1; p <= 8; ++p) {
      for (int q = 1; q <= 8; ++q) {
        for (const auto& quant : testing::signedness_variants(p, q)) {
          for (std::int64_t m : {1, 2, 3, 4, 7, 16, 64}) {
            const PackParams r = search_optimal(spec, quant, m);
            EXPECT_NO_THROW(r.validate());
            EXPECT_LE(p + (r.n - 1) * r.slice_bits, spec.bit_a);
            EXPECT_LE(q + (r.k - 1) * r.slice_bits, spec.bit_b);
            EXPECT_EQ(r.guard_bits, guard_bits(m, r.n, r.k));
            EXPECT_EQ(r.slice_bits, slice_width(quant, r.guard_bits));
            EXPECT_GE(r.ops(), 1);
          }
        }
      }
    }
  }
}

TEST(SearchOptimal, EqualsBruteForceArgmax) {
  for (const auto& spec : {kDsp, kCpu, MultiplierSpec{24, 24}, MultiplierSpec{12, 9}}) {
    for (int p = 1; p <= 8; ++p) {
      for (int q = 1; q <= 8; ++q) {
        for (const auto& quant : testing::signedness_variants(p, q)) {
          for (std::int64_t m : {1, 2, 3, 5, 6, 12, 128}) {
            const auto expected = brute_force_optimal(spec.bit_a, spec.bit_b, quant, m);
            if (!expected) {
              EXPECT_THROW(search_optimal(spec, quant, m), Error);
              continue;
            }
            EXPECT_EQ(geometry_of(search_optimal(spec, quant, m)), *expected)
                << spec.bit_a << "x" << spec.bit_b << " p=" << p << " q=" << q
                << " sf=" << quant.signed_f << " sg=" << quant.signed_g << " m=" << m;
          }
        }
      }
    }
  }
}

TEST(ThroughputGrid, RowMajorAndComplete) {
  const auto grid = throughput_grid(kDsp, 8, 8);
  ASSERT_EQ(grid.size(), 64u);
  for (int i = 0; i < 64; ++i) {
    EXPECT_EQ(grid[static_cast<std::size_t>(i)].p, i / 8 + 1);
    EXPECT_EQ(grid[static_cast<std::size_t>(i)].q, i % 8 + 1);
  }
  EXPECT_EQ(grid[0].ops, 60);
  EXPECT_EQ(grid[3 * 8 + 3].ops, 8);
  EXPECT_EQ(throughput_grid(kCpu, 8, 8)[3 * 8 + 3].ops, 13);
}

TEST(ThroughputGrid, InfeasibleCellsAreReported) {
  const auto grid = throughput_grid({4, 4}, 8, 2);
  ASSERT_EQ(grid.size(), 16u);
  for (const auto& cell : grid) {
    EXPECT_EQ(cell.feasible, cell.p <= 4);
    if (!cell.feasible) {
      EXPECT_EQ(cell.ops, 0);
    } else {
      EXPECT_GE(cell.ops, 1);
    }
  }
}

TEST(ThroughputGrid, MonotoneInBothWidths) {
  for (const auto& spec : {kDsp, kCpu, MultiplierSpec{20, 20}, MultiplierSpec{48, 24}}) {
    const auto grid = throughput_grid(spec, 8, 8);
    auto ops = [&](int p, int q) { return grid[static_cast<std::size_t>((p - 1) * 8 + q - 1)].ops; };
    for (int p = 1; p <= 8; ++p) {
      for (int q = 1; q <= 8; ++q) {
        if (p < 8) EXPECT_LE(ops(p + 1, q), ops(p, q)) << p << "," << q;
        if (q < 8) EXPECT_LE(ops(p, q + 1), ops(p, q)) << p << "," << q;
      }
    }
  }
}

TEST(ThroughputGrid, RejectsOutOfRangeBounds) {
  EXPECT_EQ(error_code([] { throughput_grid(kCpu, 9, 8); }), Errc::invalid_argument);
  EXPECT_EQ(error_code([] { throughput_grid(kCpu, 8, 0); }), Errc::invalid_argument);
}

}  // namespace
}  // namespace packconv
