// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include "packconv/params.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

#include "packconv/errors.hpp"

namespace packconv {

void MultiplierSpec::validate() const {
  if (bit_a < 1 || bit_b < 1) {
    fail(Errc::invalid_argument, "multiplier widths must be positive (got " +
                                     std::to_string(bit_a) + "x" + std::to_string(bit_b) + ")");
  }
  if (bit_a + bit_b + kAccumulationHeadroom > 128) {
    fail(Errc::invalid_argument, "bit_a + bit_b must leave " +
                                     std::to_string(kAccumulationHeadroom) +
                                     " bits of headroom in a 128-bit accumulator");
  }
}

void QuantSpec::validate() const {
  if (p < 1 || p > kMaxBits || q < 1 || q > kMaxBits) {
    fail(Errc::invalid_argument, "quantization bit widths must lie in [1, 8] (got p=" +
                                     std::to_string(p) + ", q=" + std::to_string(q) + ")");
  }
  if ((p == 1 && signed_f) || (q == 1 && signed_g)) {
    fail(Errc::invalid_argument, "1-bit operands are unsigned; signed 1-bit is not supported");
  }
}

std::int64_t PackParams::ops() const noexcept { return equivalent_ops(n, k); }

void PackParams::validate() const {
  spec.validate();
  quant.validate();
  if (m < 1 || n < 1 || k < 1) fail(Errc::range, "m, n and k must be positive");
  if (guard_bits != packconv::guard_bits(m, n, k)) {
    fail(Errc::range, "guard bits inconsistent with m * min(n, k)");
  }
  if (slice_bits != slice_width(quant, guard_bits)) {
    fail(Errc::range, "slice width inconsistent with guard bits");
  }
  if (n > max_slices(spec.bit_a, quant.p, slice_bits, quant.signed_f) ||
      k > max_slices(spec.bit_b, quant.q, slice_bits, quant.signed_g)) {
    fail(Errc::range, "geometry exceeds the multiplier port widths");
  }
}

int guard_bits(std::int64_t m, std::int64_t n, std::int64_t k) {
  if (m < 1 || n < 1 || k < 1) fail(Errc::range, "guard_bits: arguments must be positive");
  const auto terms = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(std::min(n, k));
  // bit_width(x - 1) == ceil(log2(x)) for x >= 1
  return static_cast<int>(std::bit_width(terms - 1));
}

int slice_width(const QuantSpec& quant, int guard_bits) {
  const bool one_bit_meets_signed =
      (quant.p == 1 && quant.signed_g) || (quant.q == 1 && quant.signed_f);
  int width = 0;
  if (quant.p == 1) {
    width = quant.q + guard_bits;
  } else if (quant.q == 1) {
    width = quant.p + guard_bits;
  } else {
    width = quant.p + quant.q + guard_bits;
  }
  return width + (one_bit_meets_signed ? 1 : 0);
}

std::int64_t equivalent_ops(std::int64_t n, std::int64_t k) noexcept {
  return n * k + (n - 1) * (k - 1);
}

int max_slices(int port_bits, int bits, int slice_bits, bool is_signed) noexcept {
  if (bits > port_bits || slice_bits < 1) return 0;
  int count = (port_bits - bits) / slice_bits + 1;
  // A signed word's top slice holds value - borrow, one bit wider than `bits`.
  if (is_signed && count > 1 && bits + (count - 1) * slice_bits + 1 > port_bits) --count;
  return count;
}

bool is_feasible(const MultiplierSpec& spec, const QuantSpec& quant, std::int64_t m, int n,
                 int k) noexcept {
  if (m < 1 || n < 1 || k < 1) return false;
  const int gb = guard_bits(m, n, k);
  const int s = slice_width(quant, gb);
  return n <= max_slices(spec.bit_a, quant.p, s, quant.signed_f) &&
         k <= max_slices(spec.bit_b, quant.q, s, quant.signed_g);
}

namespace {

PackParams make_params(const MultiplierSpec& spec, const QuantSpec& quant, std::int64_t m, int n,
                       int k) {
  PackParams params{spec, quant, m, 0, 0, n, k};
  params.guard_bits = guard_bits(m, n, k);
  params.slice_bits = slice_width(quant, params.guard_bits);
  return params;
}

bool better(const PackParams& lhs, const PackParams& rhs) {
  if (lhs.ops() != rhs.ops()) return lhs.ops() > rhs.ops();
  if (lhs.slice_bits != rhs.slice_bits) return lhs.slice_bits < rhs.slice_bits;
  if (lhs.n != rhs.n) return lhs.n > rhs.n;
  return lhs.k > rhs.k;
}

}  // namespace

PackParams search_optimal(const MultiplierSpec& spec, const QuantSpec& quant, std::int64_t m) {
  spec.validate();
  quant.validate();
  if (m < 1) fail(Errc::range, "search_optimal: m must be positive");

  std::optional<PackParams> best;
  const int cap_limit = std::min(spec.bit_a, spec.bit_b);
  // Each cap c bounds min(n, k). Guard bits sized for c give the slice width
  // and hence the largest n and k; one side is then clamped to c. The clamped
  // pair may need fewer guard bits than c implies, so the geometry is
  // re-derived from the pair itself, which can only shrink the slice.
  for (int cap = 1; cap <= cap_limit; ++cap) {
    const int gb = guard_bits(m, cap, cap);
    const int s = slice_width(quant, gb);
    const int n_max = max_slices(spec.bit_a, quant.p, s, quant.signed_f);
    const int k_max = max_slices(spec.bit_b, quant.q, s, quant.signed_g);
    if (n_max < 1 || k_max < 1) continue;
    for (const auto& [n, k] : {std::pair{std::min(n_max, cap), k_max},
                               std::pair{n_max, std::min(k_max, cap)}}) {
      PackParams candidate = make_params(spec, quant, m, n, k);
      if (!best || better(candidate, *best)) best = candidate;
    }
  }
  if (!best) {
    fail(Errc::infeasible, "no packing fits p=" + std::to_string(quant.p) +
                               ", q=" + std::to_string(quant.q) + " into " +
                               std::to_string(spec.bit_a) + "x" + std::to_string(spec.bit_b));
  }
  return *best;
}

std::vector<ThroughputCell> throughput_grid(const MultiplierSpec& spec, int pmax, int qmax) {
  spec.validate();
  if (pmax < 1 || pmax > QuantSpec::kMaxBits || qmax < 1 || qmax > QuantSpec::kMaxBits) {
    fail(Errc::invalid_argument, "pmax and qmax must lie in [1, 8]");
  }
  std::vector<ThroughputCell> grid;
  grid.reserve(static_cast<std::size_t>(pmax * qmax));
  for (int p = 1; p <= pmax; ++p) {
    for (int q = 1; q <= qmax; ++q) {
      ThroughputCell cell{p, q};
      try {
        const PackParams params = search_optimal(spec, QuantSpec{p, q}, 1);
        cell.feasible = true;
        cell.slice_bits = params.slice_bits;
        cell.guard_bits = params.guard_bits;
        cell.n = params.n;
        cell.k = params.k;
        cell.ops = params.ops();
      } catch (const Error& e) {
        if (e.code() != Errc::infeasible) throw;
      }
      grid.push_back(cell);
    }
  }
  return grid;
}

}  // namespace packconv
