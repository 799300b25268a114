// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace packconv {

/// Operand port widths of the wide multiplier being emulated.
struct MultiplierSpec {
  int bit_a = 32;
  int bit_b = 32;

  /// Headroom reserved above bit_a + bit_b for packed-domain accumulation of
  /// up to 2^7 = 128 products in a 128-bit accumulator.
  static constexpr int kAccumulationHeadroom = 7;

  void validate() const;
  friend bool operator==(const MultiplierSpec&, const MultiplierSpec&) = default;
};

/// Bit widths and signedness of the data sequence f (p bits) and the
/// kernel g (q bits). One-bit operands are always unsigned {0, 1}.
struct QuantSpec {
  int p = 4;
  int q = 4;
  bool signed_f = false;
  bool signed_g = false;

  static constexpr int kMaxBits = 8;

  void validate() const;
  bool any_signed() const noexcept { return signed_f || signed_g; }
  friend bool operator==(const QuantSpec&, const QuantSpec&) = default;
};

/// Packing geometry for one multiplier/quantization pair.
///
///   guard_bits = ceil(log2(m * min(n, k)))
///   slice_bits = slice_width(quant, guard_bits)
///   p + (n - 1) * slice_bits <= bit_a,  q + (k - 1) * slice_bits <= bit_b
///
/// A signed operand with more than one slice needs one extra bit of port
/// width, so for those the left-hand sides above carry a +1.
struct PackParams {
  MultiplierSpec spec;
  QuantSpec quant;
  std::int64_t m = 1;  // products accumulated in the packed domain
  int guard_bits = 0;
  int slice_bits = 1;
  int n = 1;  // f elements per A word
  int k = 1;  // g elements per B word

  std::int64_t ops() const noexcept;
  /// Number of S-bit segments in one product, n + k - 1.
  int segments() const noexcept { return n + k - 1; }

  /// Throws Error(range) if any invariant listed above does not hold.
  void validate() const;
  friend bool operator==(const PackParams&, const PackParams&) = default;
};

struct ThroughputCell {
  int p = 0;
  int q = 0;
  bool feasible = false;
  int slice_bits = 0;
  int guard_bits = 0;
  int n = 0;
  int k = 0;
  std::int64_t ops = 0;
};

/// ceil(log2(m * min(n, k))); zero when the product is 1.
int guard_bits(std::int64_t m, std::int64_t n, std::int64_t k);

/// Slice width for the given guard bits. A one-bit operand contributes no
/// width of its own; when it meets a signed operand one more bit is added so
/// that no segment can reach -2^(S-1), which the borrow-bit decode cannot
/// represent.
int slice_width(const QuantSpec& quant, int guard_bits);

/// Equivalent MAC operations per wide multiply: n*k + (n-1)*(k-1).
std::int64_t equivalent_ops(std::int64_t n, std::int64_t k) noexcept;

/// Largest slice count for an operand of `bits` bits on a `port_bits` wide
/// port, or 0 if even one element does not fit.
int max_slices(int port_bits, int bits, int slice_bits, bool is_signed) noexcept;

/// True when (n, k) with its derived guard bits and slice width fits `spec`.
bool is_feasible(const MultiplierSpec& spec, const QuantSpec& quant, std::int64_t m, int n,
                 int k) noexcept;

/// Throughput-optimal self-consistent geometry. Ties prefer the smaller
/// slice width, then the larger n. Throws Error(infeasible) when p > bit_a or
/// q > bit_b.
PackParams search_optimal(const MultiplierSpec& spec, const QuantSpec& quant, std::int64_t m = 1);

/// One cell per (p, q) in [1..pmax] x [1..qmax], row-major, unsigned, m = 1.
/// Infeasible cells are kept with feasible = false and ops = 0.
std::vector<ThroughputCell> throughput_grid(const MultiplierSpec& spec, int pmax, int qmax);

}  // namespace packconv
