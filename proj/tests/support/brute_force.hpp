// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

// Test-only reference for the packing-parameter search. It enumerates every
// (n, k) pair directly and shares no code with params.cpp.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "packconv/params.hpp"

namespace packconv::testing {

struct Geometry {
  int guard_bits = 0;
  int slice_bits = 0;
  int n = 0;
  int k = 0;
  std::int64_t ops = 0;

  friend bool operator==(const Geometry&, const Geometry&) = default;
};

inline int ceil_log2(std::int64_t x) {
  int bits = 0;
  std::int64_t reach = 1;
  while (reach < x) {
    reach *= 2;
    ++bits;
  }
  return bits;
}

inline int reference_slice(int p, int q, bool sf, bool sg, int gb) {
  int s = (p == 1) ? q + gb : (q == 1) ? p + gb : p + q + gb;
  if ((p == 1 && sg) || (q == 1 && sf)) ++s;
  return s;
}

inline bool fits_port(int port, int bits, int count, int slice, bool is_signed) {
  const int headroom = (is_signed && count > 1) ? 1 : 0;
  return bits + (count - 1) * slice + headroom <= port;
}

/// Every self-consistent feasible geometry.
inline std::vector<Geometry> enumerate_feasible(int bit_a, int bit_b, const QuantSpec& quant,
                                                std::int64_t m) {
  std::vector<Geometry> out;
  for (int n = 1; n <= bit_a; ++n) {
    for (int k = 1; k <= bit_b; ++k) {
      const int gb = ceil_log2(m * std::min(n, k));
      const int s = reference_slice(quant.p, quant.q, quant.signed_f, quant.signed_g, gb);
      if (!fits_port(bit_a, quant.p, n, s, quant.signed_f)) continue;
      if (!fits_port(bit_b, quant.q, k, s, quant.signed_g)) continue;
      out.push_back({gb, s, n, k, std::int64_t{n} * k + std::int64_t{n - 1} * (k - 1)});
    }
  }
  return out;
}

/// Argmax of ops; ties to smaller slice, then larger n.
inline std::optional<Geometry> brute_force_optimal(int bit_a, int bit_b, const QuantSpec& quant,
                                                   std::int64_t m) {
  std::optional<Geometry> best;
  for (const auto& g : enumerate_feasible(bit_a, bit_b, quant, m)) {
    if (!best || g.ops > best->ops ||
        (g.ops == best->ops &&
         (g.slice_bits < best->slice_bits ||
          (g.slice_bits == best->slice_bits && g.n > best->n)))) {
      best = g;
    }
  }
  return best;
}

inline Geometry geometry_of(const PackParams& p) {
  return {p.guard_bits, p.slice_bits, p.n, p.k, p.ops()};
}

}  // namespace packconv::testing
