// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "packconv/packing.hpp"
#include "packconv/tensor.hpp"

namespace packconv::oracle {

/// Scalar work done by the reference loops. An output that sums t products
/// costs t multiplies and t - 1 additions.
struct OpCount {
  std::uint64_t scalar_multiplies = 0;
  std::uint64_t scalar_adds = 0;
};

/// y[m] = sum_k f[m - k] g[k], length len(f) + len(g) - 1.
std::pair<std::vector<std::int64_t>, OpCount> naive_conv1d(const QuantSeq& f, const QuantSeq& g);

/// Six nested loops over C_o, H_o, W_o, C_i, K, K (valid cross-correlation).
std::pair<OutputMap, OpCount> naive_conv_layer(const FeatureMap& input, const KernelTensor& kernel);

}  // namespace packconv::oracle
