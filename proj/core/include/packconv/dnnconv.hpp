// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "packconv/params.hpp"
#include "packconv/tensor.hpp"

namespace packconv {

struct LayerOptions {
  /// Input channels summed per packed accumulation. 0 selects the group size
  /// whose geometry needs the fewest wide multiplies, preferring larger groups.
  std::int64_t channel_group = 0;
};

/// How conv_layer will decompose a layer onto 1-D packed convolutions.
struct LayerPlan {
  PackParams params;
  std::int64_t channel_group = 1;
  std::size_t kernel_pieces = 1;  // ceil(K / params.k)
  std::size_t chunks_per_row = 0;  // ceil(W_i / params.n)
  std::uint64_t wide_multiplies = 0;
};

struct LayerShape {
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t height = 1;  // H_i
  std::size_t width = 1;   // W_i
  std::size_t kernel = 1;  // K
};

/// Largest channel group a 128-bit accumulator can sum for `spec`.
std::int64_t max_channel_group(const MultiplierSpec& spec) noexcept;

LayerPlan plan_layer(const MultiplierSpec& spec, const QuantSpec& quant, const LayerShape& shape,
                     const LayerOptions& options = {});

/// Valid-mode cross-correlation
///   O[o][h][w] = sum_{i, kh, kw} I[i][h+kh][w+kw] * W[o][i][kh][kw]
/// computed row by row: each (o, h, kh) convolves the input row h+kh with the
/// reversed kernel row, channels are accumulated in the packed domain, and
/// output w is read from index w + K - 1. Kernel rows longer than the
/// geometry's k are split into pieces whose results are shift-added.
///
/// wide_multiplies = C_o * H_o * K * C_i * ceil(W_i / n) * ceil(K / k).
OutputMap conv_layer(const FeatureMap& input, const KernelTensor& kernel,
                     const MultiplierSpec& spec, const LayerOptions& options = {});

}  // namespace packconv
