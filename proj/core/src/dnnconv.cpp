// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include "packconv/dnnconv.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "packconv/conv1d.hpp"
#include "packconv/errors.hpp"

namespace packconv {
namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::uint64_t row_cost(const PackParams& params, const LayerShape& shape) {
  return ceil_div(shape.width, static_cast<std::size_t>(params.n)) *
         ceil_div(shape.kernel, static_cast<std::size_t>(params.k));
}

}  // namespace

std::int64_t max_channel_group(const MultiplierSpec& spec) noexcept {
  const int spare = kMaxWordBits - spec.bit_a - spec.bit_b;
  return spare >= 62 ? (std::int64_t{1} << 62) : (std::int64_t{1} << std::max(spare, 0));
}

LayerPlan plan_layer(const MultiplierSpec& spec, const QuantSpec& quant, const LayerShape& shape,
                     const LayerOptions& options) {
  spec.validate();
  quant.validate();
  if (shape.in_channels == 0 || shape.out_channels == 0 || shape.kernel == 0) {
    fail(Errc::shape, "layer dimensions must be positive");
  }
  if (shape.kernel > shape.height || shape.kernel > shape.width) {
    fail(Errc::shape, "kernel size " + std::to_string(shape.kernel) + " exceeds the " +
                          std::to_string(shape.height) + "x" + std::to_string(shape.width) +
                          " input");
  }
  if (options.channel_group < 0) fail(Errc::invalid_argument, "channel_group must be >= 0");

  const auto channels = static_cast<std::int64_t>(shape.in_channels);
  const std::int64_t limit = std::min(channels, max_channel_group(spec));
  std::int64_t group = 1;
  PackParams params = search_optimal(spec, quant, 1);
  if (options.channel_group > 0) {
    group = std::min(options.channel_group, limit);
    params = search_optimal(spec, quant, group);
  } else {
    std::uint64_t best_cost = row_cost(params, shape);
    for (std::int64_t m = 2; m <= limit; ++m) {
      const PackParams candidate = search_optimal(spec, quant, m);
      const std::uint64_t cost = row_cost(candidate, shape);
      if (cost <= best_cost) {
        best_cost = cost;
        group = m;
        params = candidate;
      }
    }
  }

  LayerPlan plan;
  plan.params = params;
  plan.channel_group = group;
  plan.kernel_pieces = ceil_div(shape.kernel, static_cast<std::size_t>(params.k));
  plan.chunks_per_row = ceil_div(shape.width, static_cast<std::size_t>(params.n));
  const std::size_t out_rows = shape.height - shape.kernel + 1;
  plan.wide_multiplies = static_cast<std::uint64_t>(shape.out_channels) * out_rows *
                         shape.kernel * shape.in_channels * plan.chunks_per_row *
                         plan.kernel_pieces;
  return plan;
}

OutputMap conv_layer(const FeatureMap& input, const KernelTensor& kernel,
                     const MultiplierSpec& spec, const LayerOptions& options) {
  const QuantSpec quant{input.tensor().bitwidth(), kernel.tensor().bitwidth(),
                        input.tensor().is_signed(), kernel.tensor().is_signed()};
  if (kernel.in_channels() != input.channels()) {
    fail(Errc::shape, "kernel expects " + std::to_string(kernel.in_channels()) +
                          " input channels, feature map has " +
                          std::to_string(input.channels()));
  }
  const LayerShape shape{input.channels(), kernel.out_channels(), input.height(), input.width(),
                         kernel.size()};
  const LayerPlan plan = plan_layer(spec, quant, shape, options);
  const PackParams& params = plan.params;

  const std::size_t ci_count = shape.in_channels;
  const std::size_t co_count = shape.out_channels;
  const std::size_t ksize = shape.kernel;
  const std::size_t out_h = shape.height - ksize + 1;
  const std::size_t out_w = shape.width - ksize + 1;
  const auto piece_len = static_cast<std::size_t>(params.k);

  // Feature rows, packed once per call: rows[ci * H + r].
  std::vector<PackedChunks> rows;
  rows.reserve(ci_count * shape.height);
  std::vector<std::int64_t> row(shape.width);
  for (std::size_t ci = 0; ci < ci_count; ++ci) {
    for (std::size_t r = 0; r < shape.height; ++r) {
      for (std::size_t w = 0; w < shape.width; ++w) row[w] = input.at(ci, r, w);
      rows.push_back(pack_data(row, params));
    }
  }

  // Reversed kernel rows, split into pieces of at most k taps:
  // kernels[((co * C_i + ci) * K + kh) * pieces + j].
  std::vector<PackedWord> kernels;
  kernels.reserve(co_count * ci_count * ksize * plan.kernel_pieces);
  std::vector<std::int64_t> reversed(ksize);
  for (std::size_t co = 0; co < co_count; ++co) {
    for (std::size_t ci = 0; ci < ci_count; ++ci) {
      for (std::size_t kh = 0; kh < ksize; ++kh) {
        for (std::size_t t = 0; t < ksize; ++t) reversed[t] = kernel.at(co, ci, kh, ksize - 1 - t);
        for (std::size_t j = 0; j < plan.kernel_pieces; ++j) {
          const std::size_t start = j * piece_len;
          const std::size_t len = std::min(piece_len, ksize - start);
          kernels.push_back(pack_kernel(std::span(reversed).subspan(start, len), params));
        }
      }
    }
  }
  auto kernel_word = [&](std::size_t co, std::size_t ci, std::size_t kh, std::size_t j) {
    return &kernels[((co * ci_count + ci) * ksize + kh) * plan.kernel_pieces + j];
  };

  OutputMap out;
  Tensor values({co_count, out_h, out_w}, 8, quant.any_signed());
  std::vector<std::int64_t> acc(shape.width + ksize - 1);
  std::vector<const PackedChunks*> group_rows;
  std::vector<const PackedWord*> group_kernels;
  const auto group = static_cast<std::size_t>(plan.channel_group);

  for (std::size_t co = 0; co < co_count; ++co) {
    for (std::size_t h = 0; h < out_h; ++h) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t kh = 0; kh < ksize; ++kh) {
        for (std::size_t first = 0; first < ci_count; first += group) {
          const std::size_t last = std::min(ci_count, first + group);
          for (std::size_t j = 0; j < plan.kernel_pieces; ++j) {
            group_rows.clear();
            group_kernels.clear();
            for (std::size_t ci = first; ci < last; ++ci) {
              group_rows.push_back(&rows[ci * shape.height + h + kh]);
              group_kernels.push_back(kernel_word(co, ci, kh, j));
            }
            out.wide_multiplies += accumulate_packed(
                group_rows, group_kernels, params, std::span(acc).subspan(j * piece_len));
          }
        }
      }
      for (std::size_t w = 0; w < out_w; ++w) values(co, h, w) = acc[w + ksize - 1];
    }
  }
  const int out_bits = bits_to_hold(values.data(), quant.any_signed());
  out.values = Tensor(values.shape(), std::move(values.data()), out_bits, quant.any_signed());
  return out;
}

}  // namespace packconv
