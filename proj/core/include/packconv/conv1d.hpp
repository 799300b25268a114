// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "packconv/packing.hpp"
#include "packconv/params.hpp"

namespace packconv {

struct Conv1DResult {
  std::vector<std::int64_t> values;
  std::uint64_t wide_multiplies = 0;
  /// Largest number of chunk outputs summed into any one output index.
  int max_overlap = 0;
};

/// A data sequence split into n-element chunks, each packed into an A word.
/// The last chunk is zero-padded.
struct PackedChunks {
  std::vector<PackedWord> words;
  std::size_t length = 0;
};

/// Packs f (elements checked against params.quant.p / signed_f).
PackedChunks pack_data(std::span<const std::int64_t> f, const PackParams& params);

/// Packs a kernel of at most params.k elements into a B word.
PackedWord pack_kernel(std::span<const std::int64_t> g, const PackParams& params);

/// Adds sum_i (f_i * g_i) into out[0..), where every f_i has the same chunk
/// count. For each chunk index the channel products are summed as wide words
/// before segmentation; the segments are then shift-added at offset x * n.
/// Writes past out.size() are dropped. Returns the wide multiplies used.
std::uint64_t accumulate_packed(std::span<const PackedChunks* const> fs,
                                std::span<const PackedWord* const> gs, const PackParams& params,
                                std::span<std::int64_t> out, int* max_overlap = nullptr);

/// One wide multiply: the n + k - 1 segment view of f * g.
/// Error(shape) if f is longer than n or g longer than k.
Conv1DResult conv_base(const QuantSeq& f, const QuantSeq& g, const PackParams& params);

/// f of any length, split into ceil(len(f) / n) chunks and shift-accumulated.
/// Output length len(f) + len(g) - 1.
Conv1DResult conv_extended(const QuantSeq& f, const QuantSeq& g, const PackParams& params);

/// sum_i fs[i] * gs[i] with channel products accumulated in the packed domain.
/// All fs share one length, all gs another. Error(overflow) if
/// fs.size() > params.m.
Conv1DResult conv_multichannel(std::span<const QuantSeq> fs, std::span<const QuantSeq> gs,
                               const PackParams& params);

}  // namespace packconv
