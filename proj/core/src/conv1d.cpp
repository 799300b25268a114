// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include "packconv/conv1d.hpp"

#include <algorithm>
#include <string>

#include "packconv/errors.hpp"

namespace packconv {
namespace {

PackedWord pack_operand(std::span<const std::int64_t> values, int bits, bool is_signed,
                        int slice_bits, int width) {
  QuantSeq seq{{values.begin(), values.end()}, bits, is_signed};
  return is_signed ? pack_signed(seq, slice_bits, width) : pack_unsigned(seq, slice_bits, width);
}

void check_range(std::span<const std::int64_t> values, int bits, bool is_signed,
                 const char* what) {
  const QuantSeq probe{{}, bits, is_signed};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!probe.in_range(values[i])) {
      fail(Errc::range, std::string(what) + "[" + std::to_string(i) + "] = " +
                            std::to_string(values[i]) + " outside the " +
                            (is_signed ? "signed " : "unsigned ") + std::to_string(bits) +
                            "-bit range");
    }
  }
}

void check_nonempty(const QuantSeq& seq, const char* what) {
  if (seq.values.empty()) fail(Errc::shape, std::string(what) + " is empty");
}

}  // namespace

PackedChunks pack_data(std::span<const std::int64_t> f, const PackParams& params) {
  const auto& quant = params.quant;
  check_range(f, quant.p, quant.signed_f, "f");
  const auto n = static_cast<std::size_t>(params.n);
  PackedChunks chunks;
  chunks.length = f.size();
  chunks.words.reserve((f.size() + n - 1) / n);
  for (std::size_t start = 0; start < f.size(); start += n) {
    // Padding to n slices adds zero slices, which the packers treat like data.
    const auto piece = f.subspan(start, std::min(n, f.size() - start));
    chunks.words.push_back(
        pack_operand(piece, quant.p, quant.signed_f, params.slice_bits, params.spec.bit_a));
  }
  return chunks;
}

PackedWord pack_kernel(std::span<const std::int64_t> g, const PackParams& params) {
  const auto& quant = params.quant;
  if (g.size() > static_cast<std::size_t>(params.k)) {
    fail(Errc::shape, "kernel of " + std::to_string(g.size()) + " elements exceeds k = " +
                          std::to_string(params.k));
  }
  check_range(g, quant.q, quant.signed_g, "g");
  return pack_operand(g, quant.q, quant.signed_g, params.slice_bits, params.spec.bit_b);
}

std::uint64_t accumulate_packed(std::span<const PackedChunks* const> fs,
                                std::span<const PackedWord* const> gs, const PackParams& params,
                                std::span<std::int64_t> out, int* max_overlap) {
  if (fs.empty() || fs.size() != gs.size()) {
    fail(Errc::shape, "channel count mismatch: " + std::to_string(fs.size()) + " data vs " +
                          std::to_string(gs.size()) + " kernel sequences");
  }
  if (fs.size() > static_cast<std::size_t>(params.m)) {
    fail(Errc::overflow, std::to_string(fs.size()) + " channels exceed the guard-bit budget m = " +
                             std::to_string(params.m));
  }
  const std::size_t chunk_count = fs.front()->words.size();
  for (const auto* f : fs) {
    if (f->words.size() != chunk_count) fail(Errc::shape, "channels differ in chunk count");
  }

  const bool signed_read = params.quant.any_signed();
  const int segments = params.segments();
  const auto n = static_cast<std::size_t>(params.n);
  std::vector<int> overlap(max_overlap ? out.size() : 0, 0);
  std::vector<PackedWord> products(fs.size());
  std::uint64_t multiplies = 0;

  for (std::size_t x = 0; x < chunk_count; ++x) {
    for (std::size_t c = 0; c < fs.size(); ++c) {
      products[c] = multiply(fs[c]->words[x], *gs[c]);
      ++multiplies;
    }
    const PackedWord sum = products.size() == 1 ? products.front() : accumulate(products);
    const auto seg = unpack(sum, params.slice_bits, segments, signed_read);
    const std::size_t base = x * n;
    for (std::size_t i = 0; i < seg.size() && base + i < out.size(); ++i) {
      out[base + i] += seg[i];
      if (max_overlap) ++overlap[base + i];
    }
  }
  if (max_overlap) {
    *max_overlap = overlap.empty() ? 0 : *std::max_element(overlap.begin(), overlap.end());
  }
  return multiplies;
}

Conv1DResult conv_base(const QuantSeq& f, const QuantSeq& g, const PackParams& params) {
  params.validate();
  check_nonempty(f, "f");
  check_nonempty(g, "g");
  if (f.size() > static_cast<std::size_t>(params.n)) {
    fail(Errc::shape, "conv_base: f has " + std::to_string(f.size()) + " elements, n = " +
                          std::to_string(params.n));
  }
  const PackedChunks a = pack_data(f.values, params);
  const PackedWord b = pack_kernel(g.values, params);
  const PackedWord prod = multiply(a.words.front(), b);
  return {unpack(prod, params.slice_bits, params.segments(), params.quant.any_signed()), 1, 1};
}

Conv1DResult conv_extended(const QuantSeq& f, const QuantSeq& g, const PackParams& params) {
  const QuantSeq* fp = &f;
  const QuantSeq* gp = &g;
  return conv_multichannel({fp, 1}, {gp, 1}, params);
}

Conv1DResult conv_multichannel(std::span<const QuantSeq> fs, std::span<const QuantSeq> gs,
                               const PackParams& params) {
  params.validate();
  if (fs.empty() || fs.size() != gs.size()) {
    fail(Errc::shape, "conv_multichannel: need matching, non-empty channel lists");
  }
  const std::size_t f_len = fs.front().size();
  const std::size_t g_len = gs.front().size();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    check_nonempty(fs[i], "f");
    check_nonempty(gs[i], "g");
    if (fs[i].size() != f_len || gs[i].size() != g_len) {
      fail(Errc::shape, "conv_multichannel: channel " + std::to_string(i) + " length differs");
    }
  }
  if (fs.size() > static_cast<std::size_t>(params.m)) {
    fail(Errc::overflow, std::to_string(fs.size()) + " channels exceed the guard-bit budget m = " +
                             std::to_string(params.m));
  }

  std::vector<PackedChunks> data;
  std::vector<PackedWord> kernels;
  data.reserve(fs.size());
  kernels.reserve(gs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    data.push_back(pack_data(fs[i].values, params));
    kernels.push_back(pack_kernel(gs[i].values, params));
  }
  std::vector<const PackedChunks*> data_refs;
  std::vector<const PackedWord*> kernel_refs;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    data_refs.push_back(&data[i]);
    kernel_refs.push_back(&kernels[i]);
  }

  Conv1DResult result;
  result.values.assign(f_len + g_len - 1, 0);
  result.wide_multiplies =
      accumulate_packed(data_refs, kernel_refs, params, result.values, &result.max_overlap);
  return result;
}

}  // namespace packconv
