// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <limits>

#include "packconv/conv1d.hpp"
#include "packconv/dnnconv.hpp"
#include "packconv/errors.hpp"
#include "packconv/oracle.hpp"
#include "packconv/random.hpp"
#include "packconv_cli/commands.hpp"

namespace packconv::cli {
namespace {

using Values = std::vector<std::int64_t>;
using Clock = std::chrono::steady_clock;

Values random_values(Sampler& rng, std::size_t count, int bits, bool is_signed) {
  const std::int64_t lo = is_signed ? -(std::int64_t{1} << (bits - 1)) : 0;
  const std::int64_t hi = is_signed ? (std::int64_t{1} << (bits - 1)) - 1
                                    : (std::int64_t{1} << bits) - 1;
  return rng.values(count, lo, hi);
}

template <typename Fn>
std::int64_t min_time_ns(int repeats, Fn&& fn) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (int r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    fn();
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    best = std::min<std::int64_t>(best, ns.count());
  }
  return best;
}

// Plain int64 loops, used only as the timing baseline.
Values direct_conv1d(const Values& f, const Values& g) {
  Values y(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) y[i + j] += f[i] * g[j];
  }
  return y;
}

Values direct_layer(const FeatureMap& in, const KernelTensor& w) {
  const std::size_t k = w.size();
  const std::size_t ho = in.height() - k + 1;
  const std::size_t wo = in.width() - k + 1;
  Values out(w.out_channels() * ho * wo, 0);
  for (std::size_t o = 0; o < w.out_channels(); ++o)
    for (std::size_t h = 0; h < ho; ++h)
      for (std::size_t x = 0; x < wo; ++x) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < in.channels(); ++c)
          for (std::size_t kh = 0; kh < k; ++kh)
            for (std::size_t kw = 0; kw < k; ++kw) acc += in.at(c, h + kh, x + kw) * w.at(o, c, kh, kw);
        out[(o * ho + h) * wo + x] = acc;
      }
  return out;
}

Json geometry_json(const PackParams& p) {
  return {{"S", p.slice_bits}, {"Gb", p.guard_bits}, {"N", p.n},
          {"K", p.k},          {"M", p.m},           {"ops", p.ops()}};
}

Json bench_1d(const BenchOptions& o, Json doc) {
  if (o.size == 0) fail(Errc::invalid_argument, "--size must be positive");
  const PackParams params = search_optimal(o.spec, o.quant, 1);
  const auto klen = static_cast<std::size_t>(params.k);
  Sampler rng(o.seed);
  const QuantSeq f{random_values(rng, o.size, o.quant.p, o.quant.signed_f), o.quant.p,
                   o.quant.signed_f};
  const QuantSeq g{random_values(rng, klen, o.quant.q, o.quant.signed_g), o.quant.q,
                   o.quant.signed_g};

  const auto [expected, ops] = oracle::naive_conv1d(f, g);
  const Conv1DResult packed = conv_extended(f, g, params);
  doc["shape"] = {{"length", o.size}, {"kernel", klen}};
  doc["geometry"] = geometry_json(params);
  doc["validated"] = packed.values == expected;
  if (!doc["validated"].get<bool>()) return doc;

  const std::uint64_t chunks = (o.size + static_cast<std::size_t>(params.n) - 1) /
                               static_cast<std::size_t>(params.n);
  doc["packed"] = {{"wideMultiplies", packed.wide_multiplies}, {"opsPerMultiply", params.ops()}};
  doc["naive"] = {{"scalarMultiplies", ops.scalar_multiplies}, {"scalarAdds", ops.scalar_adds}};
  doc["multiplyRatio"] =
      static_cast<double>(ops.scalar_multiplies) / static_cast<double>(packed.wide_multiplies);
  doc["predictedRatio"] = static_cast<double>(o.size * klen) / static_cast<double>(chunks);

  std::int64_t sink = 0;
  const auto packed_ns = min_time_ns(o.repeats, [&] { sink += conv_extended(f, g, params).values[0]; });
  const auto naive_ns = min_time_ns(o.repeats, [&] { sink += direct_conv1d(f.values, g.values)[0]; });
  doc["timing"] = {{"informational", true},
                   {"repeats", o.repeats},
                   {"packedNs", packed_ns},
                   {"naiveNs", naive_ns},
                   {"checksum", sink}};
  return doc;
}

Json bench_layer(const BenchOptions& o, Json doc) {
  const LayerShape& s = o.layer;
  if (s.in_channels == 0 || s.out_channels == 0 || s.kernel == 0 || s.height < s.kernel ||
      s.width < s.kernel) {
    fail(Errc::invalid_argument, "layer shape needs positive channels and H, W >= kernel >= 1");
  }
  Sampler rng(o.seed);
  Tensor in_t({s.in_channels, s.height, s.width},
              random_values(rng, s.in_channels * s.height * s.width, o.quant.p, o.quant.signed_f),
              o.quant.p, o.quant.signed_f);
  const std::size_t kcount = s.out_channels * s.in_channels * s.kernel * s.kernel;
  Tensor k_t({s.out_channels, s.in_channels, s.kernel, s.kernel}, o.quant.q, o.quant.signed_g);
  if (o.delta_kernel) {
    for (std::size_t co = 0; co < s.out_channels; ++co) k_t(co, co % s.in_channels, 0, 0) = 1;
  } else {
    k_t.data() = random_values(rng, kcount, o.quant.q, o.quant.signed_g);
  }
  const FeatureMap input(std::move(in_t));
  const KernelTensor kernel(std::move(k_t));

  const LayerPlan plan = plan_layer(o.spec, o.quant, s);
  const auto [expected, ops] = oracle::naive_conv_layer(input, kernel);
  const OutputMap packed = conv_layer(input, kernel, o.spec);
  doc["shape"] = {{"inChannels", s.in_channels}, {"outChannels", s.out_channels},
                  {"height", s.height},          {"width", s.width},
                  {"kernel", s.kernel},          {"deltaKernel", o.delta_kernel}};
  doc["geometry"] = geometry_json(plan.params);
  doc["validated"] = packed.values.data() == expected.values.data();
  if (!doc["validated"].get<bool>()) return doc;

  const std::size_t w_out = s.width - s.kernel + 1;
  const double predicted =
      static_cast<double>(w_out * s.kernel) /
      static_cast<double>(plan.chunks_per_row * plan.kernel_pieces);
  doc["packed"] = {{"wideMultiplies", packed.wide_multiplies},
                   {"opsPerMultiply", plan.params.ops()},
                   {"channelGroup", plan.channel_group},
                   {"chunksPerRow", plan.chunks_per_row},
                   {"kernelPieces", plan.kernel_pieces}};
  doc["naive"] = {{"scalarMultiplies", ops.scalar_multiplies}, {"scalarAdds", ops.scalar_adds}};
  doc["multiplyRatio"] =
      static_cast<double>(ops.scalar_multiplies) / static_cast<double>(packed.wide_multiplies);
  doc["predictedRatio"] = predicted;

  std::int64_t sink = 0;
  const auto packed_ns =
      min_time_ns(o.repeats, [&] { sink += conv_layer(input, kernel, o.spec).values.data()[0]; });
  const auto naive_ns = min_time_ns(o.repeats, [&] { sink += direct_layer(input, kernel)[0]; });
  doc["timing"] = {{"informational", true},
                   {"repeats", o.repeats},
                   {"packedNs", packed_ns},
                   {"naiveNs", naive_ns},
                   {"checksum", sink}};
  return doc;
}

}  // namespace

Json run_bench(const BenchOptions& o) {
  o.spec.validate();
  o.quant.validate();
  if (o.repeats < 1) fail(Errc::invalid_argument, "--repeats must be at least 1");
  Json doc;
  doc["level"] = o.level;
  doc["config"] = {{"bitA", o.spec.bit_a},       {"bitB", o.spec.bit_b},
                   {"p", o.quant.p},             {"q", o.quant.q},
                   {"signedF", o.quant.signed_f}, {"signedG", o.quant.signed_g}};
  doc["seed"] = o.seed;
  if (o.level == "1d") return bench_1d(o, std::move(doc));
  if (o.level == "layer") return bench_layer(o, std::move(doc));
  fail(Errc::invalid_argument, "unknown bench level \"" + o.level + "\"");
}

}  // namespace packconv::cli
