// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>

#include "packconv/conv1d.hpp"
#include "packconv/dnnconv.hpp"
#include "packconv/errors.hpp"
#include "packconv/oracle.hpp"
#include "packconv/random.hpp"
#include "packconv_cli/commands.hpp"

namespace packconv::cli {
namespace {

using Values = std::vector<std::int64_t>;

enum class Fill { random, all_min, all_max, alternating };

constexpr std::array kExtremalFills{Fill::all_min, Fill::all_max, Fill::alternating};
constexpr std::int64_t kMaxSequence = 64;
constexpr std::int64_t kMaxChannels = 8;

Values draw(Sampler& rng, std::size_t count, int bits, bool is_signed, Fill fill) {
  const std::int64_t lo = is_signed ? -(std::int64_t{1} << (bits - 1)) : 0;
  const std::int64_t hi = is_signed ? (std::int64_t{1} << (bits - 1)) - 1
                                    : (std::int64_t{1} << bits) - 1;
  Values out(count);
  for (std::size_t i = 0; i < count; ++i) {
    switch (fill) {
      case Fill::random: out[i] = rng.uniform(lo, hi); break;
      case Fill::all_min: out[i] = lo; break;
      case Fill::all_max: out[i] = hi; break;
      case Fill::alternating: out[i] = i % 2 == 0 ? lo : hi; break;
    }
  }
  return out;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

Json seq_json(const QuantSeq& s) { return s.values; }

class TrialRunner {
 public:
  explicit TrialRunner(const VerifyOptions& options)
      : opt_(options), single_(search_optimal(options.spec, options.quant, 1)) {}

  /// Returns a reproduction record when the trial fails.
  std::optional<Json> run(std::uint64_t trial) {
    Sampler rng = Sampler::for_trial(opt_.seed, trial);
    extremal_ = is_extremal(trial);
    f_fill_ = g_fill_ = Fill::random;
    if (extremal_) {
      f_fill_ = kExtremalFills[static_cast<std::size_t>(rng.uniform(0, 2))];
      g_fill_ = kExtremalFills[static_cast<std::size_t>(rng.uniform(0, 2))];
    }
    record_ = Json();
    record_["trial"] = trial;
    record_["level"] = to_string(opt_.level);
    record_["extremal"] = extremal_;
    try {
      switch (opt_.level) {
        case Level::base: return base(rng);
        case Level::extended: return extended(rng);
        case Level::multichannel: return multichannel(rng);
        case Level::layer: return layer(rng);
      }
    } catch (const Error& e) {
      return failure(std::string("error: ") + e.what());
    }
    return std::nullopt;
  }

  static bool is_extremal(std::uint64_t trial) { return trial % 4 == 3; }

 private:
  QuantSeq f_seq(Sampler& rng, std::size_t len) {
    return {draw(rng, len, opt_.quant.p, opt_.quant.signed_f, f_fill_), opt_.quant.p,
            opt_.quant.signed_f};
  }
  QuantSeq g_seq(Sampler& rng, std::size_t len) {
    return {draw(rng, len, opt_.quant.q, opt_.quant.signed_g, g_fill_), opt_.quant.q,
            opt_.quant.signed_g};
  }

  void set_config(std::int64_t m) {
    Json c;
    c["bitA"] = opt_.spec.bit_a;
    c["bitB"] = opt_.spec.bit_b;
    c["p"] = opt_.quant.p;
    c["q"] = opt_.quant.q;
    c["signedF"] = opt_.quant.signed_f;
    c["signedG"] = opt_.quant.signed_g;
    c["M"] = m;
    record_["config"] = std::move(c);
  }

  std::optional<Json> failure(std::string reason) {
    record_["reason"] = std::move(reason);
    return record_;
  }

  std::optional<Json> compare(const Values& expected, const Values& actual,
                              std::uint64_t multiplies, std::uint64_t expected_multiplies) {
    if (expected != actual) {
      record_["expected"] = expected;
      record_["actual"] = actual;
      return failure("value mismatch");
    }
    if (multiplies != expected_multiplies) {
      record_["expectedWideMultiplies"] = expected_multiplies;
      record_["wideMultiplies"] = multiplies;
      return failure("multiply count mismatch");
    }
    return std::nullopt;
  }

  std::size_t kernel_length(Sampler& rng, const PackParams& params) {
    return extremal_ ? static_cast<std::size_t>(params.k)
                     : static_cast<std::size_t>(rng.uniform(1, params.k));
  }

  std::optional<Json> base(Sampler& rng) {
    set_config(1);
    const auto lf = extremal_ ? static_cast<std::size_t>(single_.n)
                              : static_cast<std::size_t>(rng.uniform(1, single_.n));
    const QuantSeq f = f_seq(rng, lf);
    const QuantSeq g = g_seq(rng, kernel_length(rng, single_));
    record_["inputs"] = {{"f", seq_json(f)}, {"g", seq_json(g)}};
    Values expected = oracle::naive_conv1d(f, g).first;
    expected.resize(static_cast<std::size_t>(single_.segments()), 0);
    const Conv1DResult got = conv_base(f, g, single_);
    return compare(expected, got.values, got.wide_multiplies, 1);
  }

  std::optional<Json> extended(Sampler& rng) {
    set_config(1);
    const auto lf = static_cast<std::size_t>(rng.uniform(1, kMaxSequence));
    const QuantSeq f = f_seq(rng, lf);
    const QuantSeq g = g_seq(rng, kernel_length(rng, single_));
    record_["inputs"] = {{"f", seq_json(f)}, {"g", seq_json(g)}};
    const Values expected = oracle::naive_conv1d(f, g).first;
    const Conv1DResult got = conv_extended(f, g, single_);
    return compare(expected, got.values, got.wide_multiplies,
                   ceil_div(lf, static_cast<std::size_t>(single_.n)));
  }

  std::optional<Json> multichannel(Sampler& rng) {
    const std::int64_t m = extremal_ ? kMaxChannels : rng.uniform(1, kMaxChannels);
    set_config(m);
    const PackParams params = search_optimal(opt_.spec, opt_.quant, m);
    const auto lf = static_cast<std::size_t>(rng.uniform(1, kMaxSequence));
    const std::size_t lg = kernel_length(rng, params);
    std::vector<QuantSeq> fs;
    std::vector<QuantSeq> gs;
    Values expected(lf + lg - 1, 0);
    Json fs_json = Json::array();
    Json gs_json = Json::array();
    for (std::int64_t c = 0; c < m; ++c) {
      fs.push_back(f_seq(rng, lf));
      gs.push_back(g_seq(rng, lg));
      fs_json.push_back(seq_json(fs.back()));
      gs_json.push_back(seq_json(gs.back()));
      const Values y = oracle::naive_conv1d(fs.back(), gs.back()).first;
      for (std::size_t i = 0; i < y.size(); ++i) expected[i] += y[i];
    }
    record_["inputs"] = {{"fs", std::move(fs_json)}, {"gs", std::move(gs_json)}};
    const Conv1DResult got = conv_multichannel(fs, gs, params);
    return compare(expected, got.values, got.wide_multiplies,
                   static_cast<std::uint64_t>(m) * ceil_div(lf, static_cast<std::size_t>(params.n)));
  }

  std::optional<Json> layer(Sampler& rng) {
    const auto c_i = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto c_o = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto k = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto h = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(k), 12));
    const auto w = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(k), 12));
    set_config(static_cast<std::int64_t>(c_i));
    const Tensor in_t({c_i, h, w}, draw(rng, c_i * h * w, opt_.quant.p, opt_.quant.signed_f, f_fill_),
                      opt_.quant.p, opt_.quant.signed_f);
    const Tensor k_t({c_o, c_i, k, k},
                     draw(rng, c_o * c_i * k * k, opt_.quant.q, opt_.quant.signed_g, g_fill_),
                     opt_.quant.q, opt_.quant.signed_g);
    record_["inputs"] = {{"input", tensor_to_json(in_t)}, {"kernel", tensor_to_json(k_t)}};
    const FeatureMap input(in_t);
    const KernelTensor kernel(k_t);
    const OutputMap expected = oracle::naive_conv_layer(input, kernel).first;
    const OutputMap got = conv_layer(input, kernel, opt_.spec);

    const LayerPlan plan = plan_layer(opt_.spec, opt_.quant, {c_i, c_o, h, w, k});
    const std::uint64_t formula = c_o * (h - k + 1) * k * c_i *
                                  ceil_div(w, static_cast<std::size_t>(plan.params.n)) *
                                  ceil_div(k, static_cast<std::size_t>(plan.params.k));
    if (got.values.shape() != expected.values.shape()) return failure("shape mismatch");
    return compare(expected.values.data(), got.values.data(), got.wide_multiplies, formula);
  }

  const VerifyOptions& opt_;
  PackParams single_;
  Json record_;
  bool extremal_ = false;
  Fill f_fill_ = Fill::random;
  Fill g_fill_ = Fill::random;
};

}  // namespace

std::string to_string(Level level) {
  switch (level) {
    case Level::base: return "base";
    case Level::extended: return "extended";
    case Level::multichannel: return "multichannel";
    case Level::layer: return "layer";
  }
  return "unknown";
}

Level parse_level(const std::string& name) {
  for (Level l : {Level::base, Level::extended, Level::multichannel, Level::layer}) {
    if (to_string(l) == name) return l;
  }
  fail(Errc::invalid_argument, "unknown level \"" + name + "\"");
}

VerifyReport run_verify(const VerifyOptions& options) {
  options.spec.validate();
  options.quant.validate();
  VerifyReport report;
  report.options = options;
  TrialRunner runner(options);
  for (std::uint64_t t = 0; t < options.trials; ++t) {
    ++report.trials;
    if (TrialRunner::is_extremal(t)) ++report.extremal_trials;
    if (auto rec = runner.run(t)) {
      ++report.failures;
      if (!report.first_failure) report.first_failure = std::move(rec);
    }
  }
  return report;
}

Json to_json(const VerifyReport& report) {
  const VerifyOptions& o = report.options;
  Json doc;
  doc["level"] = to_string(o.level);
  doc["config"] = {{"bitA", o.spec.bit_a},       {"bitB", o.spec.bit_b},
                   {"p", o.quant.p},             {"q", o.quant.q},
                   {"signedF", o.quant.signed_f}, {"signedG", o.quant.signed_g}};
  doc["seed"] = o.seed;
  doc["trials"] = report.trials;
  doc["extremalTrials"] = report.extremal_trials;
  doc["failures"] = report.failures;
  doc["firstFailure"] = report.first_failure ? *report.first_failure : Json(nullptr);
  return doc;
}

}  // namespace packconv::cli
