// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "packconv/dnnconv.hpp"
#include "packconv/params.hpp"
#include "packconv/tensor.hpp"

namespace packconv::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Tensor files: {"shape": [...], "bitwidth": b, "signed": s, "data": [...]}

Tensor tensor_from_json(const Json& doc);
Json tensor_to_json(const Tensor& t);
/// Errors carry the path in their message. Malformed JSON maps to Errc::invalid_argument.
Tensor read_tensor_file(const std::filesystem::path& path);
void write_tensor_file(const std::filesystem::path& path, const Tensor& t);

// throughput

std::string throughput_csv(const std::vector<ThroughputCell>& cells);
Json throughput_json(const MultiplierSpec& spec, const std::vector<ThroughputCell>& cells);

// verify

enum class Level { base, extended, multichannel, layer };

std::string to_string(Level level);
Level parse_level(const std::string& name);

struct VerifyOptions {
  MultiplierSpec spec;
  QuantSpec quant;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  Level level = Level::extended;
};

struct VerifyReport {
  VerifyOptions options;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t extremal_trials = 0;
  /// Reproduction record of the lowest failing trial.
  std::optional<Json> first_failure;
};

/// Every fourth trial is extremal: each operand gets a randomly chosen pattern
/// built only from its minimum and maximum values.
VerifyReport run_verify(const VerifyOptions& options);
Json to_json(const VerifyReport& report);

// bench

struct BenchOptions {
  MultiplierSpec spec;
  QuantSpec quant;
  std::string level = "1d";  // "1d" or "layer"
  std::size_t size = 3000;
  LayerShape layer{64, 64, 12, 22, 3};
  bool delta_kernel = false;
  std::uint64_t seed = 0;
  int repeats = 5;
};

/// Validates the packed result against the oracle, then times both paths.
/// Error(invalid_argument) if validation fails.
Json run_bench(const BenchOptions& options);

// conv

struct ConvOptions {
  std::filesystem::path input;
  std::filesystem::path kernel;
  std::filesystem::path output;
  MultiplierSpec spec;
};

/// Rank-1 operands use the 1-D path, rank-3 input with rank-4 kernel the layer path.
Tensor run_conv(const Tensor& input, const Tensor& kernel, const MultiplierSpec& spec);

}  // namespace packconv::cli
