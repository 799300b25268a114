// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include <ostream>

#include "CLI11.hpp"
#include "packconv/errors.hpp"
#include "packconv_cli/commands.hpp"

namespace packconv::cli {
namespace {

void add_spec_flags(CLI::App& cmd, MultiplierSpec& spec) {
  cmd.add_option("--bit-a", spec.bit_a, "Bit width of multiplier input A")->required();
  cmd.add_option("--bit-b", spec.bit_b, "Bit width of multiplier input B")->required();
}

void add_quant_flags(CLI::App& cmd, QuantSpec& quant) {
  cmd.add_option("--p", quant.p, "Bit width of data elements")->required();
  cmd.add_option("--q", quant.q, "Bit width of kernel elements")->required();
  cmd.add_flag("--signed-f", quant.signed_f, "Data elements are two's complement");
  cmd.add_flag("--signed-g", quant.signed_g, "Kernel elements are two's complement");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Packed low-bitwidth convolution toolkit", "packconv"};
  app.require_subcommand(1);

  // throughput
  MultiplierSpec tp_spec;
  int pmax = 8;
  int qmax = 8;
  std::string tp_format = "csv";
  auto* throughput = app.add_subcommand("throughput", "Print the ops-per-multiply grid");
  add_spec_flags(*throughput, tp_spec);
  throughput->add_option("--pmax", pmax, "Largest data bit width")->capture_default_str();
  throughput->add_option("--qmax", qmax, "Largest kernel bit width")->capture_default_str();
  throughput->add_option("--format", tp_format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // verify
  VerifyOptions vo;
  std::string level = "extended";
  auto* verify = app.add_subcommand("verify", "Check packed kernels against the reference");
  add_spec_flags(*verify, vo.spec);
  add_quant_flags(*verify, vo.quant);
  verify->add_option("--trials", vo.trials)->capture_default_str();
  verify->add_option("--seed", vo.seed)->capture_default_str();
  verify->add_option("--level", level)
      ->check(CLI::IsMember({"base", "extended", "multichannel", "layer"}))
      ->capture_default_str();

  // bench
  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Count multiplies and time packed vs naive paths");
  add_spec_flags(*bench, bo.spec);
  add_quant_flags(*bench, bo.quant);
  bench->add_option("--level", bo.level)
      ->check(CLI::IsMember({"1d", "layer"}))
      ->capture_default_str();
  bench->add_option("--size", bo.size, "1-D data length")->capture_default_str();
  bench->add_option("--in-channels", bo.layer.in_channels)->capture_default_str();
  bench->add_option("--out-channels", bo.layer.out_channels)->capture_default_str();
  bench->add_option("--height", bo.layer.height)->capture_default_str();
  bench->add_option("--width", bo.layer.width)->capture_default_str();
  bench->add_option("--kernel", bo.layer.kernel, "Kernel size K")->capture_default_str();
  bench->add_flag("--delta", bo.delta_kernel, "Use a delta kernel instead of random weights");
  bench->add_option("--repeats", bo.repeats)->capture_default_str();
  bench->add_option("--seed", bo.seed)->capture_default_str();

  // conv
  ConvOptions co;
  auto* conv = app.add_subcommand("conv", "Convolve tensor files");
  conv->add_option("--input", co.input)->required();
  conv->add_option("--kernel", co.kernel)->required();
  conv->add_option("--output", co.output)->required();
  add_spec_flags(*conv, co.spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (throughput->parsed()) {
      if (pmax < 1 || pmax > QuantSpec::kMaxBits || qmax < 1 || qmax > QuantSpec::kMaxBits) {
        fail(Errc::invalid_argument, "--pmax and --qmax must be in [1, 8]");
      }
      const auto cells = throughput_grid(tp_spec, pmax, qmax);
      if (tp_format == "csv") {
        out << throughput_csv(cells);
      } else {
        out << throughput_json(tp_spec, cells).dump(2) << '\n';
      }
      return kOk;
    }
    if (verify->parsed()) {
      vo.level = parse_level(level);
      const VerifyReport report = run_verify(vo);
      out << to_json(report).dump(2) << '\n';
      return report.failures == 0 ? kOk : kVerifyFailed;
    }
    if (bench->parsed()) {
      const Json report = run_bench(bo);
      out << report.dump(2) << '\n';
      return report["validated"].get<bool>() ? kOk : kVerifyFailed;
    }
    if (conv->parsed()) {
      const Tensor input = read_tensor_file(co.input);
      const Tensor kernel = read_tensor_file(co.kernel);
      write_tensor_file(co.output, run_conv(input, kernel, co.spec));
      return kOk;
    }
  } catch (const Error& e) {
    err << "packconv: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace packconv::cli
