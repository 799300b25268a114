// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include "packconv/conv1d.hpp"
#include "packconv/dnnconv.hpp"
#include "packconv/errors.hpp"
#include "packconv_cli/commands.hpp"

namespace packconv::cli {

Tensor run_conv(const Tensor& input, const Tensor& kernel, const MultiplierSpec& spec) {
  spec.validate();
  if (input.rank() == 1 && kernel.rank() == 1) {
    const QuantSpec quant{input.bitwidth(), kernel.bitwidth(), input.is_signed(),
                          kernel.is_signed()};
    const PackParams params = search_optimal(spec, quant, 1);
    const Conv1DResult r = conv_extended({input.data(), input.bitwidth(), input.is_signed()},
                                         {kernel.data(), kernel.bitwidth(), kernel.is_signed()},
                                         params);
    const bool is_signed = quant.any_signed();
    const int bits = bits_to_hold(r.values, is_signed);
    return Tensor({r.values.size()}, r.values, bits, is_signed);
  }
  if (input.rank() == 3 && kernel.rank() == 4) {
    return conv_layer(FeatureMap(input), KernelTensor(kernel), spec).values;
  }
  fail(Errc::shape, "expected rank-1 input and kernel, or a rank-3 input with a rank-4 kernel");
}

}  // namespace packconv::cli
