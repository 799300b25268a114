// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include "packconv/oracle.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <string>

#include "packconv/errors.hpp"

namespace packconv::oracle {
namespace {

using boost::multiprecision::cpp_int;

std::int64_t narrow(const cpp_int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    fail(Errc::overflow, "reference result " + v.str() + " does not fit 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

std::pair<std::vector<std::int64_t>, OpCount> naive_conv1d(const QuantSeq& f, const QuantSeq& g) {
  if (f.values.empty() || g.values.empty()) fail(Errc::shape, "naive_conv1d: empty sequence");
  const std::size_t out_len = f.size() + g.size() - 1;
  std::vector<cpp_int> acc(out_len);
  OpCount count;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      acc[i + j] += cpp_int(f.values[i]) * g.values[j];
      ++count.scalar_multiplies;
    }
  }
  count.scalar_adds = count.scalar_multiplies - out_len;
  std::vector<std::int64_t> y(out_len);
  for (std::size_t m = 0; m < out_len; ++m) y[m] = narrow(acc[m]);
  return {std::move(y), count};
}

std::pair<OutputMap, OpCount> naive_conv_layer(const FeatureMap& input, const KernelTensor& kernel) {
  if (kernel.in_channels() != input.channels()) fail(Errc::shape, "channel mismatch");
  const std::size_t k = kernel.size();
  if (k > input.height() || k > input.width()) fail(Errc::shape, "kernel larger than input");
  const std::size_t out_h = input.height() - k + 1;
  const std::size_t out_w = input.width() - k + 1;
  const bool any_signed = input.tensor().is_signed() || kernel.tensor().is_signed();

  Tensor out({kernel.out_channels(), out_h, out_w}, 8, any_signed);
  OpCount count;
  for (std::size_t co = 0; co < kernel.out_channels(); ++co) {
    for (std::size_t h = 0; h < out_h; ++h) {
      for (std::size_t w = 0; w < out_w; ++w) {
        cpp_int sum = 0;
        for (std::size_t ci = 0; ci < input.channels(); ++ci) {
          for (std::size_t kh = 0; kh < k; ++kh) {
            for (std::size_t kw = 0; kw < k; ++kw) {
              sum += cpp_int(input.at(ci, h + kh, w + kw)) * kernel.at(co, ci, kh, kw);
              ++count.scalar_multiplies;
            }
          }
        }
        out(co, h, w) = narrow(sum);
      }
    }
  }
  count.scalar_adds = count.scalar_multiplies - out.size();
  const int bits = bits_to_hold(out.data(), any_signed);
  OutputMap result{Tensor(out.shape(), std::move(out.data()), bits, any_signed), 0};
  return {std::move(result), count};
}

}  // namespace packconv::oracle
