// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include "packconv/tensor.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <string>

#include "packconv/errors.hpp"
#include "packconv/packing.hpp"

namespace packconv {
namespace {

std::size_t element_count(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>{});
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<std::int64_t> data, int bitwidth,
               bool is_signed)
    : shape_(std::move(shape)), data_(std::move(data)), bitwidth_(bitwidth), signed_(is_signed) {
  if (element_count(shape_) != data_.size()) {
    fail(Errc::shape, "tensor shape holds " + std::to_string(element_count(shape_)) +
                          " elements but data has " + std::to_string(data_.size()));
  }
}

Tensor::Tensor(std::vector<std::size_t> shape, int bitwidth, bool is_signed)
    : shape_(std::move(shape)), bitwidth_(bitwidth), signed_(is_signed) {
  data_.assign(element_count(shape_), 0);
}

void Tensor::validate() const {
  for (auto d : shape_) {
    if (d == 0) fail(Errc::shape, "tensor dimensions must be positive");
  }
  if (element_count(shape_) != data_.size()) fail(Errc::shape, "tensor shape/data mismatch");
  QuantSeq{data_, bitwidth_, signed_}.validate();
}

int bits_to_hold(const std::vector<std::int64_t>& values, bool is_signed) {
  int bits = 1;
  for (auto v : values) {
    int need = 0;
    if (is_signed) {
      // v >= 0 needs bit_width(v) + 1; v < 0 needs bit_width(~v) + 1.
      const auto mag = static_cast<std::uint64_t>(v < 0 ? ~v : v);
      need = static_cast<int>(std::bit_width(mag)) + 1;
    } else {
      if (v < 0) fail(Errc::range, "negative value in unsigned tensor");
      need = std::max(1, static_cast<int>(std::bit_width(static_cast<std::uint64_t>(v))));
    }
    bits = std::max(bits, need);
  }
  return bits;
}

FeatureMap::FeatureMap(Tensor t) : t_(std::move(t)) {
  if (t_.rank() != 3) fail(Errc::shape, "feature map must be rank 3 [C][H][W]");
  t_.validate();
}

KernelTensor::KernelTensor(Tensor t) : t_(std::move(t)) {
  if (t_.rank() != 4) fail(Errc::shape, "kernel must be rank 4 [C_o][C_i][K][K]");
  if (t_.dim(2) != t_.dim(3)) fail(Errc::shape, "kernel must be square");
  t_.validate();
}

}  // namespace packconv
