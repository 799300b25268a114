// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace packconv {

/// Dense row-major integer array tagged with the quantization of its elements.
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::vector<std::size_t> shape, std::vector<std::int64_t> data, int bitwidth,
         bool is_signed);
  /// Zero-filled tensor of the given shape.
  Tensor(std::vector<std::size_t> shape, int bitwidth, bool is_signed);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const noexcept { return data_.size(); }

  const std::vector<std::int64_t>& data() const noexcept { return data_; }
  std::vector<std::int64_t>& data() noexcept { return data_; }

  int bitwidth() const noexcept { return bitwidth_; }
  bool is_signed() const noexcept { return signed_; }

  /// Checks shape/data agreement and that every element is in range.
  void validate() const;

  template <typename... Index>
  std::int64_t& operator()(Index... idx) {
    return data_[offset(std::array<std::size_t, sizeof...(Index)>{static_cast<std::size_t>(idx)...})];
  }
  template <typename... Index>
  std::int64_t operator()(Index... idx) const {
    return data_[offset(std::array<std::size_t, sizeof...(Index)>{static_cast<std::size_t>(idx)...})];
  }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  template <std::size_t R>
  std::size_t offset(const std::array<std::size_t, R>& idx) const noexcept {
    std::size_t off = 0;
    for (std::size_t a = 0; a < R; ++a) off = off * shape_[a] + idx[a];
    return off;
  }

  std::vector<std::size_t> shape_;
  std::vector<std::int64_t> data_;
  int bitwidth_ = 8;
  bool signed_ = false;
};

/// Smallest bitwidth holding every element of `values` under the signedness.
int bits_to_hold(const std::vector<std::int64_t>& values, bool is_signed);

/// I[C_i][H_i][W_i]
class FeatureMap {
 public:
  explicit FeatureMap(Tensor t);
  const Tensor& tensor() const noexcept { return t_; }
  std::size_t channels() const noexcept { return t_.dim(0); }
  std::size_t height() const noexcept { return t_.dim(1); }
  std::size_t width() const noexcept { return t_.dim(2); }
  std::int64_t at(std::size_t c, std::size_t h, std::size_t w) const { return t_(c, h, w); }

 private:
  Tensor t_;
};

/// W[C_o][C_i][K][K]
class KernelTensor {
 public:
  explicit KernelTensor(Tensor t);
  const Tensor& tensor() const noexcept { return t_; }
  std::size_t out_channels() const noexcept { return t_.dim(0); }
  std::size_t in_channels() const noexcept { return t_.dim(1); }
  std::size_t size() const noexcept { return t_.dim(2); }
  std::int64_t at(std::size_t o, std::size_t i, std::size_t kh, std::size_t kw) const {
    return t_(o, i, kh, kw);
  }

 private:
  Tensor t_;
};

/// O[C_o][H_o][W_o] plus the wide multiplies spent producing it.
struct OutputMap {
  Tensor values;
  std::uint64_t wide_multiplies = 0;
};

}  // namespace packconv
