// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace packconv {

enum class Errc {
  infeasible,        // no packing geometry satisfies the slice constraints
  overflow,          // value or word does not fit the declared width
  range,             // element outside its quantization range, bad slice read
  shape,             // inconsistent sequence or tensor shapes
  invalid_argument,  // malformed spec / quantization description
};

std::string_view to_string(Errc code) noexcept;

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace packconv
