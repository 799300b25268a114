// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include "packconv/errors.hpp"

namespace packconv {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::infeasible: return "infeasible";
    case Errc::overflow: return "overflow";
    case Errc::range: return "range";
    case Errc::shape: return "shape";
    case Errc::invalid_argument: return "invalid argument";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace packconv
