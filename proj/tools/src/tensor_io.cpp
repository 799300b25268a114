// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include "packconv/errors.hpp"
#include "packconv_cli/commands.hpp"

namespace packconv::cli {
namespace {

const Json& member(const Json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) fail(Errc::invalid_argument, std::string("missing key \"") + key + "\"");
  return *it;
}

}  // namespace

Tensor tensor_from_json(const Json& doc) {
  if (!doc.is_object()) fail(Errc::invalid_argument, "tensor document must be a JSON object");
  const Json& shape = member(doc, "shape");
  const Json& bitwidth = member(doc, "bitwidth");
  const Json& is_signed = member(doc, "signed");
  const Json& data = member(doc, "data");
  if (!shape.is_array() || shape.empty()) {
    fail(Errc::invalid_argument, "\"shape\" must be a non-empty array");
  }
  std::vector<std::size_t> dims;
  for (const auto& d : shape) {
    if (!d.is_number_integer() || d.get<std::int64_t>() <= 0) {
      fail(Errc::invalid_argument, "\"shape\" entries must be positive integers");
    }
    dims.push_back(d.get<std::size_t>());
  }
  if (!bitwidth.is_number_integer()) fail(Errc::invalid_argument, "\"bitwidth\" must be an integer");
  if (!is_signed.is_boolean()) fail(Errc::invalid_argument, "\"signed\" must be a boolean");
  if (!data.is_array()) fail(Errc::invalid_argument, "\"data\" must be an array");
  std::vector<std::int64_t> values;
  values.reserve(data.size());
  for (const auto& v : data) {
    if (!v.is_number_integer()) fail(Errc::invalid_argument, "\"data\" entries must be integers");
    values.push_back(v.get<std::int64_t>());
  }
  Tensor t(std::move(dims), std::move(values), bitwidth.get<int>(), is_signed.get<bool>());
  t.validate();
  return t;
}

Json tensor_to_json(const Tensor& t) {
  Json doc;
  doc["shape"] = t.shape();
  doc["bitwidth"] = t.bitwidth();
  doc["signed"] = t.is_signed();
  doc["data"] = t.data();
  return doc;
}

Tensor read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::invalid_argument, path.string() + ": cannot open for reading");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(Errc::invalid_argument, path.string() + ": " + e.what());
  }
  try {
    return tensor_from_json(doc);
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

void write_tensor_file(const std::filesystem::path& path, const Tensor& t) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::invalid_argument, path.string() + ": cannot open for writing");
  out << tensor_to_json(t).dump() << '\n';
  if (!out) fail(Errc::invalid_argument, path.string() + ": write failed");
}

}  // namespace packconv::cli
