// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "packconv_cli/commands.hpp"

namespace packconv::cli {

std::string throughput_csv(const std::vector<ThroughputCell>& cells) {
  std::ostringstream out;
  out << "p,q,S,Gb,N,K,ops\n";
  for (const auto& c : cells) {
    out << c.p << ',' << c.q << ',';
    if (c.feasible) {
      out << c.slice_bits << ',' << c.guard_bits << ',' << c.n << ',' << c.k << ',' << c.ops;
    } else {
      out << ",,,,0";
    }
    out << '\n';
  }
  return out.str();
}

Json throughput_json(const MultiplierSpec& spec, const std::vector<ThroughputCell>& cells) {
  Json rows = Json::array();
  for (const auto& c : cells) {
    Json row;
    row["p"] = c.p;
    row["q"] = c.q;
    row["feasible"] = c.feasible;
    if (c.feasible) {
      row["S"] = c.slice_bits;
      row["Gb"] = c.guard_bits;
      row["N"] = c.n;
      row["K"] = c.k;
    } else {
      row["S"] = nullptr;
      row["Gb"] = nullptr;
      row["N"] = nullptr;
      row["K"] = nullptr;
    }
    row["ops"] = c.ops;
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["bitA"] = spec.bit_a;
  doc["bitB"] = spec.bit_b;
  doc["cells"] = std::move(rows);
  return doc;
}

}  // namespace packconv::cli
