// Copyright 2026 The uaslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UASLAB_TABLE_HPP_
#define UASLAB_TABLE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace uaslab {

// One table row. `step` holds either the 1-based iterate index or a summary
// kind ("final", "output", "max", "eps_risk", ...). Unused columns stay
// empty; notes use ';'-separated key=value pairs so the CSV never needs
// quoting.
struct ResultRow {
  std::string experiment;
  std::size_t trial = 0;
  std::string step;
  std::optional<double> delta;
  std::optional<double> a_t;
  std::optional<double> bound_gd;
  std::optional<double> bound_rsgd_exp;
  std::optional<double> bound_rsgd_hp;
  std::optional<double> bound_persgd;
  std::string notes;
};

// Fixed-schema result table; rows are kept sorted by (trial, step order) by
// construction. Numbers render via shortest round-trip formatting so a
// (config, seed) pair determines every output byte.
struct ResultTable {
  static const char* header();

  std::vector<ResultRow> rows;

  std::string to_csv() const;
  void write_csv(const std::string& path) const;
};

// Shortest round-trip decimal rendering of a double (locale-independent).
std::string format_double(double value);

}  // namespace uaslab

#endif  // UASLAB_TABLE_HPP_
