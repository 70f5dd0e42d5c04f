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

#include "uaslab/table.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "uaslab/errors.hpp"

namespace uaslab {

const char* ResultTable::header() {
  return "experiment,trial,step,delta,a_t,bound_gd,bound_rsgd_exp,bound_rsgd_hp,bound_persgd,notes";
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

void append_cell(std::string& out, const std::optional<double>& v) {
  out.push_back(',');
  if (v.has_value()) out += format_double(*v);
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out = header();
  out.push_back('\n');
  for (const ResultRow& row : rows) {
    out += row.experiment;
    out.push_back(',');
    out += std::to_string(row.trial);
    out.push_back(',');
    out += row.step;
    append_cell(out, row.delta);
    append_cell(out, row.a_t);
    append_cell(out, row.bound_gd);
    append_cell(out, row.bound_rsgd_exp);
    append_cell(out, row.bound_rsgd_hp);
    append_cell(out, row.bound_persgd);
    out.push_back(',');
    out += row.notes;
    out.push_back('\n');
  }
  return out;
}

void ResultTable::write_csv(const std::string& path) const {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw io_error("cannot open for writing: " + path);
  const std::string body = to_csv();
  file.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!file) throw io_error("write failed: " + path);
}

}  // namespace uaslab
