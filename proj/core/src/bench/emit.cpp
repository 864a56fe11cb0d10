// Copyright 2026 The DQJ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqj/bench/emit.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dqj/errors.hpp"
#include "json.hpp"

namespace dqj::bench {
namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::vector<std::string> row_fields(const ResultRow& r) {
  return {r.method,
          std::to_string(r.order),
          std::to_string(r.n_grid),
          std::to_string(r.n_traj),
          r.model,
          fmt_double(r.gamma),
          fmt_double(r.T),
          r.metric,
          fmt_double(r.value),
          fmt_double(r.stderr_value),
          fmt_double(r.wallclock_s),
          std::to_string(r.seed),
          r.version};
}

ResultRow row_from_fields(const std::vector<std::string>& f) {
  if (f.size() != result_columns().size()) {
    throw IoError("result row has " + std::to_string(f.size()) + " fields");
  }
  ResultRow r;
  try {
    r.method = f[0];
    r.order = std::stoi(f[1]);
    r.n_grid = std::stoi(f[2]);
    r.n_traj = std::stoull(f[3]);
    r.model = f[4];
    r.gamma = std::stod(f[5]);
    r.T = std::stod(f[6]);
    r.metric = f[7];
    r.value = std::stod(f[8]);
    r.stderr_value = std::stod(f[9]);
    r.wallclock_s = std::stod(f[10]);
    r.seed = std::stoull(f[11]);
    r.version = f[12];
  } catch (const std::logic_error& e) {
    throw IoError(std::string("malformed result row: ") + e.what());
  }
  return r;
}

}  // namespace

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> columns = {
      "method", "order", "n_grid",  "n_traj",      "model", "gamma",  "T",
      "metric", "value", "stderr", "wallclock_s", "seed",  "version"};
  return columns;
}

std::string format_rows(const std::vector<ResultRow>& rows, OutputFormat format) {
  std::ostringstream out;
  const auto& cols = result_columns();
  if (format == OutputFormat::kCsv) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : rows) {
      const auto f = row_fields(r);
      for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_field(f[i]);
      out << '\n';
    }
    return out.str();
  }
  // Numbers are written by hand so every float keeps 17 significant digits.
  out << "[";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto f = row_fields(rows[k]);
    out << (k ? ",\n  {" : "\n  {");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const bool text = i == 0 || i == 4 || i == 7 || i == 12;
      out << (i ? ", " : "") << json_string(cols[i]) << ": " << (text ? json_string(f[i]) : f[i]);
    }
    out << "}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
  return out.str();
}

std::vector<ResultRow> parse_rows(std::string_view text, OutputFormat format) {
  std::vector<ResultRow> rows;
  const auto& cols = result_columns();
  if (format == OutputFormat::kCsv) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != cols) {
      throw IoError("CSV header does not match the result columns");
    }
    while (std::getline(in, line)) {
      if (!line.empty()) rows.push_back(row_from_fields(split_csv_line(line)));
    }
    return rows;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("result JSON does not parse: ") + e.what());
  }
  if (!doc.is_array()) throw IoError("result JSON must be an array");
  for (const auto& obj : doc) {
    std::vector<std::string> f;
    for (const auto& c : cols) {
      if (!obj.contains(c)) throw IoError("result JSON row lacks '" + c + "'");
      const auto& v = obj.at(c);
      if (v.is_string()) {
        f.push_back(v.get<std::string>());
      } else if (v.is_number_float()) {
        f.push_back(fmt_double(v.get<double>()));
      } else {
        f.push_back(v.dump());
      }
    }
    rows.push_back(row_from_fields(f));
  }
  return rows;
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path) {
  const std::string text = format_rows(rows, format);
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace dqj::bench
