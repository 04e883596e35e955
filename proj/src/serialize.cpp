/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include "biod/serialize.hpp"

#include "biod/csv.hpp"

#include <json.hpp>

namespace biod {

std::string serialize_csv(const ResultSet& rs, char separator) {
  std::string out;
  for (std::size_t i = 0; i < rs.fields.size(); ++i) {
    if (i > 0) out += separator;
    append_csv_field(out, rs.fields[i], separator);
  }
  out += '\n';
  for (const auto& row : rs.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += separator;
      append_csv_field(out, format_value(row[i]), separator);
    }
    out += '\n';
  }
  return out;
}

namespace {

void append_json_string(std::string& out, const std::string& s) {
  out += nlohmann::json(s).dump();
}

void append_json_value(std::string& out, const Value& v) {
  if (v.is_null()) {
    out += "null";
    return;
  }
  switch (v.type()) {
  case ValueType::Integer:
  case ValueType::Float:
    out += format_value(v);
    break;
  case ValueType::Boolean:
    out += v.as_boolean() ? "true" : "false";
    break;
  case ValueType::String:
    append_json_string(out, v.as_string());
    break;
  case ValueType::Date:
    append_json_string(out, format_value(v));
    break;
  }
}

} // namespace

std::string serialize_json(const ResultSet& rs) {
  std::string out = "{\"fields\":[";
  for (std::size_t i = 0; i < rs.fields.size(); ++i) {
    if (i > 0) out += ',';
    append_json_string(out, rs.fields[i]);
  }
  out += "],\"rows\":[";
  for (std::size_t r = 0; r < rs.rows.size(); ++r) {
    if (r > 0) out += ',';
    out += '[';
    for (std::size_t i = 0; i < rs.rows[r].size(); ++i) {
      if (i > 0) out += ',';
      append_json_value(out, rs.rows[r][i]);
    }
    out += ']';
  }
  out += "],\"rowCount\":" + std::to_string(rs.rows.size()) + "}";
  return out;
}

} // namespace biod
