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

#include "biod/catalog.hpp"

#include "biod/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace biod {

using nlohmann::json;

std::string_view to_string(Aggregation agg) {
  switch (agg) {
  case Aggregation::Count:
    return "count";
  case Aggregation::Sum:
    return "sum";
  case Aggregation::Avg:
    return "avg";
  case Aggregation::Min:
    return "min";
  case Aggregation::Max:
    return "max";
  case Aggregation::CountDistinct:
    return "count_distinct";
  }
  return "count";
}

std::optional<Aggregation> aggregation_from_string(std::string_view name) {
  for (auto agg : {Aggregation::Count, Aggregation::Sum, Aggregation::Avg,
                   Aggregation::Min, Aggregation::Max, Aggregation::CountDistinct}) {
    if (to_string(agg) == name) return agg;
  }
  return std::nullopt;
}

std::string_view to_string(Cardinality c) {
  return c == Cardinality::ManyToOne ? "many-to-one" : "one-to-one";
}

const ColumnDef* TableDef::find_column(std::string_view column) const {
  for (const auto& c : columns) {
    if (c.name == column) return &c;
  }
  return nullptr;
}

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::CATALOG_INVALID, what);
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!alpha(s.front())) return false;
  for (char c : s) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

} // namespace

Catalog::Catalog(std::vector<TableDef> tables, std::vector<JoinEdge> joins,
                 std::vector<MetricDef> metrics, std::vector<DimensionDef> dimensions)
    : tables_(std::move(tables)), joins_(std::move(joins)),
      metrics_(std::move(metrics)), dimensions_(std::move(dimensions)) {
  index();
  validate();
}

void Catalog::index() {
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if (!table_index_.emplace(tables_[i].name, i).second) {
      invalid("duplicate table name '" + tables_[i].name + "'");
    }
  }
  for (std::size_t i = 0; i < metrics_.size(); ++i) {
    if (!metric_index_.emplace(metrics_[i].id, i).second) {
      invalid("duplicate metric id '" + metrics_[i].id + "'");
    }
  }
  for (std::size_t i = 0; i < dimensions_.size(); ++i) {
    if (!dimension_index_.emplace(dimensions_[i].id, i).second) {
      invalid("duplicate dimension id '" + dimensions_[i].id + "'");
    }
  }
}

void Catalog::validate() const {
  for (const auto& t : tables_) {
    if (!is_identifier(t.name)) invalid("table name '" + t.name + "' is not an identifier");
    std::set<std::string_view> seen;
    for (const auto& c : t.columns) {
      if (!is_identifier(c.name)) {
        invalid("column name '" + c.name + "' in table '" + t.name +
                "' is not an identifier");
      }
      if (!seen.insert(c.name).second) {
        invalid("duplicate column '" + c.name + "' in table '" + t.name + "'");
      }
    }
  }

  auto check_ref = [&](const std::string& owner, const std::string& table,
                       const std::string& column) {
    const TableDef* t = find_table(table);
    if (t == nullptr) invalid(owner + " references unknown table '" + table + "'");
    if (t->find_column(column) == nullptr) {
      invalid(owner + " references unknown column '" + table + "." + column + "'");
    }
  };

  for (const auto& m : metrics_) {
    if (m.id.rfind("met:", 0) != 0) invalid("metric id '" + m.id + "' must begin with 'met:'");
    std::string expected = "met:" + std::string(to_string(m.aggregation)) + ":";
    if (m.id.size() <= expected.size() || m.id.rfind(expected, 0) != 0) {
      invalid("metric id '" + m.id + "' does not embed its aggregation '" +
              std::string(to_string(m.aggregation)) + "'");
    }
    check_ref("metric '" + m.id + "'", m.table, m.column);
    if (m.aggregation == Aggregation::Sum || m.aggregation == Aggregation::Avg) {
      auto type = column_type(m.table, m.column);
      if (type != ValueType::Integer && type != ValueType::Float) {
        invalid("metric '" + m.id + "' aggregates non-numeric column with " +
                std::string(to_string(m.aggregation)));
      }
    }
  }

  for (const auto& d : dimensions_) {
    if (d.id.rfind("dim:", 0) != 0 || d.id.size() == 4) {
      invalid("dimension id '" + d.id + "' must begin with 'dim:'");
    }
    check_ref("dimension '" + d.id + "'", d.table, d.column);
  }

  for (const auto& t : tables_) {
    for (const auto& g : t.grain) {
      const DimensionDef* d = find_dimension(g);
      if (d == nullptr) invalid("grain of table '" + t.name + "' names unknown dimension '" + g + "'");
      if (d->table != t.name) {
        invalid("grain dimension '" + g + "' does not belong to table '" + t.name + "'");
      }
    }
  }

  for (const auto& j : joins_) {
    std::string owner = "join " + j.left.table + "." + j.left.column + " = " +
                        j.right.table + "." + j.right.column;
    check_ref(owner, j.left.table, j.left.column);
    check_ref(owner, j.right.table, j.right.column);
    if (j.left.table == j.right.table) invalid(owner + " joins a table to itself");
    if (column_type(j.left.table, j.left.column) !=
        column_type(j.right.table, j.right.column)) {
      invalid(owner + " joins columns of different types");
    }
  }
}

const TableDef* Catalog::find_table(std::string_view name) const {
  auto it = table_index_.find(std::string(name));
  return it == table_index_.end() ? nullptr : &tables_[it->second];
}

const TableDef& Catalog::table(std::string_view name) const {
  const TableDef* t = find_table(name);
  if (t == nullptr) throw Error(ErrorCode::TABLE_MISSING, "unknown table '" + std::string(name) + "'");
  return *t;
}

ValueType Catalog::column_type(std::string_view table, std::string_view column) const {
  return table_def_column(table, column).type;
}

const ColumnDef& Catalog::table_def_column(std::string_view table,
                                           std::string_view column) const {
  const ColumnDef* c = this->table(table).find_column(column);
  if (c == nullptr) {
    throw Error(ErrorCode::TABLE_MISSING,
                "unknown column '" + std::string(table) + "." + std::string(column) + "'");
  }
  return *c;
}

const MetricDef* Catalog::find_metric(std::string_view id) const {
  auto it = metric_index_.find(std::string(id));
  return it == metric_index_.end() ? nullptr : &metrics_[it->second];
}

const DimensionDef* Catalog::find_dimension(std::string_view id) const {
  auto it = dimension_index_.find(std::string(id));
  return it == dimension_index_.end() ? nullptr : &dimensions_[it->second];
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::CATALOG_PARSE, what);
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) malformed(where + " must be an object");
  auto it = obj.find(name);
  if (it == obj.end()) malformed(where + " is missing field '" + name + "'");
  return *it;
}

std::string string_field(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_string()) malformed(where + "." + name + " must be a string");
  return v.get<std::string>();
}

std::string optional_string(const json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) return {};
  if (!it->is_string()) malformed(where + "." + name + " must be a string");
  return it->get<std::string>();
}

const json& array_field(const json& obj, const char* name, const std::string& where,
                        bool required = true) {
  static const json empty = json::array();
  if (!required && obj.find(name) == obj.end()) return empty;
  const json& v = field(obj, name, where);
  if (!v.is_array()) malformed(where + "." + name + " must be an array");
  return v;
}

ColumnRef column_ref(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string()) {
    malformed(where + " must be a [table, column] pair");
  }
  return {v[0].get<std::string>(), v[1].get<std::string>()};
}

} // namespace

Catalog parse_catalog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    malformed(std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("catalog must be a JSON object");

  std::vector<TableDef> tables;
  for (const auto& t : array_field(doc, "tables", "catalog")) {
    TableDef def;
    def.name = string_field(t, "name", "table");
    std::string where = "table '" + def.name + "'";
    for (const auto& g : array_field(t, "grain", where, false)) {
      if (!g.is_string()) malformed(where + ".grain entries must be strings");
      def.grain.push_back(g.get<std::string>());
    }
    for (const auto& c : array_field(t, "columns", where)) {
      ColumnDef col;
      col.name = string_field(c, "name", where + " column");
      std::string cwhere = where + " column '" + col.name + "'";
      std::string type = string_field(c, "type", cwhere);
      auto parsed = value_type_from_string(type);
      if (!parsed) invalid(cwhere + " has unknown type '" + type + "'");
      col.type = *parsed;
      if (auto it = c.find("nullable"); it != c.end()) {
        if (!it->is_boolean()) malformed(cwhere + ".nullable must be a boolean");
        col.nullable = it->get<bool>();
      }
      col.description = optional_string(c, "description", cwhere);
      def.columns.push_back(std::move(col));
    }
    tables.push_back(std::move(def));
  }

  std::vector<JoinEdge> joins;
  for (const auto& j : array_field(doc, "joins", "catalog", false)) {
    JoinEdge edge;
    edge.left = column_ref(field(j, "left", "join"), "join.left");
    edge.right = column_ref(field(j, "right", "join"), "join.right");
    std::string card = optional_string(j, "cardinality", "join");
    if (card.empty() || card == "many-to-one") {
      edge.cardinality = Cardinality::ManyToOne;
    } else if (card == "one-to-one") {
      edge.cardinality = Cardinality::OneToOne;
    } else {
      invalid("join has unknown cardinality '" + card + "'");
    }
    joins.push_back(std::move(edge));
  }

  std::vector<MetricDef> metrics;
  for (const auto& m : array_field(doc, "metrics", "catalog", false)) {
    MetricDef def;
    def.id = string_field(m, "id", "metric");
    std::string where = "metric '" + def.id + "'";
    std::string agg = string_field(m, "aggregation", where);
    auto parsed = aggregation_from_string(agg);
    if (!parsed) invalid(where + " has unknown aggregation '" + agg + "'");
    def.aggregation = *parsed;
    def.table = string_field(m, "table", where);
    def.column = string_field(m, "column", where);
    def.description = optional_string(m, "description", where);
    metrics.push_back(std::move(def));
  }

  std::vector<DimensionDef> dimensions;
  for (const auto& d : array_field(doc, "dimensions", "catalog", false)) {
    DimensionDef def;
    def.id = string_field(d, "id", "dimension");
    std::string where = "dimension '" + def.id + "'";
    def.table = string_field(d, "table", where);
    def.column = string_field(d, "column", where);
    def.description = optional_string(d, "description", where);
    dimensions.push_back(std::move(def));
  }

  return Catalog(std::move(tables), std::move(joins), std::move(metrics),
                 std::move(dimensions));
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::CATALOG_PARSE, "cannot open catalog '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

std::string catalog_to_json(const Catalog& catalog) {
  json doc = json::object();
  json tables = json::array();
  for (const auto& t : catalog.tables()) {
    json cols = json::array();
    for (const auto& c : t.columns) {
      cols.push_back({{"name", c.name},
                      {"type", to_string(c.type)},
                      {"nullable", c.nullable},
                      {"description", c.description}});
    }
    tables.push_back({{"name", t.name}, {"grain", t.grain}, {"columns", cols}});
  }
  json joins = json::array();
  for (const auto& j : catalog.joins()) {
    joins.push_back({{"left", {j.left.table, j.left.column}},
                     {"right", {j.right.table, j.right.column}},
                     {"cardinality", to_string(j.cardinality)}});
  }
  json metrics = json::array();
  for (const auto& m : catalog.metrics()) {
    metrics.push_back({{"id", m.id},
                       {"aggregation", to_string(m.aggregation)},
                       {"table", m.table},
                       {"column", m.column},
                       {"description", m.description}});
  }
  json dimensions = json::array();
  for (const auto& d : catalog.dimensions()) {
    dimensions.push_back({{"id", d.id},
                          {"table", d.table},
                          {"column", d.column},
                          {"description", d.description}});
  }
  doc["tables"] = std::move(tables);
  doc["joins"] = std::move(joins);
  doc["metrics"] = std::move(metrics);
  doc["dimensions"] = std::move(dimensions);
  return doc.dump(2) + "\n";
}

const MetricDef& resolve_metric(const Catalog& catalog, std::string_view id) {
  const MetricDef* m = catalog.find_metric(id);
  if (m == nullptr) throw Error(ErrorCode::UNKNOWN_METRIC, "unknown metric '" + std::string(id) + "'");
  return *m;
}

const DimensionDef& resolve_dimension(const Catalog& catalog, std::string_view id) {
  const DimensionDef* d = catalog.find_dimension(id);
  if (d == nullptr) {
    throw Error(ErrorCode::UNKNOWN_DIMENSION, "unknown dimension '" + std::string(id) + "'");
  }
  return *d;
}

const std::vector<MetricDef>& list_metrics(const Catalog& catalog) { return catalog.metrics(); }

const std::vector<DimensionDef>& list_dimensions(const Catalog& catalog) {
  return catalog.dimensions();
}

} // namespace biod
