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

#pragma once

#include "biod/value.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace biod {

enum class Aggregation { Count, Sum, Avg, Min, Max, CountDistinct };

std::string_view to_string(Aggregation agg);
std::optional<Aggregation> aggregation_from_string(std::string_view name);

enum class Cardinality { ManyToOne, OneToOne };

std::string_view to_string(Cardinality c);

struct ColumnDef {
  std::string name;
  ValueType type = ValueType::Integer;
  bool nullable = true;
  std::string description;

  bool operator==(const ColumnDef&) const = default;
};

struct TableDef {
  std::string name;
  std::vector<ColumnDef> columns;
  /// Dimension ids whose tuple is unique per row.
  std::vector<std::string> grain;

  const ColumnDef* find_column(std::string_view column) const;

  bool operator==(const TableDef&) const = default;
};

struct ColumnRef {
  std::string table;
  std::string column;

  bool operator==(const ColumnRef&) const = default;
};

/// Declared join between two columns. Cardinality is read left to right:
/// many-to-one means each left row matches at most one right row.
struct JoinEdge {
  ColumnRef left;
  ColumnRef right;
  Cardinality cardinality = Cardinality::ManyToOne;

  bool operator==(const JoinEdge&) const = default;
};

struct MetricDef {
  std::string id;
  Aggregation aggregation = Aggregation::Count;
  std::string table;
  std::string column;
  std::string description;

  bool operator==(const MetricDef&) const = default;
};

struct DimensionDef {
  std::string id;
  std::string table;
  std::string column;
  std::string description;

  bool operator==(const DimensionDef&) const = default;
};

/// The data dictionary: tables, join graph, and the metric and dimension
/// identifiers clients query by. Immutable once constructed; the constructor
/// validates every invariant and throws CATALOG_INVALID on the first failure.
class Catalog {
public:
  Catalog() = default;
  Catalog(std::vector<TableDef> tables, std::vector<JoinEdge> joins,
          std::vector<MetricDef> metrics, std::vector<DimensionDef> dimensions);

  const std::vector<TableDef>& tables() const { return tables_; }
  const std::vector<JoinEdge>& joins() const { return joins_; }
  const std::vector<MetricDef>& metrics() const { return metrics_; }
  const std::vector<DimensionDef>& dimensions() const { return dimensions_; }

  const TableDef* find_table(std::string_view name) const;
  const TableDef& table(std::string_view name) const;
  /// Type of a column known to exist.
  ValueType column_type(std::string_view table, std::string_view column) const;
  const ColumnDef& table_def_column(std::string_view table, std::string_view column) const;

  const MetricDef* find_metric(std::string_view id) const;
  const DimensionDef* find_dimension(std::string_view id) const;

  bool operator==(const Catalog& other) const {
    return tables_ == other.tables_ && joins_ == other.joins_ &&
           metrics_ == other.metrics_ && dimensions_ == other.dimensions_;
  }

private:
  void validate() const;
  void index();

  std::vector<TableDef> tables_;
  std::vector<JoinEdge> joins_;
  std::vector<MetricDef> metrics_;
  std::vector<DimensionDef> dimensions_;

  std::unordered_map<std::string, std::size_t> table_index_;
  std::unordered_map<std::string, std::size_t> metric_index_;
  std::unordered_map<std::string, std::size_t> dimension_index_;
};

Catalog load_catalog(const std::filesystem::path& path);
Catalog parse_catalog(std::string_view json_text);
/// Canonical JSON rendering; parse_catalog(catalog_to_json(c)) == c.
std::string catalog_to_json(const Catalog& catalog);

const MetricDef& resolve_metric(const Catalog& catalog, std::string_view id);
const DimensionDef& resolve_dimension(const Catalog& catalog, std::string_view id);

const std::vector<MetricDef>& list_metrics(const Catalog& catalog);
const std::vector<DimensionDef>& list_dimensions(const Catalog& catalog);

} // namespace biod
