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

#include "biod/catalog.hpp"
#include "biod/qlang.hpp"

#include <string>
#include <vector>

namespace biod {

/// One traversal of a JoinEdge: rows of `from` are matched to rows of `to`
/// by equality of the two columns.
struct JoinHop {
  ColumnRef from;
  ColumnRef to;
  Cardinality cardinality = Cardinality::ManyToOne;
  /// True when the edge is walked left to right as declared.
  bool forward = true;

  bool operator==(const JoinHop&) const = default;
};

/// Hops from a fact table to a target table. Empty when the two coincide.
struct JoinPath {
  std::string from;
  std::string to;
  std::vector<JoinHop> hops;

  bool empty() const { return hops.empty(); }
  bool operator==(const JoinPath&) const = default;
};

/// How a requested dimension is reached from a fact table.
struct DimensionBinding {
  std::string dimension;
  ColumnRef column;
  ValueType type = ValueType::Integer;
  JoinPath path;

  bool local() const { return path.empty(); }
  bool operator==(const DimensionBinding&) const = default;
};

struct BoundFilter {
  FilterPredicate predicate;
  DimensionBinding binding;
  Value literal;

  bool operator==(const BoundFilter&) const = default;
};

struct FactSubplan {
  std::string fact_table;
  std::vector<MetricDef> metrics;
  /// One binding per requested dimension, in request order.
  std::vector<DimensionBinding> dimensions;
  std::vector<BoundFilter> filters;

  bool operator==(const FactSubplan&) const = default;
};

struct LogicalPlan {
  std::vector<FactSubplan> subplans;
  /// Requested dimension ids, shared by every subplan.
  std::vector<std::string> merge_keys;
  std::vector<SortKey> sort;
  /// Output field ids: dimensions in request order, then metrics in request order.
  std::vector<std::string> projection;

  bool operator==(const LogicalPlan&) const = default;
};

/// Unique shortest join path from `from` to `to`. Edges may only be walked in
/// a direction that cannot duplicate rows of `from`: left to right, or either
/// way when one-to-one. Throws NO_JOIN_PATH or AMBIGUOUS_JOIN.
JoinPath resolve_join_path(const Catalog& catalog, std::string_view from, std::string_view to);

/// Groups metrics by fact table, binds every dimension and filter. Throws the
/// catalog lookup errors, LITERAL_TYPE, UNREACHABLE_DIMENSION,
/// UNREACHABLE_FILTER or AMBIGUOUS_JOIN.
LogicalPlan plan(const QueryAst& ast, const Catalog& catalog);

} // namespace biod
