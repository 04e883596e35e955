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

#include "biod/column.hpp"
#include "biod/planner.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace biod {

using TableMap = std::map<std::string, ColumnTable, std::less<>>;

/// Query output: dimension fields first, then metric fields.
struct ResultSet {
  std::vector<std::string> fields;
  std::size_t dimension_count = 0;
  std::vector<std::vector<Value>> rows;

  std::size_t row_count() const { return rows.size(); }
  bool operator==(const ResultSet&) const = default;
};

/// Folds one group's values. Nulls are skipped; over zero non-null values
/// every aggregation yields null except count and count_distinct (0).
/// Integer sums are checked and throw OVERFLOW.
Value aggregate_fold(Aggregation aggregation, std::span<const Value> values);

/// Stable sort by the explicit keys (nulls last ascending, first descending),
/// then by the dimension tuple ascending.
ResultSet sort_result(ResultSet rs, const std::vector<SortKey>& keys);

/// For each fact row, the matching row of the path's target table, or -1 when
/// a key is null or missing at any hop.
std::vector<std::int64_t> join_rows(const ColumnTable& fact, const JoinPath& path,
                                    const TableMap& store);

/// Per-fact-row values of `target_column` reached through `path`; rows that
/// miss at any hop yield null.
std::vector<Value> join_materialize(const ColumnTable& fact, const JoinPath& path,
                                    std::string_view target_column, const TableMap& store);

struct ExecuteOptions {
  /// Run independent subplans on separate threads.
  bool parallel = true;
};

/// Aggregates every subplan to the requested dimensions, merges them with a
/// full outer join on the dimension tuple, and sorts.
ResultSet execute(const LogicalPlan& plan, const TableMap& store, ExecuteOptions options = {});

} // namespace biod
