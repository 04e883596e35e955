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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace biod {

enum class CompareOp { Eq, Ne, Lt, Gt, Le, Ge };

std::string_view to_string(CompareOp op);

/// `<dimension id><op><literal>`. The literal is kept as text; it is
/// type-checked against the dimension's column when bound to a catalog.
struct FilterPredicate {
  std::string dimension;
  CompareOp op = CompareOp::Eq;
  std::string literal;

  bool operator==(const FilterPredicate&) const = default;
};

enum class SortDirection { Ascending, Descending };

struct SortKey {
  std::string id;
  SortDirection direction = SortDirection::Ascending;

  bool operator==(const SortKey&) const = default;
};

enum class CsvSeparator { Comma, Semicolon, Tab };

char separator_char(CsvSeparator sep);

struct OutputFormat {
  enum class Kind { Json, Csv };

  Kind kind = Kind::Json;
  /// Meaningful only when kind == Csv.
  CsvSeparator separator = CsvSeparator::Comma;

  bool operator==(const OutputFormat&) const = default;
};

struct QueryAst {
  std::vector<std::string> metrics;
  std::vector<std::string> dimensions;
  std::vector<FilterPredicate> filters;
  std::vector<SortKey> sort;
  OutputFormat format;

  bool operator==(const QueryAst&) const = default;
};

using QueryParams = std::map<std::string, std::string, std::less<>>;

/// Reads the `format` and `sep` parameters. Shared by the listing endpoints.
OutputFormat parse_output_format(const QueryParams& params);

/// Syntactic parse of already URL-decoded query parameters. Ids are checked
/// only for their `met:`/`dim:` prefix; catalog resolution happens later.
QueryAst parse_query(const QueryParams& params);

/// Splits a single filter token without consulting a catalog.
FilterPredicate split_filter(std::string_view token);

/// Splits a filter token and type-checks it against the catalog.
FilterPredicate parse_filter(std::string_view token, const Catalog& catalog);

/// Type-checks an already split predicate and returns its typed literal.
Value bind_filter_literal(const FilterPredicate& filter, const Catalog& catalog);

/// Renders a QueryAst back into parameters; parse_query(unparse_query(q)) == q.
QueryParams unparse_query(const QueryAst& ast);

std::string unparse_filter(const FilterPredicate& filter);

} // namespace biod
