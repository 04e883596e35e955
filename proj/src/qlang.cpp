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

#include "biod/qlang.hpp"

#include "biod/error.hpp"

#include <algorithm>
#include <set>

namespace biod {

std::string_view to_string(CompareOp op) {
  switch (op) {
  case CompareOp::Eq:
    return "==";
  case CompareOp::Ne:
    return "!=";
  case CompareOp::Lt:
    return "<";
  case CompareOp::Gt:
    return ">";
  case CompareOp::Le:
    return "<=";
  case CompareOp::Ge:
    return ">=";
  }
  return "==";
}

char separator_char(CsvSeparator sep) {
  switch (sep) {
  case CsvSeparator::Comma:
    return ',';
  case CsvSeparator::Semicolon:
    return ';';
  case CsvSeparator::Tab:
    return '\t';
  }
  return ',';
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool has_outer_space(std::string_view s) {
  return !s.empty() && (is_space(s.front()) || is_space(s.back()));
}

/// An id token is its prefix followed by a non-empty key.
void check_id(std::string_view token, std::string_view prefix, std::string_view param) {
  if (token.size() <= prefix.size() || token.substr(0, prefix.size()) != prefix ||
      has_outer_space(token)) {
    throw Error(ErrorCode::MALFORMED_ID, "'" + std::string(token) + "' in '" +
                                             std::string(param) + "' must be of the form " +
                                             std::string(prefix) + "<name>");
  }
}

const std::string* find_param(const QueryParams& params, std::string_view name) {
  auto it = params.find(name);
  return it == params.end() ? nullptr : &it->second;
}

} // namespace

OutputFormat parse_output_format(const QueryParams& params) {
  OutputFormat format;
  const std::string* kind = find_param(params, "format");
  const std::string* sep = find_param(params, "sep");
  if (kind == nullptr || *kind == "json") {
    format.kind = OutputFormat::Kind::Json;
    if (sep != nullptr) {
      throw Error(ErrorCode::BAD_FORMAT, "'sep' applies only to format=csv");
    }
    return format;
  }
  if (*kind != "csv") {
    throw Error(ErrorCode::BAD_FORMAT, "format must be 'json' or 'csv', got '" + *kind + "'");
  }
  format.kind = OutputFormat::Kind::Csv;
  if (sep == nullptr || *sep == "comma") {
    format.separator = CsvSeparator::Comma;
  } else if (*sep == "semicolon") {
    format.separator = CsvSeparator::Semicolon;
  } else if (*sep == "tab") {
    format.separator = CsvSeparator::Tab;
  } else {
    throw Error(ErrorCode::BAD_FORMAT,
                "sep must be 'comma', 'semicolon' or 'tab', got '" + *sep + "'");
  }
  return format;
}

FilterPredicate split_filter(std::string_view token) {
  if (token.empty() || has_outer_space(token)) {
    throw Error(ErrorCode::MALFORMED_FILTER, "malformed filter '" + std::string(token) + "'");
  }
  std::size_t pos = token.find_first_of("=!<>");
  if (pos == std::string_view::npos) {
    throw Error(ErrorCode::MALFORMED_FILTER,
                "filter '" + std::string(token) + "' has no comparison operator");
  }
  FilterPredicate out;
  std::size_t op_len = 2;
  std::string_view two = token.substr(pos, 2);
  if (two == ">=") {
    out.op = CompareOp::Ge;
  } else if (two == "<=") {
    out.op = CompareOp::Le;
  } else if (two == "==") {
    out.op = CompareOp::Eq;
  } else if (two == "!=") {
    out.op = CompareOp::Ne;
  } else if (token[pos] == '>') {
    out.op = CompareOp::Gt;
    op_len = 1;
  } else if (token[pos] == '<') {
    out.op = CompareOp::Lt;
    op_len = 1;
  } else {
    throw Error(ErrorCode::MALFORMED_FILTER,
                "filter '" + std::string(token) + "' has an incomplete operator");
  }
  std::string_view lhs = token.substr(0, pos);
  if (lhs.empty()) {
    throw Error(ErrorCode::MALFORMED_FILTER,
                "filter '" + std::string(token) + "' has no dimension");
  }
  check_id(lhs, "dim:", "filters");
  out.dimension = std::string(lhs);
  out.literal = std::string(token.substr(pos + op_len));
  return out;
}

Value bind_filter_literal(const FilterPredicate& filter, const Catalog& catalog) {
  const DimensionDef& dim = resolve_dimension(catalog, filter.dimension);
  ValueType type = catalog.column_type(dim.table, dim.column);
  auto value = parse_literal(filter.literal, type);
  if (!value) {
    throw Error(ErrorCode::LITERAL_TYPE, "literal '" + filter.literal + "' in filter on '" +
                                             filter.dimension + "' is not a valid " +
                                             std::string(to_string(type)));
  }
  return *value;
}

FilterPredicate parse_filter(std::string_view token, const Catalog& catalog) {
  FilterPredicate pred = split_filter(token);
  bind_filter_literal(pred, catalog);
  return pred;
}

QueryAst parse_query(const QueryParams& params) {
  QueryAst ast;

  const std::string* metrics = find_param(params, "metrics");
  if (metrics == nullptr || metrics->empty()) {
    throw Error(ErrorCode::MISSING_METRICS, "query must select at least one metric");
  }
  std::set<std::string_view> seen;
  for (auto token : split(*metrics, ',')) {
    check_id(token, "met:", "metrics");
    if (!seen.insert(token).second) {
      throw Error(ErrorCode::DUPLICATE_FIELD, "metric '" + std::string(token) + "' selected twice");
    }
    ast.metrics.emplace_back(token);
  }

  if (const std::string* dims = find_param(params, "dimensions"); dims && !dims->empty()) {
    for (auto token : split(*dims, ',')) {
      check_id(token, "dim:", "dimensions");
      if (!seen.insert(token).second) {
        throw Error(ErrorCode::DUPLICATE_FIELD,
                    "dimension '" + std::string(token) + "' selected twice");
      }
      ast.dimensions.emplace_back(token);
    }
  }

  if (const std::string* filters = find_param(params, "filters"); filters && !filters->empty()) {
    for (auto token : split(*filters, ';')) {
      ast.filters.push_back(split_filter(token));
    }
  }

  if (const std::string* sort = find_param(params, "sort"); sort && !sort->empty()) {
    std::set<std::string_view> sorted;
    for (auto token : split(*sort, ',')) {
      SortKey key;
      if (!token.empty() && token.front() == '-') {
        key.direction = SortDirection::Descending;
        token.remove_prefix(1);
      }
      if (token.rfind("met:", 0) == 0) {
        check_id(token, "met:", "sort");
      } else {
        check_id(token, "dim:", "sort");
      }
      if (!seen.contains(token)) {
        throw Error(ErrorCode::BAD_SORT_KEY,
                    "sort key '" + std::string(token) + "' is not a selected metric or dimension");
      }
      if (!sorted.insert(token).second) {
        throw Error(ErrorCode::DUPLICATE_FIELD, "sort key '" + std::string(token) + "' repeated");
      }
      key.id = std::string(token);
      ast.sort.push_back(std::move(key));
    }
  }

  ast.format = parse_output_format(params);
  return ast;
}

std::string unparse_filter(const FilterPredicate& filter) {
  return filter.dimension + std::string(to_string(filter.op)) + filter.literal;
}

QueryParams unparse_query(const QueryAst& ast) {
  auto join = [](const auto& items, char sep, auto render) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += sep;
      out += render(items[i]);
    }
    return out;
  };
  QueryParams params;
  params["metrics"] = join(ast.metrics, ',', [](const std::string& s) { return s; });
  if (!ast.dimensions.empty()) {
    params["dimensions"] = join(ast.dimensions, ',', [](const std::string& s) { return s; });
  }
  if (!ast.filters.empty()) {
    params["filters"] = join(ast.filters, ';', unparse_filter);
  }
  if (!ast.sort.empty()) {
    params["sort"] = join(ast.sort, ',', [](const SortKey& k) {
      return (k.direction == SortDirection::Descending ? "-" : "") + k.id;
    });
  }
  if (ast.format.kind == OutputFormat::Kind::Csv) {
    params["format"] = "csv";
    switch (ast.format.separator) {
    case CsvSeparator::Comma:
      break;
    case CsvSeparator::Semicolon:
      params["sep"] = "semicolon";
      break;
    case CsvSeparator::Tab:
      params["sep"] = "tab";
      break;
    }
  }
  return params;
}

} // namespace biod
