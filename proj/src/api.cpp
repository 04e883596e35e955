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

#include "biod/api.hpp"

#include "biod/planner.hpp"
#include "biod/serialize.hpp"

#include <json.hpp>

namespace biod {

int http_status(ErrorCode code) {
  switch (code) {
  case ErrorCode::UNKNOWN_METRIC:
  case ErrorCode::UNKNOWN_DIMENSION:
  case ErrorCode::MISSING_METRICS:
  case ErrorCode::MALFORMED_ID:
  case ErrorCode::MALFORMED_FILTER:
  case ErrorCode::DUPLICATE_FIELD:
  case ErrorCode::BAD_FORMAT:
  case ErrorCode::BAD_SORT_KEY:
  case ErrorCode::LITERAL_TYPE:
  case ErrorCode::UNREACHABLE_DIMENSION:
  case ErrorCode::UNREACHABLE_FILTER:
  case ErrorCode::AMBIGUOUS_JOIN:
  case ErrorCode::NO_JOIN_PATH:
  case ErrorCode::OVERFLOW:
  case ErrorCode::TABLE_MISSING:
  case ErrorCode::BAD_QUERY_STRING:
  case ErrorCode::DUPLICATE_PARAMETER:
  case ErrorCode::REQUEST_TOO_LARGE:
  case ErrorCode::ROW_LIMIT_EXCEEDED:
    return 400;
  case ErrorCode::NOT_FOUND:
    return 404;
  case ErrorCode::CATALOG_PARSE:
  case ErrorCode::CATALOG_INVALID:
  case ErrorCode::CSV_PARSE:
  case ErrorCode::TYPE_COERCE:
  case ErrorCode::MISSING_COLUMN:
  case ErrorCode::NULL_VIOLATION:
  case ErrorCode::GRAIN_VIOLATION:
  case ErrorCode::JOIN_KEY_DUPLICATE:
  case ErrorCode::MAPPING_INVALID:
  case ErrorCode::MISSING_SOURCE:
  case ErrorCode::BAD_MAGIC:
  case ErrorCode::CHECKSUM_MISMATCH:
  case ErrorCode::TRUNCATED:
  case ErrorCode::IO_ERROR:
  case ErrorCode::INTERNAL:
    return 500;
  }
  return 500;
}

Response error_response(const Error& error) {
  nlohmann::json body = {
      {"error", {{"code", std::string(to_string(error.code()))}, {"message", error.what()}}}};
  // Messages can echo raw client bytes, which need not be valid UTF-8.
  return Response{http_status(error.code()), std::string(kJsonContentType),
                  body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)};
}

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

Response serialize(const ResultSet& rs, const OutputFormat& format) {
  if (format.kind == OutputFormat::Kind::Csv) {
    return Response{200, std::string(kCsvContentType),
                    serialize_csv(rs, separator_char(format.separator))};
  }
  return Response{200, std::string(kJsonContentType), serialize_json(rs)};
}

} // namespace

std::string percent_decode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    int hi = i + 2 < text.size() ? hex_digit(text[i + 1]) : -1;
    int lo = i + 2 < text.size() ? hex_digit(text[i + 2]) : -1;
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::BAD_QUERY_STRING, "invalid percent-encoding in query string");
    }
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

QueryParams parse_query_string(std::string_view raw) {
  QueryParams params;
  std::size_t start = 0;
  while (start <= raw.size()) {
    std::size_t end = raw.find('&', start);
    if (end == std::string_view::npos) end = raw.size();
    std::string_view pair = raw.substr(start, end - start);
    start = end + 1;
    if (pair.empty()) continue;
    std::size_t eq = pair.find('=');
    std::string key = percent_decode(pair.substr(0, eq));
    std::string value = eq == std::string_view::npos ? "" : percent_decode(pair.substr(eq + 1));
    if (!params.emplace(key, std::move(value)).second) {
      throw Error(ErrorCode::DUPLICATE_PARAMETER, "query parameter '" + key + "' given twice");
    }
  }
  return params;
}

ResultSet metrics_listing(const Catalog& catalog) {
  ResultSet rs;
  rs.fields = {"id", "aggregation", "table", "column", "type", "description"};
  for (const MetricDef& m : list_metrics(catalog)) {
    rs.rows.push_back({Value::string(m.id), Value::string(std::string(to_string(m.aggregation))),
                       Value::string(m.table), Value::string(m.column),
                       Value::string(std::string(to_string(catalog.column_type(m.table, m.column)))),
                       Value::string(m.description)});
  }
  return rs;
}

ResultSet dimensions_listing(const Catalog& catalog) {
  ResultSet rs;
  rs.fields = {"id", "table", "column", "type", "description"};
  for (const DimensionDef& d : list_dimensions(catalog)) {
    rs.rows.push_back({Value::string(d.id), Value::string(d.table), Value::string(d.column),
                       Value::string(std::string(to_string(catalog.column_type(d.table, d.column)))),
                       Value::string(d.description)});
  }
  return rs;
}

Service::Service(std::shared_ptr<const Store> store, ServiceOptions options)
    : store_(std::move(store)), options_(options) {}

ResultSet Service::run_query(const QueryAst& ast) const {
  LogicalPlan lp = plan(ast, store_->catalog);
  ResultSet rs = execute(lp, store_->tables);
  if (options_.max_rows && rs.row_count() > *options_.max_rows) {
    throw Error(ErrorCode::ROW_LIMIT_EXCEEDED,
                "result has " + std::to_string(rs.row_count()) + " rows, the server limit is " +
                    std::to_string(*options_.max_rows) + "; request coarser dimensions");
  }
  return rs;
}

Response Service::handle_data(const QueryParams& params) const {
  QueryAst ast = parse_query(params);
  return serialize(run_query(ast), ast.format);
}

Response Service::handle_metrics(const QueryParams& params) const {
  return serialize(metrics_listing(store_->catalog), parse_output_format(params));
}

Response Service::handle_dimensions(const QueryParams& params) const {
  return serialize(dimensions_listing(store_->catalog), parse_output_format(params));
}

Response Service::handle(const Request& request) const {
  try {
    if (request.query.size() > options_.max_query_bytes) {
      throw Error(ErrorCode::REQUEST_TOO_LARGE,
                  "query string exceeds " + std::to_string(options_.max_query_bytes) + " bytes");
    }
    if (request.method != "GET") {
      throw Error(ErrorCode::NOT_FOUND, "no " + request.method + " route for '" + request.path + "'");
    }
    if (request.path == "/api/v1/data") return handle_data(parse_query_string(request.query));
    if (request.path == "/api/v1/metrics") return handle_metrics(parse_query_string(request.query));
    if (request.path == "/api/v1/dimensions") {
      return handle_dimensions(parse_query_string(request.query));
    }
    throw Error(ErrorCode::NOT_FOUND, "no route for '" + request.path + "'");
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return error_response(Error(ErrorCode::INTERNAL, e.what()));
  }
}

} // namespace biod
