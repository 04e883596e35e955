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

#include "biod/error.hpp"
#include "biod/qlang.hpp"
#include "biod/store.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace biod {

struct Request {
  std::string method = "GET";
  std::string path;
  /// Raw query string without the leading '?', still percent-encoded.
  std::string query;
};

struct Response {
  int status = 200;
  std::string content_type;
  std::string body;
};

inline constexpr std::string_view kJsonContentType = "application/json";
inline constexpr std::string_view kCsvContentType = "text/csv; charset=utf-8";

/// HTTP status for every error code; exhaustive by construction.
int http_status(ErrorCode code);

/// Body {"error":{"code","message"}} with the mapped status.
Response error_response(const Error& error);

/// RFC 3986 percent-decoding. '+' is kept literally. Throws BAD_QUERY_STRING.
std::string percent_decode(std::string_view text);

/// Splits on '&' and the first '=' of each pair, then decodes. Throws
/// BAD_QUERY_STRING or DUPLICATE_PARAMETER.
QueryParams parse_query_string(std::string_view raw);

/// The data dictionary as result sets.
ResultSet metrics_listing(const Catalog& catalog);
ResultSet dimensions_listing(const Catalog& catalog);

struct ServiceOptions {
  /// Reject results larger than this many rows.
  std::optional<std::size_t> max_rows;
  std::size_t max_query_bytes = 64 * 1024;
};

/// Stateless request handling over an immutable store. Safe to call from
/// many threads at once.
class Service {
public:
  explicit Service(std::shared_ptr<const Store> store, ServiceOptions options = {});

  Response handle(const Request& request) const;

  Response handle_data(const QueryParams& params) const;
  Response handle_metrics(const QueryParams& params) const;
  Response handle_dimensions(const QueryParams& params) const;

  /// Parse, plan and execute without serializing.
  ResultSet run_query(const QueryAst& ast) const;

  const Store& store() const { return *store_; }

private:
  std::shared_ptr<const Store> store_;
  ServiceOptions options_;
};

} // namespace biod
