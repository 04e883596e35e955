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

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace biod {

// Every error code the service can report, grouped by the module that raises it.
#define BIOD_ERROR_CODES(X)                                                    \
  /* catalog */                                                                \
  X(CATALOG_PARSE)                                                             \
  X(CATALOG_INVALID)                                                           \
  X(UNKNOWN_METRIC)                                                            \
  X(UNKNOWN_DIMENSION)                                                         \
  /* qlang */                                                                  \
  X(MISSING_METRICS)                                                           \
  X(MALFORMED_ID)                                                              \
  X(MALFORMED_FILTER)                                                          \
  X(DUPLICATE_FIELD)                                                           \
  X(BAD_FORMAT)                                                                \
  X(BAD_SORT_KEY)                                                              \
  X(LITERAL_TYPE)                                                              \
  /* planner */                                                                \
  X(UNREACHABLE_DIMENSION)                                                     \
  X(UNREACHABLE_FILTER)                                                        \
  X(AMBIGUOUS_JOIN)                                                            \
  X(NO_JOIN_PATH)                                                              \
  /* engine */                                                                 \
  X(OVERFLOW)                                                                  \
  X(TABLE_MISSING)                                                             \
  /* store */                                                                  \
  X(CSV_PARSE)                                                                 \
  X(TYPE_COERCE)                                                               \
  X(MISSING_COLUMN)                                                            \
  X(NULL_VIOLATION)                                                            \
  X(GRAIN_VIOLATION)                                                           \
  X(JOIN_KEY_DUPLICATE)                                                        \
  X(MAPPING_INVALID)                                                           \
  X(MISSING_SOURCE)                                                            \
  X(BAD_MAGIC)                                                                 \
  X(CHECKSUM_MISMATCH)                                                         \
  X(TRUNCATED)                                                                 \
  X(IO_ERROR)                                                                  \
  /* api */                                                                    \
  X(BAD_QUERY_STRING)                                                          \
  X(DUPLICATE_PARAMETER)                                                       \
  X(REQUEST_TOO_LARGE)                                                         \
  X(ROW_LIMIT_EXCEEDED)                                                        \
  X(NOT_FOUND)                                                                 \
  X(INTERNAL)

enum class ErrorCode {
#define BIOD_ENUM_ENTRY(name) name,
  BIOD_ERROR_CODES(BIOD_ENUM_ENTRY)
#undef BIOD_ENUM_ENTRY
};

inline constexpr std::array kAllErrorCodes = {
#define BIOD_ARRAY_ENTRY(name) ErrorCode::name,
    BIOD_ERROR_CODES(BIOD_ARRAY_ENTRY)
#undef BIOD_ARRAY_ENTRY
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by every module. The code is the stable,
/// client-visible identifier; the message is for humans.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace biod
