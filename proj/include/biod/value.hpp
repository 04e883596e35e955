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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace biod {

/// Column value types. The numeric tags are the on-disk type tags.
enum class ValueType : std::uint8_t {
  Integer = 1,
  Float = 2,
  String = 3,
  Boolean = 4,
  Date = 5,
};

std::string_view to_string(ValueType type);
std::optional<ValueType> value_type_from_string(std::string_view name);

/// Calendar day, stored as days since 1970-01-01.
struct Date {
  std::int64_t days = 0;

  auto operator<=>(const Date&) const = default;
};

std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

/// A single typed cell, or null.
class Value {
public:
  using Storage =
      std::variant<std::monostate, std::int64_t, double, std::string, bool, Date>;

  Value() = default;
  static Value null() { return Value(); }
  static Value integer(std::int64_t v) { return Value(Storage(v)); }
  static Value floating(double v) { return Value(Storage(v)); }
  static Value string(std::string v) { return Value(Storage(std::move(v))); }
  static Value boolean(bool v) { return Value(Storage(v)); }
  static Value date(Date v) { return Value(Storage(v)); }

  bool is_null() const { return std::holds_alternative<std::monostate>(data_); }
  /// Type of a non-null value.
  ValueType type() const;

  std::int64_t as_integer() const { return std::get<std::int64_t>(data_); }
  double as_float() const { return std::get<double>(data_); }
  const std::string& as_string() const { return std::get<std::string>(data_); }
  bool as_boolean() const { return std::get<bool>(data_); }
  Date as_date() const { return std::get<Date>(data_); }

  const Storage& storage() const { return data_; }

  /// Structural equality: same type and same payload. Floats compare with
  /// operator== so 0.0 equals -0.0.
  friend bool operator==(const Value& a, const Value& b);

private:
  explicit Value(Storage data) : data_(std::move(data)) {}

  Storage data_;
};

/// Total order used for grouping and sorting: non-null values of the same
/// type compare naturally, null sorts after every non-null value.
std::weak_ordering compare_values(const Value& a, const Value& b);

struct ValueLess {
  bool operator()(const Value& a, const Value& b) const {
    return compare_values(a, b) < 0;
  }
};

/// Parses a filter literal. Booleans are exactly "t" or "f", dates are
/// YYYY-MM-DD, floats must be finite. Returns nullopt on mismatch.
std::optional<Value> parse_literal(std::string_view text, ValueType type);

/// Shortest decimal text that round-trips to the same double.
std::string format_float(double v);

/// Text rendering shared by the CSV serializer and error messages.
/// Null renders as the empty string.
std::string format_value(const Value& v);

} // namespace biod
