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

#include "biod/value.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace biod {

std::string_view to_string(ValueType type) {
  switch (type) {
  case ValueType::Integer:
    return "integer";
  case ValueType::Float:
    return "float";
  case ValueType::String:
    return "string";
  case ValueType::Boolean:
    return "boolean";
  case ValueType::Date:
    return "date";
  }
  return "unknown";
}

std::optional<ValueType> value_type_from_string(std::string_view name) {
  if (name == "integer") return ValueType::Integer;
  if (name == "float") return ValueType::Float;
  if (name == "string") return ValueType::String;
  if (name == "boolean") return ValueType::Boolean;
  if (name == "date") return ValueType::Date;
  return std::nullopt;
}

namespace {

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

int to_int(std::string_view s) {
  int out = 0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

} // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{to_int(y)},
                                  std::chrono::month{static_cast<unsigned>(to_int(m))},
                                  std::chrono::day{static_cast<unsigned>(to_int(d))}};
  if (!ymd.ok()) return std::nullopt;
  return Date{std::chrono::sys_days(ymd).time_since_epoch().count()};
}

std::string format_date(Date date) {
  std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{date.days}}};
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf.data();
}

ValueType Value::type() const {
  switch (data_.index()) {
  case 1:
    return ValueType::Integer;
  case 2:
    return ValueType::Float;
  case 3:
    return ValueType::String;
  case 4:
    return ValueType::Boolean;
  default:
    return ValueType::Date;
  }
}

bool operator==(const Value& a, const Value& b) {
  return a.data_.index() == b.data_.index() && compare_values(a, b) == 0;
}

std::weak_ordering compare_values(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) {
    return a.is_null() <=> b.is_null();
  }
  if (a.storage().index() != b.storage().index()) {
    return a.storage().index() <=> b.storage().index();
  }
  return std::visit(
      [&](const auto& lhs) -> std::weak_ordering {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.storage());
        if constexpr (std::is_same_v<T, std::monostate>) {
          return std::weak_ordering::equivalent;
        } else if constexpr (std::is_same_v<T, double>) {
          if (lhs < rhs) return std::weak_ordering::less;
          if (rhs < lhs) return std::weak_ordering::greater;
          return std::weak_ordering::equivalent;
        } else if constexpr (std::is_same_v<T, std::string>) {
          int c = lhs.compare(rhs);
          return c < 0 ? std::weak_ordering::less
                       : (c > 0 ? std::weak_ordering::greater
                                : std::weak_ordering::equivalent);
        } else {
          return lhs <=> rhs;
        }
      },
      a.storage());
}

std::optional<Value> parse_literal(std::string_view text, ValueType type) {
  switch (type) {
  case ValueType::Integer: {
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
      return std::nullopt;
    }
    return Value::integer(v);
  }
  case ValueType::Float: {
    double v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size() ||
        !std::isfinite(v)) {
      return std::nullopt;
    }
    return Value::floating(v);
  }
  case ValueType::String:
    return Value::string(std::string(text));
  case ValueType::Boolean:
    if (text == "t") return Value::boolean(true);
    if (text == "f") return Value::boolean(false);
    return std::nullopt;
  case ValueType::Date:
    if (auto d = parse_date(text)) return Value::date(*d);
    return std::nullopt;
  }
  return std::nullopt;
}

std::string format_float(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

std::string format_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_float(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "t" : "f";
        } else {
          return format_date(x);
        }
      },
      v.storage());
}

} // namespace biod
