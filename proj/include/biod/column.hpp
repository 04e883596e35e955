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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace biod {

/// One bit per row, LSB-first within each byte; a set bit marks a null.
class NullBitmap {
public:
  NullBitmap() = default;
  explicit NullBitmap(std::size_t size) : bytes_((size + 7) / 8, 0), size_(size) {}
  NullBitmap(std::vector<std::uint8_t> bytes, std::size_t size)
      : bytes_(std::move(bytes)), size_(size) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (bytes_[i >> 3] >> (i & 7)) & 1u; }
  void set(std::size_t i) { bytes_[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7)); }
  void push_back(bool is_null);
  void append(const NullBitmap& other);
  std::size_t count() const;
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  bool operator==(const NullBitmap&) const = default;

private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

/// Immutable typed column. Integers and dates share int64 storage (dates as
/// days since the epoch); booleans are stored one byte per row in memory.
/// Null slots hold a zero/empty placeholder so equality is structural.
class Column {
public:
  using Storage = std::variant<std::vector<std::int64_t>, std::vector<double>,
                               std::vector<std::string>, std::vector<std::uint8_t>>;

  Column() : Column(ValueType::Integer) {}
  explicit Column(ValueType type);
  Column(ValueType type, Storage data, NullBitmap nulls);

  ValueType type() const { return type_; }
  std::size_t size() const { return nulls_.size(); }
  bool is_null(std::size_t row) const { return nulls_.test(row); }
  const NullBitmap& nulls() const { return nulls_; }
  Value value(std::size_t row) const;

  std::span<const std::int64_t> ints() const { return std::get<0>(data_); }
  std::span<const double> floats() const { return std::get<1>(data_); }
  const std::vector<std::string>& strings() const { return std::get<2>(data_); }
  std::span<const std::uint8_t> bools() const { return std::get<3>(data_); }
  const Storage& storage() const { return data_; }

  void append(const Column& other);

  bool operator==(const Column&) const = default;

private:
  ValueType type_;
  Storage data_;
  NullBitmap nulls_;
};

class ColumnBuilder {
public:
  explicit ColumnBuilder(ValueType type);

  void append_null();
  /// Appends a value of the builder's type, or null.
  void append(const Value& v);
  void append_integer(std::int64_t v);
  void append_float(double v);
  void append_string(std::string v);
  void append_boolean(bool v);
  void append_date(Date v);
  void reserve(std::size_t n);

  std::size_t size() const { return nulls_.size(); }
  Column finish() &&;

private:
  ValueType type_;
  Column::Storage data_;
  NullBitmap nulls_;
};

/// Named, immutable set of equally long columns.
class ColumnTable {
public:
  ColumnTable() = default;
  ColumnTable(std::string name, std::vector<std::string> column_names,
              std::vector<Column> columns);

  const std::string& name() const { return name_; }
  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }
  const std::vector<std::string>& column_names() const { return names_; }
  const Column& column(std::size_t i) const { return columns_[i]; }
  const Column* find_column(std::string_view name) const;
  /// Throws TABLE_MISSING when absent.
  const Column& column(std::string_view name) const;

  /// Row-wise concatenation of tables with identical column layout.
  static ColumnTable concat(std::string name, const std::vector<ColumnTable>& parts);

  bool operator==(const ColumnTable&) const = default;

private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
};

} // namespace biod
