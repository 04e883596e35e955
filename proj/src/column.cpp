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

#include "biod/column.hpp"

#include "biod/error.hpp"

#include <bit>

namespace biod {

void NullBitmap::push_back(bool is_null) {
  if ((size_ & 7) == 0) bytes_.push_back(0);
  if (is_null) set(size_);
  ++size_;
}

void NullBitmap::append(const NullBitmap& other) {
  if ((size_ & 7) == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    size_ += other.size_;
    return;
  }
  for (std::size_t i = 0; i < other.size(); ++i) push_back(other.test(i));
}

std::size_t NullBitmap::count() const {
  std::size_t n = 0;
  for (auto b : bytes_) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

namespace {

Column::Storage empty_storage(ValueType type) {
  switch (type) {
  case ValueType::Integer:
  case ValueType::Date:
    return std::vector<std::int64_t>{};
  case ValueType::Float:
    return std::vector<double>{};
  case ValueType::String:
    return std::vector<std::string>{};
  case ValueType::Boolean:
    return std::vector<std::uint8_t>{};
  }
  return std::vector<std::int64_t>{};
}

std::size_t storage_size(const Column::Storage& s) {
  return std::visit([](const auto& v) { return v.size(); }, s);
}

} // namespace

Column::Column(ValueType type) : type_(type), data_(empty_storage(type)) {}

Column::Column(ValueType type, Storage data, NullBitmap nulls)
    : type_(type), data_(std::move(data)), nulls_(std::move(nulls)) {
  if (data_.index() != empty_storage(type).index() || storage_size(data_) != nulls_.size()) {
    throw Error(ErrorCode::INTERNAL, "column storage does not match its type or null bitmap");
  }
}

Value Column::value(std::size_t row) const {
  if (is_null(row)) return Value::null();
  switch (type_) {
  case ValueType::Integer:
    return Value::integer(ints()[row]);
  case ValueType::Float:
    return Value::floating(floats()[row]);
  case ValueType::String:
    return Value::string(strings()[row]);
  case ValueType::Boolean:
    return Value::boolean(bools()[row] != 0);
  case ValueType::Date:
    return Value::date(Date{ints()[row]});
  }
  return Value::null();
}

void Column::append(const Column& other) {
  if (other.type_ != type_) throw Error(ErrorCode::INTERNAL, "cannot append columns of different types");
  std::visit(
      [&](auto& dst) {
        const auto& src = std::get<std::decay_t<decltype(dst)>>(other.data_);
        dst.insert(dst.end(), src.begin(), src.end());
      },
      data_);
  nulls_.append(other.nulls_);
}

ColumnBuilder::ColumnBuilder(ValueType type) : type_(type), data_(empty_storage(type)) {}

void ColumnBuilder::reserve(std::size_t n) {
  std::visit([n](auto& v) { v.reserve(n); }, data_);
}

void ColumnBuilder::append_null() {
  std::visit([](auto& v) { v.emplace_back(); }, data_);
  nulls_.push_back(true);
}

void ColumnBuilder::append_integer(std::int64_t v) {
  std::get<0>(data_).push_back(v);
  nulls_.push_back(false);
}

void ColumnBuilder::append_float(double v) {
  std::get<1>(data_).push_back(v);
  nulls_.push_back(false);
}

void ColumnBuilder::append_string(std::string v) {
  std::get<2>(data_).push_back(std::move(v));
  nulls_.push_back(false);
}

void ColumnBuilder::append_boolean(bool v) {
  std::get<3>(data_).push_back(v ? 1 : 0);
  nulls_.push_back(false);
}

void ColumnBuilder::append_date(Date v) {
  std::get<0>(data_).push_back(v.days);
  nulls_.push_back(false);
}

void ColumnBuilder::append(const Value& v) {
  if (v.is_null()) {
    append_null();
    return;
  }
  if (v.type() != type_) {
    throw Error(ErrorCode::INTERNAL, "value of type " + std::string(to_string(v.type())) +
                                         " appended to " + std::string(to_string(type_)) +
                                         " column");
  }
  switch (type_) {
  case ValueType::Integer:
    append_integer(v.as_integer());
    break;
  case ValueType::Float:
    append_float(v.as_float());
    break;
  case ValueType::String:
    append_string(v.as_string());
    break;
  case ValueType::Boolean:
    append_boolean(v.as_boolean());
    break;
  case ValueType::Date:
    append_date(v.as_date());
    break;
  }
}

Column ColumnBuilder::finish() && {
  return Column(type_, std::move(data_), std::move(nulls_));
}

ColumnTable::ColumnTable(std::string name, std::vector<std::string> column_names,
                         std::vector<Column> columns)
    : name_(std::move(name)), names_(std::move(column_names)), columns_(std::move(columns)) {
  if (names_.size() != columns_.size()) {
    throw Error(ErrorCode::INTERNAL, "table '" + name_ + "' has mismatched column names");
  }
  row_count_ = columns_.empty() ? 0 : columns_.front().size();
  for (const auto& c : columns_) {
    if (c.size() != row_count_) {
      throw Error(ErrorCode::INTERNAL, "columns of table '" + name_ + "' differ in length");
    }
  }
}

const Column* ColumnTable::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return &columns_[i];
  }
  return nullptr;
}

const Column& ColumnTable::column(std::string_view name) const {
  const Column* c = find_column(name);
  if (c == nullptr) {
    throw Error(ErrorCode::TABLE_MISSING,
                "table '" + name_ + "' has no column '" + std::string(name) + "'");
  }
  return *c;
}

ColumnTable ColumnTable::concat(std::string name, const std::vector<ColumnTable>& parts) {
  if (parts.empty()) return ColumnTable(std::move(name), {}, {});
  std::vector<Column> columns;
  for (std::size_t i = 0; i < parts.front().column_count(); ++i) {
    columns.push_back(parts.front().column(i));
  }
  for (std::size_t p = 1; p < parts.size(); ++p) {
    if (parts[p].column_names() != parts.front().column_names()) {
      throw Error(ErrorCode::INTERNAL, "cannot concatenate fragments with different layouts");
    }
    for (std::size_t i = 0; i < columns.size(); ++i) columns[i].append(parts[p].column(i));
  }
  return ColumnTable(std::move(name), parts.front().column_names(), std::move(columns));
}

} // namespace biod
