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

#include "biod/store.hpp"

#include "biod/csv.hpp"
#include "biod/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>
#include <zlib.h>

namespace biod {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IO_ERROR, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IO_ERROR, "cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IO_ERROR, "short write to '" + path.string() + "'");
}

// -- mappings ----------------------------------------------------------------

namespace {

[[noreturn]] void bad_mapping(const std::string& what) {
  throw Error(ErrorCode::MAPPING_INVALID, what);
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) bad_mapping(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) bad_mapping(where + " must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::string required_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) bad_mapping(where + " needs a string '" + key + "'");
  return it->get<std::string>();
}

} // namespace

namespace {

bool glob_segment(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

} // namespace

bool glob_match(std::string_view pattern, std::string_view text) {
  // Wildcards never cross '/': match one path segment at a time.
  while (true) {
    auto pe = pattern.find('/');
    auto te = text.find('/');
    if ((pe == std::string_view::npos) != (te == std::string_view::npos)) return false;
    if (!glob_segment(pattern.substr(0, pe), text.substr(0, te))) return false;
    if (pe == std::string_view::npos) return true;
    pattern.remove_prefix(pe + 1);
    text.remove_prefix(te + 1);
  }
}

std::vector<MappingSpec> parse_mappings(std::string_view json_text, const Catalog& catalog) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad_mapping(std::string("mapping file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("mappings") || !doc["mappings"].is_array()) {
    bad_mapping("mapping file must be an object with a 'mappings' array");
  }

  std::vector<MappingSpec> out;
  for (const auto& entry : doc["mappings"]) {
    if (!entry.is_object()) bad_mapping("mapping entries must be objects");
    MappingSpec spec;
    spec.table = required_string(entry, "table", "mapping");
    spec.pattern = required_string(entry, "pattern", "mapping for '" + spec.table + "'");
    std::string where = "mapping '" + spec.pattern + "' for table '" + spec.table + "'";
    const TableDef* table = catalog.find_table(spec.table);
    if (table == nullptr) bad_mapping(where + " targets a table missing from the catalog");

    std::vector<std::string> default_nulls{""};
    if (auto it = entry.find("null_tokens"); it != entry.end()) {
      default_nulls = string_list(*it, where + ".null_tokens");
    }

    auto cols = entry.find("columns");
    if (cols == entry.end() || !cols->is_array()) bad_mapping(where + " needs a 'columns' array");
    std::map<std::string, ColumnMapping> given;
    for (const auto& c : *cols) {
      if (!c.is_object()) bad_mapping(where + " column entries must be objects");
      ColumnMapping m;
      m.target = required_string(c, "target", where + " column");
      const ColumnDef* def = table->find_column(m.target);
      if (def == nullptr) bad_mapping(where + " maps unknown column '" + m.target + "'");
      auto src = c.find("source");
      if (src == c.end()) bad_mapping(where + " column '" + m.target + "' needs 'source' (or null)");
      if (src->is_string()) {
        m.source = src->get<std::string>();
      } else if (!src->is_null()) {
        bad_mapping(where + " column '" + m.target + "' source must be a string or null");
      }
      m.type = def->type;
      if (auto t = c.find("type"); t != c.end()) {
        if (!t->is_string() || value_type_from_string(t->get<std::string>()) != def->type) {
          bad_mapping(where + " column '" + m.target + "' type disagrees with the catalog");
        }
      }
      m.nullable = def->nullable;
      if (!m.source && !m.nullable) {
        bad_mapping(where + " declares non-nullable column '" + m.target + "' constant-null");
      }
      m.null_tokens = default_nulls;
      if (auto nt = c.find("null_tokens"); nt != c.end()) {
        m.null_tokens = string_list(*nt, where + " column '" + m.target + "' null_tokens");
      }
      if (!given.emplace(m.target, m).second) {
        bad_mapping(where + " maps column '" + m.target + "' twice");
      }
    }
    for (const auto& def : table->columns) {
      auto it = given.find(def.name);
      if (it == given.end()) {
        bad_mapping(where + " leaves column '" + def.name + "' unmapped");
      }
      spec.columns.push_back(it->second);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<MappingSpec> load_mappings(const fs::path& path, const Catalog& catalog) {
  return parse_mappings(read_file(path), catalog);
}

std::string mappings_to_json(const std::vector<MappingSpec>& mappings) {
  json list = json::array();
  for (const auto& m : mappings) {
    json cols = json::array();
    for (const auto& c : m.columns) {
      json col = {{"target", c.target},
                  {"type", to_string(c.type)},
                  {"null_tokens", c.null_tokens}};
      col["source"] = c.source ? json(*c.source) : json(nullptr);
      cols.push_back(std::move(col));
    }
    list.push_back({{"table", m.table}, {"pattern", m.pattern}, {"columns", cols}});
  }
  return json{{"mappings", list}}.dump(2) + "\n";
}

// -- ingestion ---------------------------------------------------------------

namespace {

std::optional<Value> coerce(std::string_view text, ValueType type) {
  switch (type) {
  case ValueType::Boolean:
    if (text == "t" || text == "true" || text == "1") return Value::boolean(true);
    if (text == "f" || text == "false" || text == "0") return Value::boolean(false);
    return std::nullopt;
  case ValueType::String:
    if (!is_valid_utf8(text)) return std::nullopt;
    return Value::string(std::string(text));
  default:
    return parse_literal(text, type);
  }
}

} // namespace

ColumnTable ingest_csv_text(std::string_view text, const MappingSpec& mapping,
                            std::string_view source_name) {
  CsvDocument doc;
  try {
    doc = parse_csv(text);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(source_name) + ": " + e.what());
  }

  std::map<std::string_view, std::size_t> header;
  for (std::size_t i = 0; i < doc.header.size(); ++i) {
    if (!header.emplace(doc.header[i], i).second) {
      throw Error(ErrorCode::CSV_PARSE, std::string(source_name) + ": duplicate header '" +
                                            doc.header[i] + "'");
    }
  }

  std::vector<std::string> names;
  std::vector<Column> columns;
  for (const ColumnMapping& m : mapping.columns) {
    ColumnBuilder builder(m.type);
    builder.reserve(doc.records.size());
    names.push_back(m.target);
    if (!m.source) {
      for (std::size_t r = 0; r < doc.records.size(); ++r) builder.append_null();
      columns.push_back(std::move(builder).finish());
      continue;
    }
    auto h = header.find(*m.source);
    if (h == header.end()) {
      throw Error(ErrorCode::MISSING_COLUMN, std::string(source_name) + ": source column '" +
                                                 *m.source + "' for '" + mapping.table + "." +
                                                 m.target + "' is not in the header");
    }
    for (std::size_t r = 0; r < doc.records.size(); ++r) {
      const std::string& cell = doc.records[r][h->second];
      auto position = [&] {
        return std::string(source_name) + " record " + std::to_string(r + 1) + ", column '" +
               *m.source + "'";
      };
      if (std::find(m.null_tokens.begin(), m.null_tokens.end(), cell) != m.null_tokens.end()) {
        if (!m.nullable) {
          throw Error(ErrorCode::NULL_VIOLATION,
                      position() + ": null in non-nullable column '" + m.target + "'");
        }
        builder.append_null();
        continue;
      }
      auto value = coerce(cell, m.type);
      if (!value) {
        throw Error(ErrorCode::TYPE_COERCE, position() + ": '" + cell + "' is not a valid " +
                                                std::string(to_string(m.type)));
      }
      builder.append(*value);
    }
    columns.push_back(std::move(builder).finish());
  }
  return ColumnTable(mapping.table, std::move(names), std::move(columns));
}

ColumnTable ingest_csv(const fs::path& file, const MappingSpec& mapping) {
  return ingest_csv_text(read_file(file), mapping, file.filename().string());
}

namespace {

struct TupleLess {
  bool operator()(const std::vector<Value>& a, const std::vector<Value>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto c = compare_values(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

std::string render_tuple(const std::vector<Value>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ", ";
    out += t[i].is_null() ? "null" : format_value(t[i]);
  }
  return out + ")";
}

} // namespace

void check_grain(const Catalog& catalog, const ColumnTable& table) {
  const TableDef& def = catalog.table(table.name());
  if (def.grain.empty()) return;
  std::vector<const Column*> cols;
  for (const auto& id : def.grain) {
    cols.push_back(&table.column(resolve_dimension(catalog, id).column));
  }
  std::set<std::vector<Value>, TupleLess> seen;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    std::vector<Value> key;
    for (const Column* c : cols) key.push_back(c->value(r));
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::GRAIN_VIOLATION, "table '" + table.name() + "' row " +
                                                  std::to_string(r + 1) +
                                                  " repeats grain tuple " + render_tuple(key));
    }
  }
}

void check_join_keys(const Catalog& catalog, const TableMap& tables) {
  auto unique = [&](const ColumnRef& ref) {
    auto it = tables.find(ref.table);
    if (it == tables.end()) return;
    const Column& col = it->second.column(ref.column);
    std::set<Value, ValueLess> seen;
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (col.is_null(r)) continue;
      Value v = col.value(r);
      if (!seen.insert(v).second) {
        throw Error(ErrorCode::JOIN_KEY_DUPLICATE,
                    "join key " + ref.table + "." + ref.column + " repeats value '" +
                        format_value(v) + "'");
      }
    }
  };
  for (const JoinEdge& j : catalog.joins()) {
    unique(j.right);
    if (j.cardinality == Cardinality::OneToOne) unique(j.left);
  }
}

// -- column files ------------------------------------------------------------

std::uint32_t crc32(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  const auto* data = reinterpret_cast<const Bytef*>(bytes.data());
  std::size_t left = bytes.size();
  while (left > 0) {
    auto chunk = static_cast<uInt>(std::min<std::size_t>(left, 1u << 30));
    crc = ::crc32(crc, data, chunk);
    data += chunk;
    left -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

namespace {

constexpr std::string_view kMagic = "BIODCOL1";

template <class T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF));
  }
}

class Reader {
public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <class T>
  T get_le() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= std::uint64_t{static_cast<unsigned char>(bytes_[pos_ + i])} << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }

  std::string_view take(std::size_t n) {
    need(n);
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

private:
  void need(std::size_t n) const {
    if (n > remaining()) throw Error(ErrorCode::TRUNCATED, "column file ends early");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> to_bytes(std::string_view s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

void check_padding(const std::vector<std::uint8_t>& bits, std::uint64_t n, const char* what) {
  if (n % 8 != 0 && (bits.back() >> (n % 8)) != 0) {
    throw Error(ErrorCode::TRUNCATED, std::string("column file has stray padding bits in ") + what);
  }
}

} // namespace

std::string encode_column(const Column& column) {
  std::string out(kMagic);
  const std::uint64_t n = column.size();
  out.push_back(static_cast<char>(column.type()));
  put_le<std::uint64_t>(out, n);
  const auto& bitmap = column.nulls().bytes();
  out.append(bitmap.begin(), bitmap.end());
  switch (column.type()) {
  case ValueType::Integer:
  case ValueType::Date:
    for (auto v : column.ints()) put_le<std::uint64_t>(out, static_cast<std::uint64_t>(v));
    break;
  case ValueType::Float:
    for (auto v : column.floats()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    break;
  case ValueType::String:
    for (const auto& s : column.strings()) {
      put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
      out += s;
    }
    break;
  case ValueType::Boolean: {
    std::string packed((n + 7) / 8, '\0');
    auto bools = column.bools();
    for (std::size_t i = 0; i < n; ++i) {
      if (bools[i]) packed[i >> 3] = static_cast<char>(packed[i >> 3] | (1 << (i & 7)));
    }
    out += packed;
    break;
  }
  }
  put_le<std::uint32_t>(out, crc32(out));
  return out;
}

Column decode_column(std::string_view bytes) {
  std::string_view head = bytes.substr(0, kMagic.size());
  if (head != kMagic.substr(0, head.size())) {
    throw Error(ErrorCode::BAD_MAGIC, "not a column file (bad magic)");
  }
  if (bytes.size() < kMagic.size() + 1 + 8 + 4) {
    throw Error(ErrorCode::TRUNCATED, "column file is shorter than its header");
  }
  std::string_view body = bytes.substr(0, bytes.size() - 4);
  Reader trailer(bytes.substr(bytes.size() - 4));
  if (trailer.get_le<std::uint32_t>() != crc32(body)) {
    throw Error(ErrorCode::CHECKSUM_MISMATCH, "column file checksum mismatch");
  }

  Reader in(body);
  in.take(kMagic.size());
  auto tag = in.get_le<std::uint8_t>();
  if (tag < 1 || tag > 5) throw Error(ErrorCode::BAD_MAGIC, "unknown column type tag " + std::to_string(tag));
  auto type = static_cast<ValueType>(tag);
  auto n = in.get_le<std::uint64_t>();
  // Every row needs at least one bit, so a row count beyond this is corrupt.
  if (n / 8 > in.remaining()) throw Error(ErrorCode::TRUNCATED, "row count exceeds file size");
  const std::size_t rows = static_cast<std::size_t>(n);
  auto bitmap = to_bytes(in.take((rows + 7) / 8));
  if (rows > 0) check_padding(bitmap, n, "null bitmap");
  NullBitmap nulls(std::move(bitmap), rows);

  Column::Storage data;
  switch (type) {
  case ValueType::Integer:
  case ValueType::Date: {
    if (rows > in.remaining() / 8) throw Error(ErrorCode::TRUNCATED, "column file ends early");
    std::vector<std::int64_t> v(rows);
    for (auto& x : v) x = static_cast<std::int64_t>(in.get_le<std::uint64_t>());
    data = std::move(v);
    break;
  }
  case ValueType::Float: {
    if (rows > in.remaining() / 8) throw Error(ErrorCode::TRUNCATED, "column file ends early");
    std::vector<double> v(rows);
    for (auto& x : v) x = std::bit_cast<double>(in.get_le<std::uint64_t>());
    data = std::move(v);
    break;
  }
  case ValueType::String: {
    if (rows > in.remaining() / 4) throw Error(ErrorCode::TRUNCATED, "column file ends early");
    std::vector<std::string> v(rows);
    for (auto& x : v) {
      auto len = in.get_le<std::uint32_t>();
      x = std::string(in.take(len));
    }
    data = std::move(v);
    break;
  }
  case ValueType::Boolean: {
    auto packed = to_bytes(in.take((rows + 7) / 8));
    if (rows > 0) check_padding(packed, n, "boolean values");
    std::vector<std::uint8_t> v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (packed[i >> 3] >> (i & 7)) & 1u;
    data = std::move(v);
    break;
  }
  }
  if (in.remaining() != 0) throw Error(ErrorCode::TRUNCATED, "column file has trailing bytes");
  return Column(type, std::move(data), std::move(nulls));
}

void write_column_file(const fs::path& path, const Column& column) {
  write_file(path, encode_column(column));
}

Column read_column_file(const fs::path& path) { return decode_column(read_file(path)); }

// -- store -------------------------------------------------------------------

namespace {

std::string hex32(std::uint32_t v) {
  std::array<char, 9> buf{};
  std::snprintf(buf.data(), buf.size(), "%08x", v);
  return buf.data();
}

std::uint32_t parse_hex32(const std::string& s) {
  std::uint32_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (ec != std::errc() || end != s.data() + s.size() || s.size() != 8) {
    throw Error(ErrorCode::IO_ERROR, "malformed checksum '" + s + "' in manifest");
  }
  return v;
}

/// Bytes of a column file without its trailing CRC. The manifest checksums
/// cover these; a CRC over a whole file would always equal the CRC-32
/// residue and detect nothing.
std::string_view column_body(std::string_view file) {
  return file.substr(0, file.size() < 4 ? 0 : file.size() - 4);
}

std::vector<fs::path> matching_files(const fs::path& root, const std::string& pattern) {
  std::vector<std::pair<std::string, fs::path>> found;
  if (!fs::is_directory(root)) {
    throw Error(ErrorCode::MISSING_SOURCE, "source directory '" + root.string() + "' not found");
  }
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string rel = entry.path().lexically_relative(root).generic_string();
    if (glob_match(pattern, rel)) found.emplace_back(rel, entry.path());
  }
  std::sort(found.begin(), found.end());
  std::vector<fs::path> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::string manifest_to_json(const StoreManifest& m) {
  json tables = json::array();
  for (const auto& t : m.tables) {
    json cols = json::array();
    for (const auto& c : t.columns) {
      cols.push_back({{"name", c.name}, {"path", c.path}, {"checksum", hex32(c.checksum)}});
    }
    tables.push_back({{"name", t.name},
                      {"rows", t.rows},
                      {"checksum", hex32(t.checksum)},
                      {"columns", cols}});
  }
  return json{{"catalog", m.catalog_path}, {"tables", tables}}.dump(2) + "\n";
}

StoreManifest manifest_from_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    StoreManifest m;
    m.catalog_path = doc.at("catalog").get<std::string>();
    for (const auto& t : doc.at("tables")) {
      ManifestTable table;
      table.name = t.at("name").get<std::string>();
      table.rows = t.at("rows").get<std::uint64_t>();
      table.checksum = parse_hex32(t.at("checksum").get<std::string>());
      for (const auto& c : t.at("columns")) {
        table.columns.push_back({c.at("name").get<std::string>(), c.at("path").get<std::string>(),
                                 parse_hex32(c.at("checksum").get<std::string>())});
      }
      m.tables.push_back(std::move(table));
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IO_ERROR, std::string("malformed store manifest: ") + e.what());
  }
}

} // namespace

const ManifestTable* StoreManifest::find_table(std::string_view name) const {
  for (const auto& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

StoreManifest build_store(const Catalog& catalog, const std::vector<MappingSpec>& mappings,
                          const fs::path& source_dir, const fs::path& out_dir) {
  TableMap tables;
  for (const TableDef& def : catalog.tables()) {
    std::vector<ColumnTable> fragments;
    bool mapped = false;
    for (const MappingSpec& m : mappings) {
      if (m.table != def.name) continue;
      mapped = true;
      auto files = matching_files(source_dir, m.pattern);
      if (files.empty()) {
        throw Error(ErrorCode::MISSING_SOURCE, "no source file matches '" + m.pattern +
                                                   "' for table '" + def.name + "'");
      }
      for (const auto& f : files) fragments.push_back(ingest_csv(f, m));
    }
    if (!mapped) {
      throw Error(ErrorCode::MAPPING_INVALID, "table '" + def.name + "' has no source mapping");
    }
    ColumnTable table = ColumnTable::concat(def.name, fragments);
    check_grain(catalog, table);
    tables.emplace(def.name, std::move(table));
  }
  check_join_keys(catalog, tables);

  StoreManifest manifest;
  manifest.catalog_path = "catalog.json";
  fs::create_directories(out_dir);
  write_file(out_dir / manifest.catalog_path, catalog_to_json(catalog));
  for (const TableDef& def : catalog.tables()) {
    const ColumnTable& table = tables.at(def.name);
    ManifestTable entry;
    entry.name = def.name;
    entry.rows = table.row_count();
    std::string all_bytes;
    for (std::size_t i = 0; i < table.column_count(); ++i) {
      std::string bytes = encode_column(table.column(i));
      std::string rel = "tables/" + def.name + "/" + table.column_names()[i] + ".col";
      write_file(out_dir / rel, bytes);
      entry.columns.push_back({table.column_names()[i], rel, crc32(column_body(bytes))});
      all_bytes += column_body(bytes);
    }
    entry.checksum = crc32(all_bytes);
    manifest.tables.push_back(std::move(entry));
  }
  write_file(out_dir / "manifest.json", manifest_to_json(manifest));
  return manifest;
}

Store load_store(const fs::path& dir) {
  Store store;
  store.manifest = manifest_from_json(read_file(dir / "manifest.json"));
  store.catalog = load_catalog(dir / store.manifest.catalog_path);
  for (const TableDef& def : store.catalog.tables()) {
    const ManifestTable* entry = store.manifest.find_table(def.name);
    if (entry == nullptr) {
      throw Error(ErrorCode::TABLE_MISSING, "store has no data for table '" + def.name + "'");
    }
    std::vector<std::string> names;
    std::vector<Column> columns;
    std::string all_bytes;
    for (const ColumnDef& cdef : def.columns) {
      auto it = std::find_if(entry->columns.begin(), entry->columns.end(),
                             [&](const ManifestColumn& c) { return c.name == cdef.name; });
      if (it == entry->columns.end()) {
        throw Error(ErrorCode::TABLE_MISSING,
                    "store has no data for column '" + def.name + "." + cdef.name + "'");
      }
      std::string bytes = read_file(dir / it->path);
      if (crc32(column_body(bytes)) != it->checksum) {
        throw Error(ErrorCode::CHECKSUM_MISMATCH,
                    "column file '" + it->path + "' does not match the manifest checksum");
      }
      Column col = decode_column(bytes);
      if (col.type() != cdef.type) {
        throw Error(ErrorCode::BAD_MAGIC, "column file '" + it->path + "' holds " +
                                              std::string(to_string(col.type())) +
                                              ", catalog declares " +
                                              std::string(to_string(cdef.type)));
      }
      if (col.size() != entry->rows) {
        throw Error(ErrorCode::TRUNCATED, "column file '" + it->path + "' has " +
                                              std::to_string(col.size()) + " rows, manifest says " +
                                              std::to_string(entry->rows));
      }
      all_bytes += column_body(bytes);
      names.push_back(cdef.name);
      columns.push_back(std::move(col));
    }
    if (crc32(all_bytes) != entry->checksum) {
      throw Error(ErrorCode::CHECKSUM_MISMATCH, "table '" + def.name + "' checksum mismatch");
    }
    store.tables.emplace(def.name, ColumnTable(def.name, std::move(names), std::move(columns)));
  }
  return store;
}

} // namespace biod
