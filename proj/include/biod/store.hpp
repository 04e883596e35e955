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
#include "biod/column.hpp"
#include "biod/engine.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biod {

// -- source mappings ---------------------------------------------------------

/// How one target column is filled from a source file.
struct ColumnMapping {
  std::string target;
  /// Source header name; nullopt declares the column constant-null.
  std::optional<std::string> source;
  ValueType type = ValueType::String;
  bool nullable = true;
  /// Source texts that mean null.
  std::vector<std::string> null_tokens;

  bool operator==(const ColumnMapping&) const = default;
};

/// One source vintage of a table: every file matching `pattern` (relative to
/// the source directory, `*` and `?` wildcards) is read with these columns.
/// A table whose source layout changed over the years has one entry per
/// layout.
struct MappingSpec {
  std::string pattern;
  std::string table;
  /// Target columns in catalog order.
  std::vector<ColumnMapping> columns;

  bool operator==(const MappingSpec&) const = default;
};

/// Parses a mapping file and completes it from the catalog (types, nullability,
/// column order). Throws MAPPING_INVALID.
std::vector<MappingSpec> parse_mappings(std::string_view json_text, const Catalog& catalog);
std::vector<MappingSpec> load_mappings(const std::filesystem::path& path, const Catalog& catalog);
std::string mappings_to_json(const std::vector<MappingSpec>& mappings);

bool glob_match(std::string_view pattern, std::string_view text);

// -- ingestion ---------------------------------------------------------------

/// Parses one CSV source into a fragment of the mapping's target table.
/// Throws CSV_PARSE, MISSING_COLUMN, TYPE_COERCE or NULL_VIOLATION.
ColumnTable ingest_csv_text(std::string_view text, const MappingSpec& mapping,
                            std::string_view source_name = "<memory>");
ColumnTable ingest_csv(const std::filesystem::path& file, const MappingSpec& mapping);

/// Throws GRAIN_VIOLATION when two rows share the table's grain tuple.
void check_grain(const Catalog& catalog, const ColumnTable& table);

/// Throws JOIN_KEY_DUPLICATE when the "one" side of a declared join repeats a key.
void check_join_keys(const Catalog& catalog, const TableMap& tables);

// -- column files ------------------------------------------------------------

std::uint32_t crc32(std::string_view bytes);

/// Binary column layout, little-endian: magic "BIODCOL1", type tag (u8),
/// row count (u64), null bitmap (ceil(n/8) bytes, LSB-first, set = null),
/// values, then CRC32 of everything before it.
std::string encode_column(const Column& column);
/// Throws BAD_MAGIC, CHECKSUM_MISMATCH or TRUNCATED.
Column decode_column(std::string_view bytes);

void write_column_file(const std::filesystem::path& path, const Column& column);
Column read_column_file(const std::filesystem::path& path);

// -- store -------------------------------------------------------------------

struct ManifestColumn {
  std::string name;
  std::string path;
  /// The file's own trailing CRC32, i.e. over everything before it.
  std::uint32_t checksum = 0;

  bool operator==(const ManifestColumn&) const = default;
};

struct ManifestTable {
  std::string name;
  std::uint64_t rows = 0;
  /// CRC32 over the table's column files without their trailing CRCs,
  /// concatenated in column order.
  std::uint32_t checksum = 0;
  std::vector<ManifestColumn> columns;

  bool operator==(const ManifestTable&) const = default;
};

struct StoreManifest {
  std::string catalog_path;
  std::vector<ManifestTable> tables;

  const ManifestTable* find_table(std::string_view name) const;
  bool operator==(const StoreManifest&) const = default;
};

/// Materializes every catalog table from its mapped sources and writes
/// column files, the catalog and manifest.json into `out_dir`.
StoreManifest build_store(const Catalog& catalog, const std::vector<MappingSpec>& mappings,
                          const std::filesystem::path& source_dir,
                          const std::filesystem::path& out_dir);

/// A built store opened read-only.
struct Store {
  Catalog catalog;
  TableMap tables;
  StoreManifest manifest;
};

/// Opens a built store, verifying every checksum against the manifest.
Store load_store(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace biod
