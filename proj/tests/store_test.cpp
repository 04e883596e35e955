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

#include "biod/fixture.hpp"
#include "biod/store.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

using namespace biod;
using testing_util::TempDir;

namespace {

Catalog pib_catalog() {
  return Catalog({{"ibge_pib",
                   {{"cidade_id", ValueType::Integer, false, ""},
                    {"ano", ValueType::Integer, false, ""},
                    {"pib", ValueType::Float, true, ""},
                    {"ok", ValueType::Boolean, true, ""},
                    {"dia", ValueType::Date, true, ""},
                    {"extra", ValueType::String, true, ""}},
                   {"dim:cidade", "dim:ano"}}},
                 {}, {},
                 {{"dim:cidade", "ibge_pib", "cidade_id", ""}, {"dim:ano", "ibge_pib", "ano", ""}});
}

MappingSpec pib_mapping(std::string pattern = "*.csv") {
  auto col = [](std::string target, std::optional<std::string> source, ValueType t, bool nullable) {
    return ColumnMapping{std::move(target), std::move(source), t, nullable, {"", "NA"}};
  };
  return MappingSpec{std::move(pattern),
                     "ibge_pib",
                     {col("cidade_id", "cod", ValueType::Integer, false),
                      col("ano", "ano", ValueType::Integer, false),
                      col("pib", "pib", ValueType::Float, true),
                      col("ok", "ok", ValueType::Boolean, true),
                      col("dia", "dia", ValueType::Date, true),
                      col("extra", std::nullopt, ValueType::String, true)}};
}

Column random_column(std::mt19937_64& rng, ValueType type, std::size_t rows, double null_rate) {
  ColumnBuilder b(type);
  std::bernoulli_distribution is_null(null_rate);
  for (std::size_t r = 0; r < rows; ++r) {
    if (is_null(rng)) {
      b.append_null();
      continue;
    }
    switch (type) {
    case ValueType::Integer: b.append_integer(static_cast<std::int64_t>(rng())); break;
    case ValueType::Float: {
      double d;
      std::uint64_t bits = rng();
      std::memcpy(&d, &bits, 8);
      b.append_float(std::isfinite(d) ? d : 1.5);
      break;
    }
    case ValueType::String: b.append_string(std::string(rng() % 20, static_cast<char>('a' + rng() % 26))); break;
    case ValueType::Boolean: b.append_boolean(rng() % 2); break;
    case ValueType::Date: b.append_date(Date{static_cast<std::int64_t>(rng() % 100000) - 50000}); break;
    }
  }
  return std::move(b).finish();
}

} // namespace

TEST(Ingest, RenamesCoercesAndNulls) {
  auto t = ingest_csv_text("cod,ano,pib,ok,dia\n"
                           "4106902,2014,1.5,t,2014-01-02\n"
                           "4106903,2014,NA,false,\n"
                           "4106904,2014,,1,2014-01-03\n",
                           pib_mapping());
  ASSERT_EQ(t.row_count(), 3u);
  EXPECT_EQ(t.column_names().front(), "cidade_id");
  EXPECT_EQ(t.column("cidade_id").value(0), Value::integer(4106902));
  EXPECT_EQ(t.column("pib").value(0), Value::floating(1.5));
  EXPECT_TRUE(t.column("pib").is_null(1));
  EXPECT_TRUE(t.column("pib").is_null(2));
  EXPECT_EQ(t.column("ok").value(1), Value::boolean(false));
  EXPECT_EQ(t.column("ok").value(2), Value::boolean(true));
  EXPECT_TRUE(t.column("dia").is_null(1));
  EXPECT_EQ(t.column("extra").nulls().count(), 3u);
}

TEST(Ingest, HeaderOnlyGivesEmptyFragment) {
  auto t = ingest_csv_text("cod,ano,pib,ok,dia\n", pib_mapping());
  EXPECT_EQ(t.row_count(), 0u);
  EXPECT_EQ(t.column_count(), 6u);
}

TEST(Ingest, Errors) {
  EXPECT_BIOD_ERROR(ingest_csv_text("cod,ano,pib,ok,dia\n1,2014,abc,t,\n", pib_mapping()),
                    ErrorCode::TYPE_COERCE);
  EXPECT_BIOD_ERROR(ingest_csv_text("cod,ano,pib,ok,dia\nabc,2014,1,t,\n", pib_mapping()),
                    ErrorCode::TYPE_COERCE);
  EXPECT_BIOD_ERROR(ingest_csv_text("cod,ano,pib,ok,dia\n1,2014,1,maybe,\n", pib_mapping()),
                    ErrorCode::TYPE_COERCE);
  EXPECT_BIOD_ERROR(ingest_csv_text("cod,ano,pib,ok,dia\n1,2014,1,t,2014-13-01\n", pib_mapping()),
                    ErrorCode::TYPE_COERCE);
  EXPECT_BIOD_ERROR(ingest_csv_text("cod,ano,pib,ok\n1,2014,1,t\n", pib_mapping()),
                    ErrorCode::MISSING_COLUMN);
  EXPECT_BIOD_ERROR(ingest_csv_text("cod,ano,pib,ok,dia\n,2014,1,t,\n", pib_mapping()),
                    ErrorCode::NULL_VIOLATION);
  EXPECT_BIOD_ERROR(ingest_csv_text("cod,ano,pib,ok,dia\n1,2014,1,t\n", pib_mapping()),
                    ErrorCode::CSV_PARSE);

  MappingSpec strings = pib_mapping();
  strings.columns.back().source = "cod";
  EXPECT_BIOD_ERROR(ingest_csv_text("cod,ano,pib,ok,dia\n\xFF,2014,1,t,\n", strings),
                    ErrorCode::TYPE_COERCE);

  try {
    ingest_csv_text("cod,ano,pib,ok,dia\n1,2014,1,t,\n2,2014,x,t,\n", pib_mapping(), "pib.csv");
    FAIL();
  } catch (const Error& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("pib.csv record 2"), std::string::npos) << what;
    EXPECT_NE(what.find("'x'"), std::string::npos) << what;
  }
}

TEST(Ingest, GrainViolation) {
  Catalog c = pib_catalog();
  auto ok = ingest_csv_text("cod,ano,pib,ok,dia\n1,2013,,,\n1,2014,,,\n", pib_mapping());
  EXPECT_NO_THROW(check_grain(c, ok));
  auto dup = ingest_csv_text("cod,ano,pib,ok,dia\n1,2014,,,\n2,2014,,,\n1,2014,,,\n", pib_mapping());
  EXPECT_BIOD_ERROR(check_grain(c, dup), ErrorCode::GRAIN_VIOLATION);
}

TEST(Mappings, JsonRoundTripAndValidation) {
  Catalog c = fixture_catalog();
  auto mappings = fixture_mappings(c);
  EXPECT_EQ(parse_mappings(mappings_to_json(mappings), c), mappings);
  EXPECT_BIOD_ERROR(parse_mappings("{", c), ErrorCode::MAPPING_INVALID);
  EXPECT_BIOD_ERROR(parse_mappings(R"({"mappings":[{"pattern":"x","table":"nope","columns":[]}]})", c),
                    ErrorCode::MAPPING_INVALID);
  // Every target column must be mapped.
  EXPECT_BIOD_ERROR(parse_mappings(R"({"mappings":[{"pattern":"x","table":"regiao","columns":[{"target":"id","source":"id"}]}]})", c),
                    ErrorCode::MAPPING_INVALID);
}

TEST(Mappings, ConstantNullAndDefaults) {
  Catalog c({{"regiao", {{"id", ValueType::Integer, false, ""}, {"nome", ValueType::String, true, ""}}, {}}},
            {}, {}, {});
  auto m = parse_mappings(
      R"({"mappings":[{"pattern":"r.csv","table":"regiao","columns":[{"target":"id","source":"codigo"},{"target":"nome","source":null}]}]})",
      c);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].columns[0].source, "codigo");
  EXPECT_EQ(m[0].columns[0].type, ValueType::Integer);
  EXPECT_EQ(m[0].columns[0].null_tokens, std::vector<std::string>{""});
  EXPECT_FALSE(m[0].columns[1].source.has_value());
}

TEST(Mappings, ConstantNullNeedsANullableColumn) {
  EXPECT_BIOD_ERROR(
      parse_mappings(
          R"({"mappings":[{"pattern":"r.csv","table":"regiao","columns":[{"target":"id","source":"id"},{"target":"nome","source":null}]}]})",
          fixture_catalog()),
      ErrorCode::MAPPING_INVALID);
}

TEST(Glob, Matching) {
  EXPECT_TRUE(glob_match("simmc/*/uso-de-rede/*.csv", "simmc/gesac/uso-de-rede/2018-12-30.csv"));
  EXPECT_FALSE(glob_match("simmc/*/uso-de-rede/*.csv", "simmc/a/b/uso-de-rede/x.csv"));
  EXPECT_TRUE(glob_match("lde/escola_????.csv", "lde/escola_2017.csv"));
  EXPECT_FALSE(glob_match("lde/escola_*.csv", "lde/escola_2017.txt"));
  EXPECT_TRUE(glob_match("*", "abc"));
  EXPECT_FALSE(glob_match("*", "a/b"));
}

TEST(ColumnFile, RoundTripsEveryTypeAndShape) {
  std::mt19937_64 rng(3);
  for (auto type : {ValueType::Integer, ValueType::Float, ValueType::String, ValueType::Boolean,
                    ValueType::Date}) {
    for (std::size_t rows : {0, 1, 7, 8, 9, 1000}) {
      for (double nulls : {0.0, 0.3, 1.0}) {
        Column c = random_column(rng, type, rows, nulls);
        EXPECT_EQ(decode_column(encode_column(c)), c);
      }
    }
  }
}

TEST(ColumnFile, LayoutIsBitExact) {
  ColumnBuilder b(ValueType::Boolean);
  b.append_boolean(true);
  b.append_null();
  b.append_boolean(false);
  std::string bytes = encode_column(std::move(b).finish());
  ASSERT_EQ(bytes.size(), 8u + 1 + 8 + 1 + 1 + 4);
  EXPECT_EQ(bytes.substr(0, 8), "BIODCOL1");
  EXPECT_EQ(bytes[8], 4);
  EXPECT_EQ(bytes[9], 3);  // row count, little-endian
  EXPECT_EQ(bytes[17], 0b010);  // null bitmap
  EXPECT_EQ(bytes[18], 0b001);  // values
  std::uint32_t crc = static_cast<std::uint8_t>(bytes[19]) |
                      static_cast<std::uint8_t>(bytes[20]) << 8 |
                      static_cast<std::uint8_t>(bytes[21]) << 16 |
                      static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[22])) << 24;
  EXPECT_EQ(crc, crc32(std::string_view(bytes).substr(0, 19)));
  EXPECT_EQ(crc32("123456789"), 0xCBF43926u);
}

TEST(ColumnFile, CorruptionIsDetected) {
  ColumnBuilder b(ValueType::Integer);
  b.append_integer(42);
  std::string good = encode_column(std::move(b).finish());

  std::string magic = good;
  magic[0] = 'X';
  EXPECT_BIOD_ERROR(decode_column(magic), ErrorCode::BAD_MAGIC);
  std::string flipped = good;
  flipped[20] ^= 1;
  EXPECT_BIOD_ERROR(decode_column(flipped), ErrorCode::CHECKSUM_MISMATCH);
  EXPECT_BIOD_ERROR(decode_column(good.substr(0, 10)), ErrorCode::TRUNCATED);
  EXPECT_BIOD_ERROR(decode_column(""), ErrorCode::TRUNCATED);
  EXPECT_BIOD_ERROR(decode_column("BIODCOL2" + good.substr(8)), ErrorCode::BAD_MAGIC);
}

TEST(ColumnFile, FilesOnDisk) {
  TempDir dir;
  ColumnBuilder b(ValueType::String);
  b.append_string("São Paulo");
  Column c = std::move(b).finish();
  write_column_file(dir.path() / "c.col", c);
  EXPECT_EQ(read_column_file(dir.path() / "c.col"), c);
  EXPECT_BIOD_ERROR(read_column_file(dir.path() / "missing.col"), ErrorCode::IO_ERROR);
}

TEST(BuildStore, FixtureRowCountsAndIdempotence) {
  const auto& fx = testing_util::fixture_store();
  const auto& m = fx.store->manifest;
  EXPECT_EQ(m.find_table("regiao")->rows, 5u);
  EXPECT_EQ(m.find_table("estado")->rows, 27u);
  EXPECT_EQ(m.find_table("cidade")->rows, 5570u);
  EXPECT_EQ(m.find_table("ibge_pib")->rows, 11140u);
  EXPECT_EQ(m.find_table("fnu")->rows, 100000u);

  // Checksums distinguish different columns.
  const auto* regiao = m.find_table("regiao");
  EXPECT_NE(regiao->columns[0].checksum, regiao->columns[1].checksum);

  TempDir again;
  Catalog c = load_catalog(fx.files.catalog);
  StoreManifest rebuilt = build_store(c, load_mappings(fx.files.mappings, c), fx.files.sources,
                                      again.path());
  EXPECT_EQ(rebuilt, m);
  EXPECT_EQ(read_file(again.path() / "manifest.json"), read_file(fx.store_dir / "manifest.json"));
}

TEST(BuildStore, LoadedTablesMatchIngestion) {
  const auto& fx = testing_util::fixture_store();
  Catalog c = load_catalog(fx.files.catalog);
  EXPECT_EQ(fx.store->catalog, c);
  auto mappings = load_mappings(fx.files.mappings, c);
  for (const auto& mapping : mappings) {
    if (mapping.table != "regiao" && mapping.table != "estado") continue;
    auto t = ingest_csv(fx.files.sources / mapping.pattern, mapping);
    EXPECT_EQ(t, fx.store->tables.at(mapping.table));
  }
}

TEST(BuildStore, DuplicateGrainTupleIsRejected) {
  const auto& fx = testing_util::fixture_store();
  TempDir dir;
  std::filesystem::copy(fx.files.sources, dir.path() / "sources",
                        std::filesystem::copy_options::recursive);
  auto pib = dir.path() / "sources/lde/ibge_pib_2014.csv";
  std::string text = read_file(pib);
  auto first = text.find('\n') + 1;
  auto second = text.find('\n', first) + 1;
  write_file(pib, text + text.substr(first, second - first));
  Catalog c = load_catalog(fx.files.catalog);
  EXPECT_BIOD_ERROR(build_store(c, load_mappings(fx.files.mappings, c), dir.path() / "sources",
                                dir.path() / "out"),
                    ErrorCode::GRAIN_VIOLATION);
}

TEST(BuildStore, MissingSourcesAndDuplicateJoinKeys) {
  const auto& fx = testing_util::fixture_store();
  Catalog c = load_catalog(fx.files.catalog);
  auto mappings = load_mappings(fx.files.mappings, c);
  TempDir dir;
  EXPECT_BIOD_ERROR(build_store(c, mappings, dir.path() / "nothing", dir.path() / "out"),
                    ErrorCode::MISSING_SOURCE);

  // A catalog without grains, so only the join key check can fire.
  auto tables = c.tables();
  for (auto& t : tables) t.grain.clear();
  Catalog loose(tables, c.joins(), c.metrics(), c.dimensions());
  std::filesystem::copy(fx.files.sources, dir.path() / "sources",
                        std::filesystem::copy_options::recursive);
  auto regiao = dir.path() / "sources/lde/regiao.csv";
  write_file(regiao, read_file(regiao) + "5,Outra\n");
  EXPECT_BIOD_ERROR(build_store(loose, mappings, dir.path() / "sources", dir.path() / "out"),
                    ErrorCode::JOIN_KEY_DUPLICATE);
}

TEST(LoadStore, DetectsTamperedFiles) {
  const auto& fx = testing_util::fixture_store();
  TempDir dir;
  std::filesystem::copy(fx.store_dir, dir.path() / "s", std::filesystem::copy_options::recursive);
  auto s = dir.path() / "s";
  EXPECT_NO_THROW(load_store(s));

  // A valid column file in the wrong place passes its own CRC but not the
  // manifest's.
  std::filesystem::copy_file(s / "tables/regiao/id.col", s / "tables/estado/id.col",
                             std::filesystem::copy_options::overwrite_existing);
  EXPECT_BIOD_ERROR(load_store(s), ErrorCode::CHECKSUM_MISMATCH);

  std::filesystem::copy_file(fx.store_dir / "tables/estado/id.col", s / "tables/estado/id.col",
                             std::filesystem::copy_options::overwrite_existing);
  std::string bytes = read_file(s / "tables/estado/nome.col");
  bytes[bytes.size() / 2] ^= 0x40;
  write_file(s / "tables/estado/nome.col", bytes);
  EXPECT_BIOD_ERROR(load_store(s), ErrorCode::CHECKSUM_MISMATCH);

  std::filesystem::remove(s / "tables/estado/nome.col");
  EXPECT_BIOD_ERROR(load_store(s), ErrorCode::IO_ERROR);
}
