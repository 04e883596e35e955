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

#include "biod/csv.hpp"
#include "biod/serialize.hpp"

#include <json.hpp>
#include <gtest/gtest.h>

using namespace biod;

namespace {

ResultSet one_row() {
  ResultSet rs;
  rs.fields = {"dim:regiao:nome", "met:avg:ibge:pib", "met:count:ponto:id"};
  rs.dimension_count = 1;
  rs.rows = {{Value::string("Sul"), Value::null(), Value::integer(42)}};
  return rs;
}

} // namespace

TEST(SerializeCsv, NullIsEmptyField) {
  EXPECT_EQ(serialize_csv(one_row(), ';'),
            "dim:regiao:nome;met:avg:ibge:pib;met:count:ponto:id\nSul;;42\n");
}

TEST(SerializeCsv, QuotesOnlyWhenNeeded) {
  ResultSet rs;
  rs.fields = {"dim:a"};
  rs.dimension_count = 1;
  rs.rows = {{Value::string("a,b")}, {Value::string("a;b")}, {Value::string("say \"x\"")}};
  EXPECT_EQ(serialize_csv(rs, ','), "dim:a\n\"a,b\"\na;b\n\"say \"\"x\"\"\"\n");
  EXPECT_EQ(serialize_csv(rs, ';'), "dim:a\na,b\n\"a;b\"\n\"say \"\"x\"\"\"\n");
}

TEST(SerializeCsv, ValueSpellings) {
  ResultSet rs;
  rs.fields = {"dim:b", "dim:d", "met:f", "met:i"};
  rs.dimension_count = 2;
  rs.rows = {{Value::boolean(true), Value::date(Date{17895}), Value::floating(0.1 + 0.2),
              Value::integer(-3)},
             {Value::boolean(false), Value::null(), Value::floating(1e21), Value::integer(0)}};
  EXPECT_EQ(serialize_csv(rs, '\t'),
            "dim:b\tdim:d\tmet:f\tmet:i\nt\t2018-12-30\t0.30000000000000004\t-3\nf\t\t1e+21\t0\n");
}

TEST(SerializeCsv, EmptyResultIsHeaderOnly) {
  ResultSet rs = one_row();
  rs.rows.clear();
  EXPECT_EQ(serialize_csv(rs, ','), "dim:regiao:nome,met:avg:ibge:pib,met:count:ponto:id\n");
}

TEST(SerializeCsv, ParsesBack) {
  ResultSet rs = one_row();
  rs.rows.push_back({Value::string("line\nbreak, \"quoted\""), Value::floating(2.5), Value::integer(1)});
  for (char sep : {',', ';', '\t'}) {
    auto doc = parse_csv(serialize_csv(rs, sep), sep);
    EXPECT_EQ(doc.header, rs.fields);
    ASSERT_EQ(doc.records.size(), rs.rows.size());
    EXPECT_EQ(doc.records[1][0], "line\nbreak, \"quoted\"");
  }
}

TEST(SerializeJson, Shape) {
  EXPECT_EQ(serialize_json(one_row()),
            R"({"fields":["dim:regiao:nome","met:avg:ibge:pib","met:count:ponto:id"],"rows":[["Sul",null,42]],"rowCount":1})");
  ResultSet empty = one_row();
  empty.rows.clear();
  EXPECT_EQ(serialize_json(empty),
            R"({"fields":["dim:regiao:nome","met:avg:ibge:pib","met:count:ponto:id"],"rows":[],"rowCount":0})");
  ResultSet count;
  count.fields = {"met:count:x"};
  count.rows = {{Value::integer(0)}};
  EXPECT_EQ(serialize_json(count), R"({"fields":["met:count:x"],"rows":[[0]],"rowCount":1})");
}

TEST(SerializeJson, TypesAndEscaping) {
  ResultSet rs;
  rs.fields = {"dim:s", "dim:b", "dim:d", "met:f"};
  rs.dimension_count = 3;
  rs.rows = {{Value::string("a\"b\\c\n\x01 ç"), Value::boolean(false), Value::date(Date{0}),
              Value::floating(0.1)}};
  std::string text = serialize_json(rs);
  auto doc = nlohmann::json::parse(text);
  EXPECT_EQ(doc["rows"][0][0], "a\"b\\c\n\x01 ç");
  EXPECT_EQ(doc["rows"][0][1], false);
  EXPECT_EQ(doc["rows"][0][2], "1970-01-01");
  EXPECT_EQ(doc["rows"][0][3].get<double>(), 0.1);
  EXPECT_NE(text.find("0.1]"), std::string::npos);
  EXPECT_EQ(doc["rowCount"], 1);
}
