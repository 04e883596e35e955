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

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace biod;

TEST(Csv, QuotedFieldsAndLineEndings) {
  auto doc = parse_csv("a,b,c\r\n1,\"x,y\",\"say \"\"hi\"\"\"\r\n2,\"multi\nline\",\n");
  EXPECT_EQ(doc.header, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(doc.records.size(), 2u);
  EXPECT_EQ(doc.records[0], (std::vector<std::string>{"1", "x,y", "say \"hi\""}));
  EXPECT_EQ(doc.records[1], (std::vector<std::string>{"2", "multi\nline", ""}));
}

TEST(Csv, BomAndMissingFinalNewline) {
  auto doc = parse_csv("\xEF\xBB\xBFid;nome\n1;S\xC3\xA3o Paulo", ';');
  EXPECT_EQ(doc.header[0], "id");
  ASSERT_EQ(doc.records.size(), 1u);
  EXPECT_EQ(doc.records[0][1], "S\xC3\xA3o Paulo");
}

TEST(Csv, HeaderOnlyHasNoRecords) {
  auto doc = parse_csv("a,b\n");
  EXPECT_EQ(doc.header.size(), 2u);
  EXPECT_TRUE(doc.records.empty());
}

TEST(Csv, EmptyQuotedFieldIsEmptyString) {
  auto doc = parse_csv("a,b\n\"\",x\n");
  EXPECT_EQ(doc.records[0][0], "");
}

TEST(Csv, Errors) {
  EXPECT_BIOD_ERROR(parse_csv(""), ErrorCode::CSV_PARSE);
  EXPECT_BIOD_ERROR(parse_csv("a,b\n1\n"), ErrorCode::CSV_PARSE);
  EXPECT_BIOD_ERROR(parse_csv("a,b\n1,2,3\n"), ErrorCode::CSV_PARSE);
  EXPECT_BIOD_ERROR(parse_csv("a,b\n\"1,2\n"), ErrorCode::CSV_PARSE);
  EXPECT_BIOD_ERROR(parse_csv("a,b\n\"1\"x,2\n"), ErrorCode::CSV_PARSE);
  try {
    parse_csv("a,b\n1,2\n3\n");
    FAIL();
  } catch (const Error& e) {
    // The position of the short record is in the message.
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
  }
}

TEST(Csv, FieldQuoting) {
  std::string out;
  append_csv_field(out, "a,b", ',');
  EXPECT_EQ(out, "\"a,b\"");
  out.clear();
  append_csv_field(out, "a,b", ';');
  EXPECT_EQ(out, "a,b");
  out.clear();
  append_csv_field(out, "say \"x\"", '\t');
  EXPECT_EQ(out, "\"say \"\"x\"\"\"");
  out.clear();
  append_csv_field(out, "l1\r\nl2", ',');
  EXPECT_EQ(out, "\"l1\r\nl2\"");
}

TEST(Csv, WriterAndReaderAgree) {
  std::vector<std::string> fields{"", "plain", "a,b", "\"", "x\ny", "ç", " lead", "tab\there"};
  for (char sep : {',', ';', '\t'}) {
    std::string text;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text += sep;
      append_csv_field(text, "h" + std::to_string(i), sep);
    }
    text += '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text += sep;
      append_csv_field(text, fields[i], sep);
    }
    text += '\n';
    auto doc = parse_csv(text, sep);
    ASSERT_EQ(doc.records.size(), 1u);
    EXPECT_EQ(doc.records[0], fields);
  }
}

TEST(Csv, Utf8Validation) {
  EXPECT_TRUE(is_valid_utf8("S\xC3\xA3o"));
  EXPECT_TRUE(is_valid_utf8("\xF0\x9F\x98\x80"));
  EXPECT_FALSE(is_valid_utf8("\xC3"));
  EXPECT_FALSE(is_valid_utf8("\xC0\xAF"));          // overlong
  EXPECT_FALSE(is_valid_utf8("\xED\xA0\x80"));      // surrogate
  EXPECT_FALSE(is_valid_utf8("\xF4\x90\x80\x80"));  // past U+10FFFF
  EXPECT_FALSE(is_valid_utf8("\xFF"));
}
