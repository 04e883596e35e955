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

#include "biod/error.hpp"

#include <cstdint>

namespace biod {

namespace {

[[noreturn]] void fail(std::size_t line, std::size_t field, const std::string& what) {
  throw Error(ErrorCode::CSV_PARSE, "line " + std::to_string(line) + ", field " +
                                        std::to_string(field) + ": " + what);
}

} // namespace

CsvDocument parse_csv(std::string_view text, char separator) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  if (text.empty()) fail(1, 1, "missing header row");

  CsvDocument doc;
  std::vector<std::string> record;
  std::string field;
  std::size_t line = 1;
  std::size_t record_line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool have_header = false;

  auto finish_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    if (!have_header) {
      doc.header = std::move(record);
      have_header = true;
    } else {
      if (record.size() != doc.header.size()) {
        fail(record_line, record.size(),
             "expected " + std::to_string(doc.header.size()) + " fields, found " +
                 std::to_string(record.size()));
      }
      doc.records.push_back(std::move(record));
    }
    record.clear();
  };

  while (i < n) {
    // Start of a field.
    if (text[i] == '"') {
      ++i;
      while (true) {
        if (i >= n) fail(line, record.size() + 1, "unterminated quoted field");
        char c = text[i];
        if (c == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (c == '\n') ++line;
        field += c;
        ++i;
      }
      if (i < n && text[i] != separator && text[i] != '\n' && text[i] != '\r') {
        fail(line, record.size() + 1, "unexpected character after closing quote");
      }
    } else {
      while (i < n && text[i] != separator && text[i] != '\n' && text[i] != '\r') {
        if (text[i] == '"') fail(line, record.size() + 1, "quote inside unquoted field");
        field += text[i];
        ++i;
      }
    }

    if (i >= n) {
      finish_record();
      break;
    }
    char c = text[i];
    if (c == separator) {
      record.push_back(std::move(field));
      field.clear();
      ++i;
      if (i >= n) {
        finish_record();
        break;
      }
      continue;
    }
    // Line break: CRLF or LF. A bare CR is also accepted as a terminator.
    if (c == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
    ++i;
    finish_record();
    ++line;
    record_line = line;
  }

  return doc;
}

void append_csv_field(std::string& out, std::string_view field, char separator) {
  bool quote = field.find_first_of(std::string{separator, '"', '\r', '\n'}) != std::string_view::npos;
  if (!quote) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and values past U+10FFFF.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

} // namespace biod
