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

#include <string>
#include <string_view>
#include <vector>

namespace biod {

struct CsvDocument {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> records;
};

/// RFC 4180 reader: quoted fields with doubled quotes, CRLF or LF line ends,
/// optional trailing line break, optional UTF-8 BOM. Every record must have
/// as many fields as the header. Throws CSV_PARSE with a 1-based position.
CsvDocument parse_csv(std::string_view text, char separator = ',');

/// Appends `field` to `out`, quoted iff it contains the separator, a quote,
/// CR or LF; inner quotes are doubled.
void append_csv_field(std::string& out, std::string_view field, char separator);

bool is_valid_utf8(std::string_view text);

} // namespace biod
