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

#include "biod/engine.hpp"

#include <string>

namespace biod {

/// Header of field ids, then one line per row, LF-terminated. Null is an
/// empty field, booleans t/f, dates YYYY-MM-DD, floats in shortest
/// round-trip form.
std::string serialize_csv(const ResultSet& rs, char separator);

/// {"fields":[...],"rows":[[...],...],"rowCount":n}
std::string serialize_json(const ResultSet& rs);

} // namespace biod
