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

#include "biod/error.hpp"

namespace biod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
#define BIOD_NAME_ENTRY(name)                                                  \
  case ErrorCode::name:                                                        \
    return #name;
    BIOD_ERROR_CODES(BIOD_NAME_ENTRY)
#undef BIOD_NAME_ENTRY
  }
  return "INTERNAL";
}

} // namespace biod
