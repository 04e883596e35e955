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
#include "biod/store.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace biod {

/// Sizes of the synthetic mini-BIOD. Dimension tables are fixed: 5 regions,
/// 27 states and 5 570 cities; ibge_pib has one row per city per year.
struct FixtureSpec {
  std::uint64_t seed = 1;
  /// Multiplies the fact-table row counts below.
  double scale = 1.0;
  std::size_t ponto_rows = 500;
  std::size_t fnu_rows = 100'000;
  std::size_t escola_rows = 2'000;
  std::size_t ies_rows = 200;
};

struct FixtureFiles {
  std::filesystem::path catalog;
  std::filesystem::path mappings;
  std::filesystem::path sources;
};

/// The mini-BIOD data dictionary.
Catalog fixture_catalog();

/// Source mappings for the files written by generate_fixture.
std::vector<MappingSpec> fixture_mappings(const Catalog& catalog);

/// Writes catalog.json, mappings.json and sources/ under `out_dir`. Output
/// bytes are a pure function of the spec.
FixtureFiles generate_fixture(const FixtureSpec& spec, const std::filesystem::path& out_dir);

} // namespace biod
