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

#include "biod/csv.hpp"
#include "biod/error.hpp"

#include <array>
#include <cmath>
#include <map>
#include <random>

namespace biod {

namespace fs = std::filesystem;

namespace {

ColumnDef col(std::string name, ValueType type, bool nullable, std::string description) {
  return ColumnDef{std::move(name), type, nullable, std::move(description)};
}

MetricDef metric(std::string id, Aggregation agg, std::string table, std::string column,
                 std::string description) {
  return MetricDef{std::move(id), agg, std::move(table), std::move(column), std::move(description)};
}

DimensionDef dimension(std::string id, std::string table, std::string column,
                       std::string description) {
  return DimensionDef{std::move(id), std::move(table), std::move(column), std::move(description)};
}

JoinEdge many_to_one(std::string lt, std::string lc, std::string rt, std::string rc) {
  return JoinEdge{{std::move(lt), std::move(lc)}, {std::move(rt), std::move(rc)},
                  Cardinality::ManyToOne};
}

struct State {
  int id;
  const char* name;
  const char* abbrev;
  int region;
  int cities;
};

// IBGE state codes with their municipality counts; the counts sum to 5 570.
constexpr std::array<State, 27> kStates{{
    {11, "Rondônia", "RO", 1, 52},          {12, "Acre", "AC", 1, 22},
    {13, "Amazonas", "AM", 1, 62},          {14, "Roraima", "RR", 1, 15},
    {15, "Pará", "PA", 1, 144},             {16, "Amapá", "AP", 1, 16},
    {17, "Tocantins", "TO", 1, 139},        {21, "Maranhão", "MA", 2, 217},
    {22, "Piauí", "PI", 2, 224},            {23, "Ceará", "CE", 2, 184},
    {24, "Rio Grande do Norte", "RN", 2, 167}, {25, "Paraíba", "PB", 2, 223},
    {26, "Pernambuco", "PE", 2, 185},       {27, "Alagoas", "AL", 2, 102},
    {28, "Sergipe", "SE", 2, 75},           {29, "Bahia", "BA", 2, 417},
    {31, "Minas Gerais", "MG", 3, 853},     {32, "Espírito Santo", "ES", 3, 78},
    {33, "Rio de Janeiro", "RJ", 3, 92},    {35, "São Paulo", "SP", 3, 645},
    {41, "Paraná", "PR", 4, 399},           {42, "Santa Catarina", "SC", 4, 295},
    {43, "Rio Grande do Sul", "RS", 4, 497}, {50, "Mato Grosso do Sul", "MS", 5, 79},
    {51, "Mato Grosso", "MT", 5, 141},      {52, "Goiás", "GO", 5, 246},
    {53, "Distrito Federal", "DF", 5, 1},
}};

constexpr std::array<const char*, 5> kRegions{"Norte", "Nordeste", "Sudeste", "Sul",
                                              "Centro-Oeste"};

/// Portable generator: the engine's output sequence is fixed by the
/// standard, and range reduction is done here rather than by the
/// implementation-defined std distributions.
class Rng {
public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(seed * 0x9E3779B97F4A7C15ull + stream) {}

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }
  /// Decimal with two fraction digits in [lo, hi].
  double money(std::int64_t lo, std::int64_t hi) {
    return static_cast<double>(between(lo * 100, hi * 100)) / 100.0;
  }

private:
  std::mt19937_64 engine_;
};

class CsvText {
public:
  explicit CsvText(std::vector<std::string> header, std::string eol = "\n")
      : eol_(std::move(eol)) {
    row(header);
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) text_ += ',';
      append_csv_field(text_, fields[i], ',');
    }
    text_ += eol_;
  }

  const std::string& text() const { return text_; }

private:
  std::string eol_;
  std::string text_;
};

std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(double v) { return format_float(v); }
std::string flag(bool v) { return v ? "t" : "f"; }

std::size_t scaled(std::size_t rows, double scale) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(rows) * scale)));
}

struct City {
  std::int64_t id;
  int state;
};

} // namespace

Catalog fixture_catalog() {
  using VT = ValueType;
  std::vector<TableDef> tables{
      {"regiao",
       {col("id", VT::Integer, false, "Region code"),
        col("nome", VT::String, false, "Region name")},
       {"dim:regiao:id"}},
      {"estado",
       {col("id", VT::Integer, false, "IBGE state code"),
        col("nome", VT::String, false, "State name"),
        col("sigla", VT::String, false, "Two-letter state abbreviation"),
        col("regiao_id", VT::Integer, false, "Region of the state")},
       {"dim:estado:id"}},
      {"cidade",
       {col("id", VT::Integer, false, "IBGE municipality code"),
        col("nome", VT::String, false, "Municipality name"),
        col("estado_id", VT::Integer, false, "State of the municipality"),
        col("capital", VT::Boolean, false, "Whether the municipality is the state capital"),
        col("latitude", VT::Float, false, "Latitude of the municipal seat"),
        col("longitude", VT::Float, false, "Longitude of the municipal seat")},
       {"dim:cidade:id"}},
      {"ponto",
       {col("id", VT::Integer, false, "Point of presence identifier"),
        col("cidade_id", VT::Integer, false, "Municipality where the point is installed"),
        col("nome", VT::String, false, "Point of presence name"),
        col("ativo", VT::Boolean, false, "Whether the point is currently active"),
        col("tipo", VT::String, false, "Public policy the point belongs to"),
        col("data_instalacao", VT::Date, false, "Installation date"),
        col("latitude", VT::Float, true, "Latitude of the point"),
        col("longitude", VT::Float, true, "Longitude of the point")},
       {"dim:ponto:id"}},
      {"fnu",
       {col("ponto_id", VT::Integer, false, "Reporting point of presence"),
        col("coleta_data", VT::Date, false, "Collection day"),
        col("coleta_hora", VT::Integer, false, "Collection hour"),
        col("coleta_minuto", VT::Integer, false, "Collection minute"),
        col("down_bytes", VT::Integer, false, "Bytes downloaded in the interval"),
        col("up_bytes", VT::Integer, false, "Bytes uploaded in the interval"),
        col("latencia_ms", VT::Float, true, "Mean round-trip latency in milliseconds"),
        col("perda_pacotes", VT::Float, false, "Packet loss percentage"),
        col("politica", VT::String, false, "Public policy of the reporting point")},
       {"dim:fnu:ponto_id", "dim:fnu:coleta:data", "dim:fnu:coleta:hora",
        "dim:fnu:coleta:minuto"}},
      {"ibge_pib",
       {col("cidade_id", VT::Integer, false, "Municipality"),
        col("ano", VT::Integer, false, "Reference year"),
        col("pib", VT::Float, false, "Gross domestic product, thousand BRL"),
        col("populacao", VT::Integer, false, "Estimated population"),
        col("pib_per_capita", VT::Float, false, "GDP per capita, BRL"),
        col("impostos", VT::Float, true, "Net taxes on products, thousand BRL"),
        col("va_agropecuaria", VT::Float, false, "Gross value added by agriculture"),
        col("va_industria", VT::Float, true, "Gross value added by industry")},
       {"dim:ibge:cidade_id", "dim:ibge:censo:ano"}},
      {"escola",
       {col("id", VT::Integer, false, "School census code"),
        col("ano_censo", VT::Integer, false, "School census year"),
        col("cidade_id", VT::Integer, false, "Municipality of the school"),
        col("nome", VT::String, false, "School name"),
        col("dependencia_adm", VT::String, false, "Administrative dependency"),
        col("localizacao", VT::String, false, "Urban or rural location"),
        col("num_alunos", VT::Integer, true, "Enrolled students"),
        col("tem_internet", VT::Boolean, true, "Whether the school has internet access")},
       {"dim:escola:id", "dim:escola:censo:ano"}},
      {"ies_ens_superior",
       {col("id", VT::Integer, false, "Higher-education institution code"),
        col("ano_censo", VT::Integer, false, "Higher-education census year"),
        col("cidade_id", VT::Integer, false, "Municipality of the institution"),
        col("nome", VT::String, false, "Institution name"),
        col("categoria_adm", VT::String, false, "Administrative category"),
        col("num_cursos", VT::Integer, false, "Courses offered")},
       {"dim:es:instituicao:id", "dim:es:instituicao:censo:ano"}},
  };

  std::vector<JoinEdge> joins{
      many_to_one("estado", "regiao_id", "regiao", "id"),
      many_to_one("cidade", "estado_id", "estado", "id"),
      many_to_one("ponto", "cidade_id", "cidade", "id"),
      many_to_one("fnu", "ponto_id", "ponto", "id"),
      many_to_one("ibge_pib", "cidade_id", "cidade", "id"),
      many_to_one("escola", "cidade_id", "cidade", "id"),
      many_to_one("ies_ens_superior", "cidade_id", "cidade", "id"),
  };

  using A = Aggregation;
  std::vector<MetricDef> metrics{
      metric("met:count:ponto:id", A::Count, "ponto", "id", "Number of points of presence"),
      metric("met:avg:ibge:pib", A::Avg, "ibge_pib", "pib", "Mean municipal GDP"),
      metric("met:sum:ibge:populacao", A::Sum, "ibge_pib", "populacao", "Total population"),
      metric("met:count:es:instituicao:id", A::Count, "ies_ens_superior", "id",
             "Number of higher-education institutions"),
      metric("met:count:escola:id", A::Count, "escola", "id", "Number of schools"),
      metric("met:sum:fnu:down_bytes", A::Sum, "fnu", "down_bytes", "Total bytes downloaded"),
      metric("met:sum:fnu:up_bytes", A::Sum, "fnu", "up_bytes", "Total bytes uploaded"),
      metric("met:count:fnu:registros", A::Count, "fnu", "ponto_id", "Number of network-usage records"),
      metric("met:max:ibge:pib", A::Max, "ibge_pib", "pib", "Largest municipal GDP"),
      metric("met:sum:escola:num_alunos", A::Sum, "escola", "num_alunos", "Total enrolled students"),
      metric("met:count_distinct:fnu:ponto_id", A::CountDistinct, "fnu", "ponto_id",
             "Number of distinct reporting points"),
      metric("met:min:ponto:data_instalacao", A::Min, "ponto", "data_instalacao",
             "Earliest installation date"),
  };

  std::vector<DimensionDef> dimensions{
      dimension("dim:regiao:id", "regiao", "id", "Region code"),
      dimension("dim:regiao:nome", "regiao", "nome", "Region name"),
      dimension("dim:estado:id", "estado", "id", "State code"),
      dimension("dim:estado:nome", "estado", "nome", "State name"),
      dimension("dim:estado:sigla", "estado", "sigla", "State abbreviation"),
      dimension("dim:cidade:id", "cidade", "id", "Municipality code"),
      dimension("dim:cidade:nome", "cidade", "nome", "Municipality name"),
      dimension("dim:cidade:capital", "cidade", "capital", "Whether the municipality is a capital"),
      dimension("dim:ponto:id", "ponto", "id", "Point of presence"),
      dimension("dim:ponto:ativo", "ponto", "ativo", "Point is active"),
      dimension("dim:ponto:tipo", "ponto", "tipo", "Public policy of the point"),
      dimension("dim:ponto:data_instalacao", "ponto", "data_instalacao", "Installation date"),
      dimension("dim:fnu:ponto_id", "fnu", "ponto_id", "Reporting point"),
      dimension("dim:fnu:coleta:data", "fnu", "coleta_data", "Collection day"),
      dimension("dim:fnu:coleta:hora", "fnu", "coleta_hora", "Collection hour"),
      dimension("dim:fnu:coleta:minuto", "fnu", "coleta_minuto", "Collection minute"),
      dimension("dim:fnu:politica", "fnu", "politica", "Public policy of the record"),
      dimension("dim:ibge:cidade_id", "ibge_pib", "cidade_id", "Municipality of the GDP record"),
      dimension("dim:ibge:censo:ano", "ibge_pib", "ano", "GDP reference year"),
      dimension("dim:escola:id", "escola", "id", "School"),
      dimension("dim:escola:censo:ano", "escola", "ano_censo", "School census year"),
      dimension("dim:escola:dependencia_adm", "escola", "dependencia_adm",
                "Administrative dependency of the school"),
      dimension("dim:escola:localizacao", "escola", "localizacao", "Urban or rural school"),
      dimension("dim:escola:tem_internet", "escola", "tem_internet", "School has internet"),
      dimension("dim:es:instituicao:id", "ies_ens_superior", "id", "Higher-education institution"),
      dimension("dim:es:instituicao:censo:ano", "ies_ens_superior", "ano_censo",
                "Higher-education census year"),
      dimension("dim:es:instituicao:categoria_adm", "ies_ens_superior", "categoria_adm",
                "Administrative category of the institution"),
  };

  return Catalog(std::move(tables), std::move(joins), std::move(metrics), std::move(dimensions));
}

std::vector<MappingSpec> fixture_mappings(const Catalog& catalog) {
  using Sources = std::vector<std::pair<std::string, std::optional<std::string>>>;
  auto entry = [&](std::string table, std::string pattern, const Sources& sources,
                   std::vector<std::string> null_tokens = {""}) {
    MappingSpec spec{std::move(pattern), table, {}};
    const TableDef& def = catalog.table(table);
    for (const auto& [target, source] : sources) {
      const ColumnDef* c = def.find_column(target);
      if (c == nullptr) throw Error(ErrorCode::INTERNAL, "fixture maps unknown column " + target);
      spec.columns.push_back(ColumnMapping{target, source, c->type, c->nullable, null_tokens});
    }
    return spec;
  };

  return {
      entry("regiao", "lde/regiao.csv", {{"id", "id"}, {"nome", "nome"}}),
      entry("estado", "lde/estado.csv",
            {{"id", "id"}, {"nome", "nome"}, {"sigla", "sigla"}, {"regiao_id", "regiao_id"}}),
      entry("cidade", "lde/cidade.csv",
            {{"id", "id"},
             {"nome", "nome"},
             {"estado_id", "estado_id"},
             {"capital", "capital"},
             {"latitude", "latitude"},
             {"longitude", "longitude"}}),
      entry("ponto", "simmc/ponto.csv",
            {{"id", "id"},
             {"cidade_id", "cidade_id"},
             {"nome", "nome"},
             {"ativo", "ativo"},
             {"tipo", "tipo"},
             {"data_instalacao", "data_instalacao"},
             {"latitude", "latitude"},
             {"longitude", "longitude"}}),
      entry("fnu", "simmc/*/uso-de-rede/*.csv",
            {{"ponto_id", "id_ponto"},
             {"coleta_data", "data"},
             {"coleta_hora", "hora"},
             {"coleta_minuto", "minuto"},
             {"down_bytes", "bytes_down"},
             {"up_bytes", "bytes_up"},
             {"latencia_ms", "latencia"},
             {"perda_pacotes", "perda"},
             {"politica", "politica"}}),
      // The 2013 release used different headers, wrote missing values as NA
      // and had no industry breakdown.
      entry("ibge_pib", "lde/ibge_pib_2013.csv",
            {{"cidade_id", "cod_municipio"},
             {"ano", "ano"},
             {"pib", "pib_mil_reais"},
             {"populacao", "populacao_estimada"},
             {"pib_per_capita", "pib_per_capita"},
             {"impostos", "impostos_liquidos"},
             {"va_agropecuaria", "va_agropecuaria"},
             {"va_industria", std::nullopt}},
            {"", "NA"}),
      entry("ibge_pib", "lde/ibge_pib_2014.csv",
            {{"cidade_id", "municipio_id"},
             {"ano", "ano_censo"},
             {"pib", "pib"},
             {"populacao", "populacao"},
             {"pib_per_capita", "pib_per_capita"},
             {"impostos", "impostos"},
             {"va_agropecuaria", "valor_agregado_agropecuaria"},
             {"va_industria", "valor_agregado_industria"}}),
      entry("escola", "lde/escola_*.csv",
            {{"id", "id"},
             {"ano_censo", "ano_censo"},
             {"cidade_id", "cidade_id"},
             {"nome", "nome"},
             {"dependencia_adm", "dependencia_adm"},
             {"localizacao", "localizacao"},
             {"num_alunos", "num_alunos"},
             {"tem_internet", "tem_internet"}}),
      entry("ies_ens_superior", "lde/ies_ens_superior.csv",
            {{"id", "cod_ies"},
             {"ano_censo", "ano_censo"},
             {"cidade_id", "cod_municipio"},
             {"nome", "nome_ies"},
             {"categoria_adm", "categoria_administrativa"},
             {"num_cursos", "qt_cursos"}}),
  };
}

FixtureFiles generate_fixture(const FixtureSpec& spec, const fs::path& out_dir) {
  const Catalog catalog = fixture_catalog();
  FixtureFiles files{out_dir / "catalog.json", out_dir / "mappings.json", out_dir / "sources"};
  write_file(files.catalog, catalog_to_json(catalog));
  write_file(files.mappings, mappings_to_json(fixture_mappings(catalog)));
  const fs::path& src = files.sources;

  CsvText regiao({"id", "nome"});
  for (std::size_t i = 0; i < kRegions.size(); ++i) {
    regiao.row({num(static_cast<std::int64_t>(i + 1)), kRegions[i]});
  }
  write_file(src / "lde/regiao.csv", regiao.text());

  CsvText estado({"id", "nome", "sigla", "regiao_id"});
  for (const State& s : kStates) estado.row({num(std::int64_t{s.id}), s.name, s.abbrev, num(std::int64_t{s.region})});
  write_file(src / "lde/estado.csv", estado.text());

  Rng geo(spec.seed, 1);
  std::vector<City> cities;
  CsvText cidade({"id", "nome", "estado_id", "capital", "latitude", "longitude"});
  for (const State& s : kStates) {
    for (int k = 1; k <= s.cities; ++k) {
      std::int64_t id = std::int64_t{s.id} * 100000 + k * 10;
      cities.push_back({id, s.id});
      cidade.row({num(id), std::string("Cidade ") + s.abbrev + " " + std::to_string(k),
                  num(std::int64_t{s.id}), flag(k == 1),
                  num(static_cast<double>(geo.between(-3300000, 500000)) / 100000.0),
                  num(static_cast<double>(geo.between(-7400000, -3400000)) / 100000.0)});
    }
  }
  write_file(src / "lde/cidade.csv", cidade.text());

  static const std::array<const char*, 3> kPolicies{"cidades_digitais", "gesac", "telecentros"};
  Rng pt(spec.seed, 2);
  const Date first_install = *parse_date("2014-01-01");
  const std::size_t n_ponto = scaled(spec.ponto_rows, spec.scale);
  std::vector<std::string> ponto_policy;
  CsvText ponto({"id", "cidade_id", "nome", "ativo", "tipo", "data_instalacao", "latitude",
                 "longitude"});
  for (std::size_t i = 0; i < n_ponto; ++i) {
    const City& c = cities[pt.below(cities.size())];
    std::string policy = kPolicies[pt.below(kPolicies.size())];
    bool located = !pt.chance(0.05);
    ponto_policy.push_back(policy);
    ponto.row({num(static_cast<std::int64_t>(i + 1)), num(c.id),
               "Ponto " + std::to_string(i + 1), flag(pt.chance(0.7)), policy,
               format_date(Date{first_install.days + pt.between(0, 5 * 365)}),
               located ? num(static_cast<double>(pt.between(-3300000, 500000)) / 100000.0) : "",
               located ? num(static_cast<double>(pt.between(-7400000, -3400000)) / 100000.0) : ""});
  }
  write_file(src / "simmc/ponto.csv", ponto.text());

  // Network usage: one record per point every ten minutes, written as one
  // file per policy and day.
  Rng nu(spec.seed, 3);
  const Date first_day = *parse_date("2018-12-30");
  const std::size_t n_fnu = scaled(spec.fnu_rows, spec.scale);
  std::map<std::pair<std::string, std::string>, CsvText> usage;
  for (std::size_t k = 0; k < n_fnu; ++k) {
    std::size_t p = k % n_ponto;
    std::int64_t minutes = static_cast<std::int64_t>(k / n_ponto) * 10;
    std::string day = format_date(Date{first_day.days + minutes / 1440});
    auto key = std::make_pair(ponto_policy[p], day);
    auto it = usage.find(key);
    if (it == usage.end()) {
      it = usage.emplace(key, CsvText({"id_ponto", "data", "hora", "minuto", "bytes_down",
                                       "bytes_up", "latencia", "perda", "politica"}))
               .first;
    }
    bool timed_out = nu.chance(0.02);
    it->second.row({num(static_cast<std::int64_t>(p + 1)), day, num((minutes % 1440) / 60),
                    num(minutes % 60), num(nu.between(0, 500'000'000)),
                    num(nu.between(0, 80'000'000)), timed_out ? "" : num(nu.money(1, 900)),
                    num(nu.money(0, 5)), ponto_policy[p]});
  }
  for (const auto& [key, csv] : usage) {
    write_file(src / "simmc" / key.first / "uso-de-rede" / (key.second + ".csv"), csv.text());
  }

  Rng eco(spec.seed, 4);
  CsvText pib2013({"cod_municipio", "ano", "pib_mil_reais", "populacao_estimada",
                   "pib_per_capita", "impostos_liquidos", "va_agropecuaria"});
  CsvText pib2014({"municipio_id", "ano_censo", "pib", "populacao", "pib_per_capita", "impostos",
                   "valor_agregado_agropecuaria", "valor_agregado_industria"});
  for (int year : {2013, 2014}) {
    for (const City& c : cities) {
      double pib = eco.money(5'000, 50'000'000);
      std::int64_t pop = eco.between(800, 2'000'000);
      double per_capita = std::round(pib * 1000.0 / static_cast<double>(pop) * 100.0) / 100.0;
      bool no_tax = eco.chance(0.03);
      double tax = eco.money(0, 5'000'000);
      double agro = eco.money(0, 5'000'000);
      double industry = eco.money(0, 10'000'000);
      if (year == 2013) {
        pib2013.row({num(c.id), num(std::int64_t{year}), num(pib), num(pop), num(per_capita),
                     no_tax ? "NA" : num(tax), num(agro)});
      } else {
        pib2014.row({num(c.id), num(std::int64_t{year}), num(pib), num(pop), num(per_capita),
                     no_tax ? "" : num(tax), num(agro), num(industry)});
      }
    }
  }
  write_file(src / "lde/ibge_pib_2013.csv", pib2013.text());
  write_file(src / "lde/ibge_pib_2014.csv", pib2014.text());

  static const std::array<const char*, 4> kDependency{"Federal", "Estadual", "Municipal",
                                                      "Privada"};
  Rng edu(spec.seed, 5);
  const std::size_t n_schools = std::max<std::size_t>(1, scaled(spec.escola_rows, spec.scale) / 2);
  std::vector<std::int64_t> school_city;
  for (std::size_t i = 0; i < n_schools; ++i) school_city.push_back(cities[edu.below(cities.size())].id);
  for (int year : {2016, 2017}) {
    CsvText escola({"id", "ano_censo", "cidade_id", "nome", "dependencia_adm", "localizacao",
                    "num_alunos", "tem_internet"});
    for (std::size_t i = 0; i < n_schools; ++i) {
      std::string name = i % 50 == 7
                             ? "Escola Estadual \"Dom Pedro II\", Unidade " + std::to_string(i)
                             : "Escola " + std::to_string(i);
      bool unknown_internet = edu.chance(0.02);
      bool internet = edu.chance(0.6);
      escola.row({num(static_cast<std::int64_t>(41000000 + i)), num(std::int64_t{year}),
                  num(school_city[i]), name, kDependency[edu.below(kDependency.size())],
                  edu.chance(0.3) ? "Rural" : "Urbana",
                  edu.chance(0.01) ? "" : num(edu.between(20, 2000)),
                  unknown_internet ? "" : flag(internet)});
    }
    write_file(src / ("lde/escola_" + std::to_string(year) + ".csv"), escola.text());
  }

  static const std::array<const char*, 4> kCategory{"Pública Federal", "Pública Estadual",
                                                    "Privada com fins lucrativos",
                                                    "Privada sem fins lucrativos"};
  Rng sup(spec.seed, 6);
  const std::size_t n_ies = std::max<std::size_t>(1, scaled(spec.ies_rows, spec.scale) / 2);
  std::vector<std::int64_t> ies_city;
  for (std::size_t i = 0; i < n_ies; ++i) ies_city.push_back(cities[sup.below(cities.size())].id);
  // Exported with CRLF line endings.
  CsvText ies({"cod_ies", "ano_censo", "cod_municipio", "nome_ies", "categoria_administrativa",
               "qt_cursos"},
              "\r\n");
  for (int year : {2016, 2017}) {
    for (std::size_t i = 0; i < n_ies; ++i) {
      ies.row({num(static_cast<std::int64_t>(i + 1)), num(std::int64_t{year}), num(ies_city[i]),
               "Instituição de Ensino Superior " + std::to_string(i + 1),
               kCategory[sup.below(kCategory.size())], num(sup.between(1, 120))});
    }
  }
  write_file(src / "lde/ies_ens_superior.csv", ies.text());

  return files;
}

} // namespace biod
