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

#include "biod/api.hpp"
#include "biod/catalog.hpp"
#include "biod/error.hpp"
#include "biod/fixture.hpp"
#include "biod/server.hpp"
#include "biod/store.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <pthread.h>
#include <thread>

namespace {

int run_build(const std::string& catalog_path, const std::string& mappings_path,
              const std::string& sources, const std::string& out) {
  biod::Catalog catalog = biod::load_catalog(catalog_path);
  auto mappings = biod::load_mappings(mappings_path, catalog);
  biod::StoreManifest manifest = biod::build_store(catalog, mappings, sources, out);
  for (const auto& table : manifest.tables) {
    std::cout << table.name << ": " << table.rows << " rows\n";
  }
  return 0;
}

int run_serve(const std::string& store_dir, const std::string& host, int port,
              std::optional<std::size_t> max_rows) {
  // Block the shutdown signals before any thread starts so that only
  // sigwait below sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto store = std::make_shared<const biod::Store>(biod::load_store(store_dir));
  biod::ServiceOptions options;
  options.max_rows = max_rows;
  auto service = std::make_shared<const biod::Service>(store, options);

  biod::HttpServer server(service);
  int bound = server.bind(host, port);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;

  std::thread listener([&] { server.run(); });
  int received = 0;
  sigwait(&signals, &received);
  std::cout << "shutting down" << std::endl;
  server.stop();
  listener.join();
  return 0;
}

int run_query(const std::string& store_dir, const std::string& path, const std::string& query) {
  auto store = std::make_shared<const biod::Store>(biod::load_store(store_dir));
  biod::Service service(store);
  biod::Response response = service.handle(biod::Request{"GET", path, query});
  std::cout << response.body;
  if (response.content_type == biod::kJsonContentType) std::cout << '\n';
  return response.status == 200 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"biod: open data analytics service"};
  app.require_subcommand(1);

  std::string catalog_path, mappings_path, sources, out;
  auto* build = app.add_subcommand("build", "Ingest source CSVs into a column store");
  build->add_option("--catalog", catalog_path, "Catalog JSON")->required();
  build->add_option("--mappings", mappings_path, "Mappings JSON")->required();
  build->add_option("--sources", sources, "Source directory")->required();
  build->add_option("--out", out, "Output store directory")->required();

  std::string store_dir, host = "127.0.0.1";
  int port = 8080;
  std::optional<std::size_t> max_rows;
  auto* serve = app.add_subcommand("serve", "Serve a store over HTTP");
  serve->add_option("--store", store_dir, "Store directory")->required();
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port, 0 for any");
  serve->add_option("--max-rows", max_rows, "Reject results with more rows");

  biod::FixtureSpec fixture_spec;
  std::string fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Generate the synthetic sample dataset");
  fixture->add_option("--seed", fixture_spec.seed, "Random seed");
  fixture->add_option("--scale", fixture_spec.scale, "Fact table size multiplier")
      ->check(CLI::PositiveNumber);
  fixture->add_option("--out", fixture_out, "Output directory")->required();

  std::string query_store, query_path = "/api/v1/data", query_string;
  auto* query = app.add_subcommand("query", "Answer one request without a server");
  query->add_option("--store", query_store, "Store directory")->required();
  query->add_option("--path", query_path, "Request path");
  query->add_option("query", query_string, "Raw query string")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return run_build(catalog_path, mappings_path, sources, out);
    if (*serve) return run_serve(store_dir, host, port, max_rows);
    if (*fixture) {
      auto files = biod::generate_fixture(fixture_spec, fixture_out);
      std::cout << "catalog:  " << files.catalog.string() << '\n'
                << "mappings: " << files.mappings.string() << '\n'
                << "sources:  " << files.sources.string() << '\n';
      return 0;
    }
    if (*query) return run_query(query_store, query_path, query_string);
  } catch (const biod::Error& e) {
    std::cerr << "error: " << biod::to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  }
  return 1;
}
