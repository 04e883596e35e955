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

#include "biod/planner.hpp"

#include "biod/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>

namespace biod {

namespace {

struct Arc {
  std::size_t edge;
  bool forward;
};

/// Arcs leaving `table` that never fan out rows of the table they leave.
std::vector<Arc> outgoing(const Catalog& catalog, std::string_view table) {
  std::vector<Arc> arcs;
  const auto& joins = catalog.joins();
  for (std::size_t i = 0; i < joins.size(); ++i) {
    if (joins[i].left.table == table) arcs.push_back({i, true});
    if (joins[i].right.table == table && joins[i].cardinality == Cardinality::OneToOne) {
      arcs.push_back({i, false});
    }
  }
  return arcs;
}

JoinHop make_hop(const JoinEdge& edge, bool forward) {
  JoinHop hop;
  hop.from = forward ? edge.left : edge.right;
  hop.to = forward ? edge.right : edge.left;
  hop.cardinality = edge.cardinality;
  hop.forward = forward;
  return hop;
}

} // namespace

JoinPath resolve_join_path(const Catalog& catalog, std::string_view from, std::string_view to) {
  catalog.table(from);
  catalog.table(to);
  JoinPath path{std::string(from), std::string(to), {}};
  if (from == to) return path;

  // Level-synchronous BFS that counts shortest paths, so equal-length
  // alternatives are detected rather than silently tie-broken.
  struct Visit {
    std::size_t depth;
    std::size_t paths; // saturating at 2
    std::optional<Arc> via;
    std::string parent;
  };
  std::map<std::string, Visit, std::less<>> seen;
  seen.emplace(std::string(from), Visit{0, 1, std::nullopt, {}});
  std::deque<std::string> queue{std::string(from)};
  while (!queue.empty()) {
    std::string current = queue.front();
    queue.pop_front();
    const Visit cur = seen.at(current);
    if (current == to) continue;
    for (const Arc& arc : outgoing(catalog, current)) {
      const JoinEdge& edge = catalog.joins()[arc.edge];
      const std::string& next = arc.forward ? edge.right.table : edge.left.table;
      auto it = seen.find(next);
      if (it == seen.end()) {
        seen.emplace(next, Visit{cur.depth + 1, cur.paths, arc, current});
        queue.push_back(next);
      } else if (it->second.depth == cur.depth + 1) {
        it->second.paths = std::min<std::size_t>(2, it->second.paths + cur.paths);
      }
    }
  }

  auto target = seen.find(to);
  if (target == seen.end()) {
    throw Error(ErrorCode::NO_JOIN_PATH, "no join path from '" + std::string(from) + "' to '" +
                                             std::string(to) +
                                             "' that avoids one-to-many fan-out");
  }
  if (target->second.paths > 1) {
    throw Error(ErrorCode::AMBIGUOUS_JOIN, "more than one shortest join path from '" +
                                               std::string(from) + "' to '" + std::string(to) +
                                               "'");
  }
  std::string at(to);
  while (at != from) {
    const Visit& v = seen.at(at);
    path.hops.insert(path.hops.begin(), make_hop(catalog.joins()[v.via->edge], v.via->forward));
    at = v.parent;
  }
  return path;
}

namespace {

DimensionBinding bind_dimension(const Catalog& catalog, const DimensionDef& dim,
                                std::string_view fact_table) {
  DimensionBinding b;
  b.dimension = dim.id;
  b.column = {dim.table, dim.column};
  b.type = catalog.column_type(dim.table, dim.column);
  b.path = resolve_join_path(catalog, fact_table, dim.table);
  return b;
}

} // namespace

LogicalPlan plan(const QueryAst& ast, const Catalog& catalog) {
  LogicalPlan out;

  std::vector<const MetricDef*> metrics;
  for (const auto& id : ast.metrics) metrics.push_back(&resolve_metric(catalog, id));
  std::vector<const DimensionDef*> dimensions;
  for (const auto& id : ast.dimensions) dimensions.push_back(&resolve_dimension(catalog, id));
  std::vector<Value> literals;
  for (const auto& f : ast.filters) literals.push_back(bind_filter_literal(f, catalog));

  // Fact tables in order of first appearance among the requested metrics.
  for (const MetricDef* m : metrics) {
    auto it = std::find_if(out.subplans.begin(), out.subplans.end(),
                           [&](const FactSubplan& s) { return s.fact_table == m->table; });
    if (it == out.subplans.end()) {
      out.subplans.push_back(FactSubplan{m->table, {}, {}, {}});
      it = std::prev(out.subplans.end());
    }
    it->metrics.push_back(*m);
  }

  for (auto& sub : out.subplans) {
    for (const DimensionDef* d : dimensions) {
      try {
        sub.dimensions.push_back(bind_dimension(catalog, *d, sub.fact_table));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NO_JOIN_PATH) throw;
        throw Error(ErrorCode::UNREACHABLE_DIMENSION,
                    "dimension '" + d->id + "' cannot be reached from table '" +
                        sub.fact_table + "' (metrics on that table cannot be grouped by it)");
      }
    }
  }

  for (std::size_t i = 0; i < ast.filters.size(); ++i) {
    const FilterPredicate& f = ast.filters[i];
    const DimensionDef& d = resolve_dimension(catalog, f.dimension);
    bool reached = false;
    for (auto& sub : out.subplans) {
      try {
        sub.filters.push_back(BoundFilter{f, bind_dimension(catalog, d, sub.fact_table), literals[i]});
        reached = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NO_JOIN_PATH) throw;
      }
    }
    if (!reached) {
      throw Error(ErrorCode::UNREACHABLE_FILTER,
                  "filter '" + unparse_filter(f) + "' applies to none of the selected metrics");
    }
  }

  out.merge_keys = ast.dimensions;
  out.sort = ast.sort;
  out.projection = ast.dimensions;
  out.projection.insert(out.projection.end(), ast.metrics.begin(), ast.metrics.end());
  return out;
}

} // namespace biod
