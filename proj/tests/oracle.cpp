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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace oracle {

using biod::Aggregation;
using biod::Catalog;
using biod::CompareOp;
using biod::ErrorCode;
using biod::Value;
using biod::ValueType;

int compare(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return a.is_null() == b.is_null() ? 0 : (a.is_null() ? 1 : -1);
  auto sign = [](auto x, auto y) { return x < y ? -1 : (y < x ? 1 : 0); };
  switch (a.type()) {
  case ValueType::Integer: return sign(a.as_integer(), b.as_integer());
  case ValueType::Float: return sign(a.as_float(), b.as_float());
  case ValueType::String: {
    int c = a.as_string().compare(b.as_string());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  case ValueType::Boolean: return sign(int(a.as_boolean()), int(b.as_boolean()));
  case ValueType::Date: return sign(a.as_date().days, b.as_date().days);
  }
  return 0;
}

namespace {

struct TupleLess {
  bool operator()(const std::vector<Value>& a, const std::vector<Value>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      int c = compare(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

struct ValueOrder {
  bool operator()(const Value& a, const Value& b) const { return compare(a, b) < 0; }
};

void walk(const Catalog& catalog, const std::string& at, const std::string& to,
          std::vector<std::string>& visited, std::vector<Hop>& hops,
          std::vector<std::vector<Hop>>& found) {
  if (at == to) {
    found.push_back(hops);
    return;
  }
  const auto& joins = catalog.joins();
  for (std::size_t e = 0; e < joins.size(); ++e) {
    const auto& edge = joins[e];
    for (bool forward : {true, false}) {
      const auto& here = forward ? edge.left : edge.right;
      const auto& there = forward ? edge.right : edge.left;
      if (here.table != at) continue;
      if (!forward && edge.cardinality != biod::Cardinality::OneToOne) continue;
      if (std::find(visited.begin(), visited.end(), there.table) != visited.end()) continue;
      visited.push_back(there.table);
      hops.push_back({e, forward});
      walk(catalog, there.table, to, visited, hops, found);
      hops.pop_back();
      visited.pop_back();
    }
  }
}

bool matches(const Value& v, CompareOp op, const Value& literal) {
  if (v.is_null()) return false;
  int c = compare(v, literal);
  switch (op) {
  case CompareOp::Eq: return c == 0;
  case CompareOp::Ne: return c != 0;
  case CompareOp::Lt: return c < 0;
  case CompareOp::Gt: return c > 0;
  case CompareOp::Le: return c <= 0;
  case CompareOp::Ge: return c >= 0;
  }
  return false;
}

class Evaluator {
public:
  Evaluator(const Catalog& catalog, const biod::TableMap& tables)
      : catalog_(catalog), tables_(tables) {}

  /// Value of `table.column` reached from `row` of `fact` along `hops`.
  Value reach(const std::string& fact, std::size_t row, const std::vector<Hop>& hops,
              const std::string& column) {
    std::string table = fact;
    for (const Hop& hop : hops) {
      const auto& edge = catalog_.joins()[hop.edge];
      const auto& here = hop.forward ? edge.left : edge.right;
      const auto& there = hop.forward ? edge.right : edge.left;
      Value key = tables_.at(table).column(std::string_view(here.column)).value(row);
      if (key.is_null()) return Value::null();
      const auto& index = lookup(there.table, there.column);
      auto it = index.find(key);
      if (it == index.end()) return Value::null();
      row = it->second;
      table = there.table;
    }
    return tables_.at(table).column(std::string_view(column)).value(row);
  }

private:
  const std::map<Value, std::size_t, ValueOrder>& lookup(const std::string& table,
                                                         const std::string& column) {
    auto key = table + "." + column;
    auto it = indexes_.find(key);
    if (it != indexes_.end()) return it->second;
    auto& index = indexes_[key];
    const auto& col = tables_.at(table).column(std::string_view(column));
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (!col.is_null(r)) index.emplace(col.value(r), r);
    }
    return index;
  }

  const Catalog& catalog_;
  const biod::TableMap& tables_;
  std::map<std::string, std::map<Value, std::size_t, ValueOrder>> indexes_;
};

Value fold(Aggregation agg, ValueType type, const std::vector<Value>& values) {
  std::vector<Value> present;
  for (const auto& v : values) {
    if (!v.is_null()) present.push_back(v);
  }
  switch (agg) {
  case Aggregation::Count: return Value::integer(static_cast<std::int64_t>(present.size()));
  case Aggregation::CountDistinct: {
    std::set<Value, ValueOrder> distinct(present.begin(), present.end());
    return Value::integer(static_cast<std::int64_t>(distinct.size()));
  }
  default: break;
  }
  if (present.empty()) return Value::null();
  switch (agg) {
  case Aggregation::Sum:
    if (type == ValueType::Integer) {
      std::int64_t s = 0;
      for (const auto& v : present) {
        if (__builtin_add_overflow(s, v.as_integer(), &s)) {
          throw biod::Error(ErrorCode::OVERFLOW, "oracle sum overflow");
        }
      }
      return Value::integer(s);
    } else {
      double s = 0;
      for (const auto& v : present) s += v.as_float();
      return Value::floating(s);
    }
  case Aggregation::Avg: {
    long double s = 0;
    for (const auto& v : present) {
      s += type == ValueType::Integer ? static_cast<long double>(v.as_integer()) : v.as_float();
    }
    return Value::floating(static_cast<double>(s / static_cast<long double>(present.size())));
  }
  case Aggregation::Min:
  case Aggregation::Max: {
    Value best = present.front();
    for (const auto& v : present) {
      int c = compare(v, best);
      if (agg == Aggregation::Min ? c < 0 : c > 0) best = v;
    }
    return best;
  }
  default: break;
  }
  return Value::null();
}

} // namespace

PathSearch find_path(const Catalog& catalog, const std::string& from, const std::string& to) {
  PathSearch out;
  std::vector<std::string> visited{from};
  std::vector<Hop> hops;
  std::vector<std::vector<Hop>> found;
  walk(catalog, from, to, visited, hops, found);
  out.walkable_paths = found.size();
  if (found.empty()) return out;
  std::size_t shortest = found.front().size();
  for (const auto& p : found) shortest = std::min(shortest, p.size());
  std::size_t count = 0;
  for (const auto& p : found) {
    if (p.size() == shortest) {
      ++count;
      out.hops = p;
    }
  }
  out.status = count == 1 ? PathSearch::Status::Found : PathSearch::Status::Ambiguous;
  if (count != 1) out.hops.clear();
  return out;
}

Outcome evaluate(const Catalog& catalog, const biod::TableMap& tables, const biod::QueryAst& query) {
  Outcome out;
  try {
    std::vector<const biod::MetricDef*> metrics;
    for (const auto& id : query.metrics) {
      const auto* m = catalog.find_metric(id);
      if (m == nullptr) throw biod::Error(ErrorCode::UNKNOWN_METRIC, id);
      metrics.push_back(m);
    }
    std::vector<const biod::DimensionDef*> dims;
    for (const auto& id : query.dimensions) {
      const auto* d = catalog.find_dimension(id);
      if (d == nullptr) throw biod::Error(ErrorCode::UNKNOWN_DIMENSION, id);
      dims.push_back(d);
    }
    std::vector<const biod::DimensionDef*> filter_dims;
    std::vector<Value> literals;
    for (const auto& f : query.filters) {
      const auto* d = catalog.find_dimension(f.dimension);
      if (d == nullptr) throw biod::Error(ErrorCode::UNKNOWN_DIMENSION, f.dimension);
      auto lit = biod::parse_literal(f.literal, catalog.column_type(d->table, d->column));
      if (!lit) throw biod::Error(ErrorCode::LITERAL_TYPE, f.literal);
      filter_dims.push_back(d);
      literals.push_back(*lit);
    }

    std::vector<std::string> facts;
    for (const auto* m : metrics) {
      if (std::find(facts.begin(), facts.end(), m->table) == facts.end()) facts.push_back(m->table);
    }

    auto path_or_throw = [&](const std::string& fact, const biod::DimensionDef& d,
                             ErrorCode unreachable) {
      PathSearch p = find_path(catalog, fact, d.table);
      if (p.status == PathSearch::Status::Ambiguous) {
        throw biod::Error(ErrorCode::AMBIGUOUS_JOIN, d.id);
      }
      if (p.status == PathSearch::Status::None) throw biod::Error(unreachable, d.id);
      return p.hops;
    };

    std::map<std::string, std::vector<std::vector<Hop>>> dim_paths;
    for (const auto& fact : facts) {
      for (const auto* d : dims) {
        dim_paths[fact].push_back(path_or_throw(fact, *d, ErrorCode::UNREACHABLE_DIMENSION));
      }
    }
    // Per fact table, the filters it can reach.
    std::map<std::string, std::vector<std::pair<std::size_t, std::vector<Hop>>>> filter_paths;
    for (std::size_t i = 0; i < filter_dims.size(); ++i) {
      bool reached = false;
      for (const auto& fact : facts) {
        PathSearch p = find_path(catalog, fact, filter_dims[i]->table);
        if (p.status == PathSearch::Status::Ambiguous) {
          throw biod::Error(ErrorCode::AMBIGUOUS_JOIN, filter_dims[i]->id);
        }
        if (p.status == PathSearch::Status::Found) {
          filter_paths[fact].emplace_back(i, p.hops);
          reached = true;
        }
      }
      if (!reached) throw biod::Error(ErrorCode::UNREACHABLE_FILTER, filter_dims[i]->id);
    }

    Evaluator eval(catalog, tables);
    const std::size_t nd = dims.size();
    const std::size_t nm = metrics.size();
    std::map<std::vector<Value>, std::vector<Value>, TupleLess> merged;

    for (const auto& fact : facts) {
      const auto& table = tables.at(fact);
      // group tuple -> metric index -> values
      std::map<std::vector<Value>, std::map<std::size_t, std::vector<Value>>, TupleLess> groups;
      if (nd == 0) groups[{}];
      for (std::size_t r = 0; r < table.row_count(); ++r) {
        bool keep = true;
        for (const auto& [fi, hops] : filter_paths[fact]) {
          Value v = eval.reach(fact, r, hops, filter_dims[fi]->column);
          if (!matches(v, query.filters[fi].op, literals[fi])) {
            keep = false;
            break;
          }
        }
        if (!keep) continue;
        std::vector<Value> key;
        for (std::size_t d = 0; d < nd; ++d) {
          key.push_back(eval.reach(fact, r, dim_paths[fact][d], dims[d]->column));
        }
        auto& slot = groups[key];
        for (std::size_t m = 0; m < nm; ++m) {
          if (metrics[m]->table != fact) continue;
          slot[m].push_back(table.column(std::string_view(metrics[m]->column)).value(r));
        }
      }
      for (auto& [key, values] : groups) {
        auto [it, fresh] = merged.try_emplace(key, std::vector<Value>(nm));
        for (std::size_t m = 0; m < nm; ++m) {
          if (metrics[m]->table != fact) continue;
          it->second[m] = fold(metrics[m]->aggregation,
                               catalog.column_type(fact, metrics[m]->column), values[m]);
        }
      }
    }

    biod::ResultSet rs;
    rs.fields = query.dimensions;
    rs.fields.insert(rs.fields.end(), query.metrics.begin(), query.metrics.end());
    rs.dimension_count = nd;
    for (auto& [key, values] : merged) {
      std::vector<Value> row = key;
      row.insert(row.end(), values.begin(), values.end());
      rs.rows.push_back(std::move(row));
    }

    // Rows come out of the map in dimension order, so a stable sort on the
    // explicit keys leaves the tie order right.
    std::vector<std::pair<std::size_t, bool>> keys;
    for (const auto& k : query.sort) {
      auto pos = std::find(rs.fields.begin(), rs.fields.end(), k.id) - rs.fields.begin();
      keys.emplace_back(static_cast<std::size_t>(pos),
                        k.direction == biod::SortDirection::Descending);
    }
    std::stable_sort(rs.rows.begin(), rs.rows.end(), [&](const auto& a, const auto& b) {
      for (const auto& [idx, desc] : keys) {
        int c = compare(a[idx], b[idx]);
        if (desc) c = -c;
        if (c != 0) return c < 0;
      }
      return false;
    });
    out.result = std::move(rs);
  } catch (const biod::Error& e) {
    out.error = e.code();
  }
  return out;
}

std::string diff(const Catalog& catalog, const biod::ResultSet& expected,
                 const biod::ResultSet& actual, double avg_tolerance) {
  if (expected.fields != actual.fields) return "field lists differ";
  if (expected.dimension_count != actual.dimension_count) return "dimension counts differ";
  if (expected.rows.size() != actual.rows.size()) {
    return "row counts differ: expected " + std::to_string(expected.rows.size()) + ", got " +
           std::to_string(actual.rows.size());
  }
  for (std::size_t r = 0; r < expected.rows.size(); ++r) {
    const auto& e = expected.rows[r];
    const auto& a = actual.rows[r];
    if (e.size() != a.size()) return "row " + std::to_string(r) + " arity differs";
    for (std::size_t c = 0; c < e.size(); ++c) {
      const auto* m = catalog.find_metric(expected.fields[c]);
      bool avg = c >= expected.dimension_count && m != nullptr &&
                 m->aggregation == Aggregation::Avg;
      bool same = false;
      if (avg && !e[c].is_null() && !a[c].is_null() && a[c].type() == ValueType::Float) {
        double x = e[c].as_float(), y = a[c].as_float();
        same = x == y || std::fabs(x - y) <= avg_tolerance * std::max(std::fabs(x), std::fabs(y));
      } else {
        same = e[c] == a[c];
      }
      if (!same) {
        return "row " + std::to_string(r) + " field " + expected.fields[c] + ": expected '" +
               biod::format_value(e[c]) + "', got '" + biod::format_value(a[c]) + "'";
      }
    }
  }
  return {};
}

} // namespace oracle
