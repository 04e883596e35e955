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

#include "biod/engine.hpp"

#include "biod/error.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <type_traits>
#include <unordered_map>
#include <unordered_set>

namespace biod {

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;
constexpr std::uint64_t kDirectLimit = std::uint64_t{1} << 24;

template <class T>
using KeyOf = std::conditional_t<std::is_same_v<T, std::string>, std::string_view, T>;

const ColumnTable& lookup_table(const TableMap& store, std::string_view name) {
  auto it = store.find(name);
  if (it == store.end()) {
    throw Error(ErrorCode::TABLE_MISSING, "table '" + std::string(name) + "' is not loaded");
  }
  return it->second;
}

const Column& lookup_column(const TableMap& store, const ColumnRef& ref) {
  return lookup_table(store, ref.table).column(ref.column);
}

std::vector<std::uint32_t> all_rows(std::size_t n) {
  std::vector<std::uint32_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0u);
  return rows;
}

/// Dense codes for the values of `col` at `rows`; code 0 is reserved for null.
struct Encoded {
  std::vector<std::uint32_t> codes;
  std::uint32_t cardinality = 1;
};

Encoded encode(const Column& col, std::span<const std::uint32_t> rows) {
  Encoded out;
  out.codes.resize(rows.size());
  const NullBitmap& nulls = col.nulls();
  std::visit(
      [&](const auto& data) {
        using T = typename std::decay_t<decltype(data)>::value_type;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          std::int64_t lo = INT64_MAX, hi = INT64_MIN;
          for (auto r : rows) {
            if (!nulls.test(r)) {
              lo = std::min(lo, data[r]);
              hi = std::max(hi, data[r]);
            }
          }
          if (lo <= hi && static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) <
                              kDirectLimit) {
            std::vector<std::uint32_t> slot(static_cast<std::size_t>(hi - lo) + 1, kNone);
            for (std::size_t i = 0; i < rows.size(); ++i) {
              auto r = rows[i];
              if (nulls.test(r)) continue;
              auto& s = slot[static_cast<std::size_t>(data[r] - lo)];
              if (s == kNone) s = out.cardinality++;
              out.codes[i] = s;
            }
            return;
          }
        }
        std::unordered_map<KeyOf<T>, std::uint32_t> dict;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          auto r = rows[i];
          if (nulls.test(r)) continue;
          auto [it, inserted] = dict.try_emplace(KeyOf<T>(data[r]), out.cardinality);
          if (inserted) ++out.cardinality;
          out.codes[i] = it->second;
        }
      },
      col.storage());
  return out;
}

/// Assigns every position a group id in first-appearance order of its
/// dimension-code tuple.
struct Grouping {
  std::vector<std::uint32_t> group_of;
  std::vector<std::uint32_t> first_pos;
  std::size_t group_count = 1;
};

Grouping group_rows(const std::vector<Encoded>& dims, std::size_t m) {
  Grouping g;
  g.group_of.assign(m, 0);
  if (dims.empty()) return g;
  std::uint64_t prev_card = 1;
  for (const Encoded& d : dims) {
    std::vector<std::uint32_t> next(m);
    g.first_pos.clear();
    std::uint64_t space = prev_card * d.cardinality;
    auto assign = [&](std::uint32_t& slot, std::size_t i) {
      if (slot == kNone) {
        slot = static_cast<std::uint32_t>(g.first_pos.size());
        g.first_pos.push_back(static_cast<std::uint32_t>(i));
      }
      next[i] = slot;
    };
    if (space <= kDirectLimit) {
      std::vector<std::uint32_t> slots(space, kNone);
      for (std::size_t i = 0; i < m; ++i) {
        assign(slots[std::uint64_t{g.group_of[i]} * d.cardinality + d.codes[i]], i);
      }
    } else {
      std::unordered_map<std::uint64_t, std::uint32_t> slots;
      for (std::size_t i = 0; i < m; ++i) {
        auto [it, _] = slots.try_emplace(std::uint64_t{g.group_of[i]} * d.cardinality + d.codes[i],
                                         kNone);
        assign(it->second, i);
      }
    }
    g.group_of = std::move(next);
    prev_card = g.first_pos.size();
  }
  g.group_count = g.first_pos.size();
  return g;
}

/// Folds one metric column into per-group state.
class Accumulator {
public:
  Accumulator(Aggregation agg, const Column& col, std::string metric)
      : agg_(agg), col_(col), metric_(std::move(metric)) {}

  void run(std::span<const std::uint32_t> rows, std::span<const std::uint32_t> groups,
           std::size_t group_count) {
    const NullBitmap& nulls = col_.nulls();
    count_.assign(group_count, 0);
    switch (agg_) {
    case Aggregation::Count:
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!nulls.test(rows[i])) ++count_[groups[i]];
      }
      break;
    case Aggregation::Sum:
    case Aggregation::Avg:
      run_sum(rows, groups, group_count);
      break;
    case Aggregation::Min:
    case Aggregation::Max:
      run_extreme(rows, groups, group_count);
      break;
    case Aggregation::CountDistinct: {
      Encoded enc = encode(col_, rows);
      std::unordered_set<std::uint64_t> seen;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (enc.codes[i] == 0) continue;
        if (seen.insert((std::uint64_t{groups[i]} << 32) | enc.codes[i]).second) {
          ++count_[groups[i]];
        }
      }
      break;
    }
    }
  }

  Value result(std::size_t g) const {
    switch (agg_) {
    case Aggregation::Count:
    case Aggregation::CountDistinct:
      return Value::integer(count_[g]);
    case Aggregation::Sum:
      if (count_[g] == 0) return Value::null();
      return col_.type() == ValueType::Integer ? Value::integer(int_sum_[g])
                                               : Value::floating(float_sum_[g]);
    case Aggregation::Avg:
      if (count_[g] == 0) return Value::null();
      if (col_.type() == ValueType::Integer) {
        return Value::floating(static_cast<double>(wide_sum_[g]) /
                               static_cast<double>(count_[g]));
      }
      return Value::floating(float_sum_[g] / static_cast<double>(count_[g]));
    case Aggregation::Min:
    case Aggregation::Max:
      return best_[g] < 0 ? Value::null() : col_.value(static_cast<std::size_t>(best_[g]));
    }
    return Value::null();
  }

private:
  void run_sum(std::span<const std::uint32_t> rows, std::span<const std::uint32_t> groups,
               std::size_t group_count) {
    const NullBitmap& nulls = col_.nulls();
    if (col_.type() == ValueType::Float) {
      float_sum_.assign(group_count, 0.0);
      auto data = col_.floats();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (nulls.test(rows[i])) continue;
        float_sum_[groups[i]] += data[rows[i]];
        ++count_[groups[i]];
      }
      return;
    }
    if (col_.type() != ValueType::Integer) {
      throw Error(ErrorCode::INTERNAL, "metric '" + metric_ + "' sums a non-numeric column");
    }
    auto data = col_.ints();
    if (agg_ == Aggregation::Avg) {
      wide_sum_.assign(group_count, 0);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (nulls.test(rows[i])) continue;
        wide_sum_[groups[i]] += data[rows[i]];
        ++count_[groups[i]];
      }
      return;
    }
    int_sum_.assign(group_count, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (nulls.test(rows[i])) continue;
      auto& s = int_sum_[groups[i]];
      if (__builtin_add_overflow(s, data[rows[i]], &s)) {
        throw Error(ErrorCode::OVERFLOW, "64-bit integer sum overflows in metric '" + metric_ + "'");
      }
      ++count_[groups[i]];
    }
  }

  void run_extreme(std::span<const std::uint32_t> rows, std::span<const std::uint32_t> groups,
                   std::size_t group_count) {
    const NullBitmap& nulls = col_.nulls();
    best_.assign(group_count, -1);
    bool want_min = agg_ == Aggregation::Min;
    std::visit(
        [&](const auto& data) {
          for (std::size_t i = 0; i < rows.size(); ++i) {
            auto r = rows[i];
            if (nulls.test(r)) continue;
            auto& b = best_[groups[i]];
            if (b < 0) {
              b = r;
              continue;
            }
            const auto& cur = data[static_cast<std::size_t>(b)];
            if (want_min ? data[r] < cur : cur < data[r]) b = r;
          }
        },
        col_.storage());
  }

  Aggregation agg_;
  const Column& col_;
  std::string metric_;
  std::vector<std::int64_t> count_;
  std::vector<std::int64_t> int_sum_;
  std::vector<__int128> wide_sum_;
  std::vector<double> float_sum_;
  std::vector<std::int64_t> best_;
};

bool op_holds(CompareOp op, std::weak_ordering c) {
  switch (op) {
  case CompareOp::Eq:
    return c == 0;
  case CompareOp::Ne:
    return c != 0;
  case CompareOp::Lt:
    return c < 0;
  case CompareOp::Gt:
    return c > 0;
  case CompareOp::Le:
    return c <= 0;
  case CompareOp::Ge:
    return c >= 0;
  }
  return false;
}

template <class T>
std::weak_ordering order(const T& a, const T& b) {
  if (a < b) return std::weak_ordering::less;
  if (b < a) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

/// Predicate result for each row in `rows`. Null never matches.
std::vector<std::uint8_t> evaluate(const Column& col, std::span<const std::uint32_t> rows,
                                   CompareOp op, const Value& literal) {
  std::vector<std::uint8_t> out(rows.size(), 0);
  if (literal.is_null() || literal.type() != col.type()) {
    throw Error(ErrorCode::LITERAL_TYPE, "filter literal does not match the column type");
  }
  const NullBitmap& nulls = col.nulls();
  auto loop = [&](const auto& data, const auto& lit) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto r = rows[i];
      if (nulls.test(r)) continue;
      out[i] = op_holds(op, order(data[r], lit));
    }
  };
  switch (col.type()) {
  case ValueType::Integer:
    loop(col.ints(), literal.as_integer());
    break;
  case ValueType::Date:
    loop(col.ints(), literal.as_date().days);
    break;
  case ValueType::Float:
    loop(col.floats(), literal.as_float());
    break;
  case ValueType::String:
    loop(col.strings(), literal.as_string());
    break;
  case ValueType::Boolean:
    loop(col.bools(), static_cast<std::uint8_t>(literal.as_boolean()));
    break;
  }
  return out;
}

/// For each row of `from`, the first row of `to` with an equal key, or -1.
std::vector<std::int64_t> match_keys(const Column& from, const Column& to) {
  if (from.type() != to.type()) {
    throw Error(ErrorCode::INTERNAL, "join columns differ in type");
  }
  std::vector<std::int64_t> out(from.size(), -1);
  std::visit(
      [&](const auto& to_data) {
        using V = std::decay_t<decltype(to_data)>;
        using K = KeyOf<typename V::value_type>;
        const auto& from_data = std::get<V>(from.storage());
        std::unordered_map<K, std::int64_t> index;
        index.reserve(to_data.size());
        for (std::size_t r = 0; r < to_data.size(); ++r) {
          if (!to.is_null(r)) index.try_emplace(K(to_data[r]), static_cast<std::int64_t>(r));
        }
        for (std::size_t r = 0; r < from_data.size(); ++r) {
          if (from.is_null(r)) continue;
          auto it = index.find(K(from_data[r]));
          if (it != index.end()) out[r] = it->second;
        }
      },
      to.storage());
  return out;
}

struct SubplanResult {
  std::vector<std::vector<Value>> keys;
  std::vector<std::vector<Value>> metrics;
};

SubplanResult run_subplan(const FactSubplan& sub, const TableMap& store) {
  const ColumnTable& fact = lookup_table(store, sub.fact_table);

  std::map<std::string, std::vector<std::int64_t>, std::less<>> join_cache;
  auto target_rows = [&](const DimensionBinding& b) -> const std::vector<std::int64_t>& {
    auto it = join_cache.find(b.path.to);
    if (it == join_cache.end()) {
      it = join_cache.emplace(b.path.to, join_rows(fact, b.path, store)).first;
    }
    return it->second;
  };

  std::vector<std::uint32_t> sel = all_rows(fact.row_count());
  for (const BoundFilter& f : sub.filters) {
    const Column& col = lookup_column(store, f.binding.column);
    std::vector<std::uint32_t> kept;
    if (f.binding.local()) {
      auto pass = evaluate(col, sel, f.predicate.op, f.literal);
      for (std::size_t i = 0; i < sel.size(); ++i) {
        if (pass[i]) kept.push_back(sel[i]);
      }
    } else {
      auto pass = evaluate(col, all_rows(col.size()), f.predicate.op, f.literal);
      const auto& jr = target_rows(f.binding);
      for (auto r : sel) {
        if (jr[r] >= 0 && pass[static_cast<std::size_t>(jr[r])]) kept.push_back(r);
      }
    }
    sel = std::move(kept);
  }

  std::vector<Encoded> encoded;
  std::vector<const Column*> dim_columns;
  for (const DimensionBinding& b : sub.dimensions) {
    const Column& col = lookup_column(store, b.column);
    dim_columns.push_back(&col);
    if (b.local()) {
      encoded.push_back(encode(col, sel));
      continue;
    }
    Encoded target = encode(col, all_rows(col.size()));
    const auto& jr = target_rows(b);
    Encoded e;
    e.cardinality = target.cardinality;
    e.codes.resize(sel.size());
    for (std::size_t i = 0; i < sel.size(); ++i) {
      auto t = jr[sel[i]];
      e.codes[i] = t < 0 ? 0 : target.codes[static_cast<std::size_t>(t)];
    }
    encoded.push_back(std::move(e));
  }

  Grouping grouping = group_rows(encoded, sel.size());
  encoded.clear();

  SubplanResult out;
  out.keys.resize(grouping.group_count);
  out.metrics.resize(grouping.group_count);
  if (!sub.dimensions.empty()) {
    for (std::size_t g = 0; g < grouping.group_count; ++g) {
      std::uint32_t row = sel[grouping.first_pos[g]];
      auto& key = out.keys[g];
      for (std::size_t d = 0; d < sub.dimensions.size(); ++d) {
        const DimensionBinding& b = sub.dimensions[d];
        if (b.local()) {
          key.push_back(dim_columns[d]->value(row));
        } else {
          auto t = target_rows(b)[row];
          key.push_back(t < 0 ? Value::null() : dim_columns[d]->value(static_cast<std::size_t>(t)));
        }
      }
    }
  }
  for (const MetricDef& m : sub.metrics) {
    Accumulator acc(m.aggregation, fact.column(m.column), m.id);
    acc.run(sel, grouping.group_of, grouping.group_count);
    for (std::size_t g = 0; g < grouping.group_count; ++g) {
      out.metrics[g].push_back(acc.result(g));
    }
  }
  return out;
}

struct TupleLess {
  bool operator()(const std::vector<Value>& a, const std::vector<Value>& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      auto c = compare_values(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  }
};

} // namespace

Value aggregate_fold(Aggregation aggregation, std::span<const Value> values) {
  ValueType type = ValueType::Integer;
  for (const auto& v : values) {
    if (!v.is_null()) {
      type = v.type();
      break;
    }
  }
  ColumnBuilder builder(type);
  for (const auto& v : values) builder.append(v);
  Column col = std::move(builder).finish();
  if ((aggregation == Aggregation::Sum || aggregation == Aggregation::Avg) &&
      type != ValueType::Integer && type != ValueType::Float) {
    throw Error(ErrorCode::INTERNAL, "sum/avg over a non-numeric column");
  }
  auto rows = all_rows(col.size());
  std::vector<std::uint32_t> groups(col.size(), 0);
  Accumulator acc(aggregation, col, std::string(to_string(aggregation)));
  acc.run(rows, groups, 1);
  return acc.result(0);
}

ResultSet sort_result(ResultSet rs, const std::vector<SortKey>& keys) {
  std::vector<std::pair<std::size_t, bool>> order_by;
  for (const SortKey& k : keys) {
    auto it = std::find(rs.fields.begin(), rs.fields.end(), k.id);
    if (it == rs.fields.end()) {
      throw Error(ErrorCode::BAD_SORT_KEY, "sort key '" + k.id + "' is not an output field");
    }
    order_by.emplace_back(static_cast<std::size_t>(it - rs.fields.begin()),
                          k.direction == SortDirection::Descending);
  }
  const std::size_t dims = rs.dimension_count;
  std::stable_sort(rs.rows.begin(), rs.rows.end(), [&](const auto& a, const auto& b) {
    for (auto [idx, desc] : order_by) {
      auto c = desc ? compare_values(b[idx], a[idx]) : compare_values(a[idx], b[idx]);
      if (c != 0) return c < 0;
    }
    for (std::size_t d = 0; d < dims; ++d) {
      auto c = compare_values(a[d], b[d]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  return rs;
}

std::vector<std::int64_t> join_rows(const ColumnTable& fact, const JoinPath& path,
                                    const TableMap& store) {
  std::vector<std::int64_t> current(fact.row_count());
  std::iota(current.begin(), current.end(), 0);
  const ColumnTable* at = &fact;
  for (const JoinHop& hop : path.hops) {
    const ColumnTable& next = lookup_table(store, hop.to.table);
    auto step = match_keys(at->column(hop.from.column), next.column(hop.to.column));
    for (auto& r : current) {
      if (r >= 0) r = step[static_cast<std::size_t>(r)];
    }
    at = &next;
  }
  return current;
}

std::vector<Value> join_materialize(const ColumnTable& fact, const JoinPath& path,
                                    std::string_view target_column, const TableMap& store) {
  auto rows = join_rows(fact, path, store);
  const ColumnTable& target = path.empty() ? fact : lookup_table(store, path.to);
  const Column& col = target.column(target_column);
  std::vector<Value> out;
  out.reserve(rows.size());
  for (auto r : rows) {
    out.push_back(r < 0 ? Value::null() : col.value(static_cast<std::size_t>(r)));
  }
  return out;
}

ResultSet execute(const LogicalPlan& plan, const TableMap& store, ExecuteOptions options) {
  for (const auto& sub : plan.subplans) {
    lookup_table(store, sub.fact_table);
  }

  std::vector<SubplanResult> partials(plan.subplans.size());
  if (options.parallel && plan.subplans.size() > 1) {
    std::vector<std::future<SubplanResult>> futures;
    for (const auto& sub : plan.subplans) {
      futures.push_back(std::async(std::launch::async,
                                   [&store, &sub] { return run_subplan(sub, store); }));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) partials[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < plan.subplans.size(); ++i) {
      partials[i] = run_subplan(plan.subplans[i], store);
    }
  }

  const std::size_t dims = plan.merge_keys.size();
  const std::size_t width = plan.projection.size();
  std::map<std::vector<Value>, std::vector<Value>, TupleLess> merged;
  for (std::size_t s = 0; s < plan.subplans.size(); ++s) {
    std::vector<std::size_t> slots;
    for (const MetricDef& m : plan.subplans[s].metrics) {
      auto it = std::find(plan.projection.begin(), plan.projection.end(), m.id);
      slots.push_back(static_cast<std::size_t>(it - plan.projection.begin()));
    }
    SubplanResult& part = partials[s];
    for (std::size_t g = 0; g < part.keys.size(); ++g) {
      auto [it, inserted] = merged.try_emplace(std::move(part.keys[g]));
      if (inserted) it->second.resize(width);
      for (std::size_t k = 0; k < slots.size(); ++k) {
        it->second[slots[k]] = std::move(part.metrics[g][k]);
      }
    }
  }

  ResultSet rs;
  rs.fields = plan.projection;
  rs.dimension_count = dims;
  rs.rows.reserve(merged.size());
  for (auto& [key, row] : merged) {
    for (std::size_t d = 0; d < dims; ++d) row[d] = key[d];
    rs.rows.push_back(std::move(row));
  }
  return sort_result(std::move(rs), plan.sort);
}

} // namespace biod
