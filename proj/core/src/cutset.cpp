#include "resha/cutset.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "resha/error.hpp"
#include "resha/text_util.hpp"

namespace resha {

bool canonical_less(const CutSet& a, const CutSet& b) {
  if (a.events.size() != b.events.size()) return a.events.size() < b.events.size();
  return a.events < b.events;
}

std::size_t CutSetCollection::count_of_order(std::size_t order) const {
  return static_cast<std::size_t>(std::ranges::count_if(sets, [&](const CutSet& s) { return s.order() == order; }));
}

std::size_t CutSetCollection::count_up_to(std::size_t order) const {
  return static_cast<std::size_t>(std::ranges::count_if(sets, [&](const CutSet& s) { return s.order() <= order; }));
}

std::size_t CutSetCollection::max_order() const { return sets.empty() ? 0 : sets.back().order(); }

namespace {

using Row = std::vector<std::uint32_t>;
using Family = std::vector<Row>;

struct RowHash {
  std::size_t operator()(const Row& r) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : r) {
      h ^= v;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

bool row_less(const Row& a, const Row& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Answers "does some indexed row lie inside r?". Small rows enumerate their
// subsets against a hash set; large rows scan the indexed rows filed under
// their smallest element, whichever is cheaper.
class SubsetIndex {
 public:
  void insert(const Row& r) {
    by_min_[r.front()].push_back(rows_.size());
    lookup_.insert(r);
    rows_.push_back(r);
  }

  bool covers(const Row& r, bool allow_equal) const {
    const std::size_t n = r.size();
    std::size_t scan_cost = 0;
    for (auto e : r) {
      if (auto it = by_min_.find(e); it != by_min_.end()) scan_cost += it->second.size();
    }
    if (scan_cost == 0) return false;
    if (n < 20 && (std::size_t{1} << n) < scan_cost * 4) {
      const std::uint32_t full = (1u << n) - 1;
      const std::uint32_t last = allow_equal ? full : full - 1;
      Row sub;
      for (std::uint32_t mask = 1; mask <= last; ++mask) {
        sub.clear();
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) sub.push_back(r[i]);
        }
        if (lookup_.contains(sub)) return true;
      }
      return false;
    }
    for (auto e : r) {
      auto it = by_min_.find(e);
      if (it == by_min_.end()) continue;
      for (std::size_t idx : it->second) {
        const Row& k = rows_[idx];
        if ((k.size() < n || (allow_equal && k.size() == n)) && std::ranges::includes(r, k)) return true;
      }
    }
    return false;
  }

 private:
  Family rows_;
  std::unordered_set<Row, RowHash> lookup_;
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_min_;
};

// Absorption: drop every row that contains another row. Rows are visited by
// increasing size, so each candidate only has to be tested against what is
// already kept.
Family minimize(Family rows) {
  std::ranges::sort(rows, row_less);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  if (!rows.empty() && rows.front().empty()) return {Row{}};
  Family kept;
  SubsetIndex index;
  for (auto& r : rows) {
    if (index.covers(r, false)) continue;
    index.insert(r);
    kept.push_back(std::move(r));
  }
  return kept;
}

class Solver {
 public:
  Solver(const FaultTree& ft, const SolveOptions& options) : ft_(ft), options_(options) {
    for (const auto& [id, _] : ft.events()) {
      index_.emplace(id, static_cast<std::uint32_t>(names_.size()));
      names_.push_back(id);
    }
  }

  Family run() {
    const auto order = ft_.topological_gates();
    if (options_.max_order) compute_limits(order);
    // reference counts let intermediate families be released early
    std::unordered_map<std::string, std::size_t> uses;
    for (const auto& id : order) {
      for (const auto& c : ft_.find_gate(id)->children) ++uses[c];
    }
    std::size_t done = 0;
    for (const auto& id : order) {
      const Gate& g = *ft_.find_gate(id);
      current_gate_ = id;
      limit_ = options_.max_order ? limits_.at(id) : kUnlimited;
      gates_done_ = done;
      gates_total_ = order.size();
      std::vector<const Family*> inputs;
      std::vector<Family> event_families;
      event_families.reserve(g.children.size());
      for (const auto& c : g.children) {
        if (auto it = index_.find(c); it != index_.end()) {
          event_families.push_back(Family{Row{it->second}});
          inputs.push_back(&event_families.back());
        } else {
          inputs.push_back(&memo_.at(c));
        }
      }
      Family result;
      switch (g.kind) {
        case GateKind::kOr: result = or_of(inputs); break;
        case GateKind::kAnd: result = and_of(inputs); break;
        case GateKind::kVote: result = vote_of(inputs, g.k); break;
      }
      for (const auto& c : g.children) {
        if (memo_.contains(c) && --uses[c] == 0 && c != ft_.top()) memo_.erase(c);
      }
      memo_[id] = std::move(result);
      ++done;
    }
    return std::move(memo_.at(ft_.top()));
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  static constexpr std::size_t kUnlimited = static_cast<std::size_t>(-1);
  using Support = std::vector<std::uint64_t>;

  static bool disjoint(const Support& a, const Support& b) {
    for (std::size_t w = 0; w < a.size(); ++w) {
      if (a[w] & b[w]) return false;
    }
    return true;
  }

  // Per-gate order limits. A row of child c can only reach a top-level set of
  // order <= K if it leaves room for the siblings it is ANDed with; siblings
  // are counted only when their event supports are pairwise disjoint from c
  // and from each other, since shared events could otherwise be paid for once.
  void compute_limits(const std::vector<std::string>& order) {
    const std::size_t words = (names_.size() + 63) / 64;
    std::unordered_map<std::string, Support> support;
    std::unordered_map<std::string, std::size_t> min_order;
    auto child_info = [&](const std::string& c) -> std::pair<Support, std::size_t> {
      if (auto it = index_.find(c); it != index_.end()) {
        Support s(words, 0);
        s[it->second / 64] |= std::uint64_t{1} << (it->second % 64);
        return {std::move(s), 1};
      }
      return {support.at(c), min_order.at(c)};
    };
    // bottom-up: event supports and lower bounds on the smallest cut set
    for (const auto& id : order) {
      const Gate& g = *ft_.find_gate(id);
      Support s(words, 0);
      std::vector<std::pair<Support, std::size_t>> kids;
      for (const auto& c : g.children) kids.push_back(child_info(c));
      bool pairwise_disjoint = true;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        for (std::size_t j = i + 1; j < kids.size() && pairwise_disjoint; ++j) {
          pairwise_disjoint = disjoint(kids[i].first, kids[j].first);
        }
        for (std::size_t w = 0; w < words; ++w) s[w] |= kids[i].first[w];
      }
      std::vector<std::size_t> mins;
      for (const auto& k : kids) mins.push_back(k.second);
      std::ranges::sort(mins);
      std::size_t m = kUnlimited;  // an empty OR never fails
      const std::size_t need = g.kind == GateKind::kAnd ? mins.size()
                               : g.kind == GateKind::kVote ? static_cast<std::size_t>(g.k)
                                                           : 1;
      if (mins.size() >= need && !mins.empty()) {
        if (pairwise_disjoint) {
          m = 0;
          for (std::size_t i = 0; i < need; ++i) m = saturating_add(m, mins[i]);
        } else {
          m = g.kind == GateKind::kAnd ? mins.back() : mins.front();
        }
      } else if (g.kind == GateKind::kAnd && mins.empty()) {
        m = 0;
      }
      support[id] = std::move(s);
      min_order[id] = m;
    }
    // top-down: each gate keeps the largest limit any parent grants it
    limits_.clear();
    limits_[ft_.top()] = static_cast<std::size_t>(*options_.max_order);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Gate& g = *ft_.find_gate(*it);
      const std::size_t limit = limits_.at(*it);
      std::vector<std::pair<Support, std::size_t>> kids;
      for (const auto& c : g.children) kids.push_back(child_info(c));
      for (std::size_t i = 0; i < g.children.size(); ++i) {
        if (!ft_.find_gate(g.children[i])) continue;
        const std::size_t reserve = g.kind == GateKind::kOr ? 0 : sibling_reserve(g, kids, i);
        const std::size_t child_limit = reserve >= limit ? 0 : limit - reserve;
        auto [slot, inserted] = limits_.emplace(g.children[i], child_limit);
        if (!inserted) slot->second = std::max(slot->second, child_limit);
      }
    }
  }

  static std::size_t saturating_add(std::size_t a, std::size_t b) { return a > kUnlimited - b ? kUnlimited : a + b; }

  // Smallest number of events the other inputs of `g` must add to a row of child i.
  static std::size_t sibling_reserve(const Gate& g, const std::vector<std::pair<Support, std::size_t>>& kids,
                                     std::size_t i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < kids.size(); ++j) {
      if (j != i) others.push_back(j);
    }
    if (g.kind == GateKind::kAnd) {
      std::ranges::stable_sort(others, std::greater<>{}, [&](std::size_t j) { return kids[j].second; });
      std::vector<std::size_t> chosen;
      std::size_t reserve = 0;
      for (std::size_t j : others) {
        if (!disjoint(kids[j].first, kids[i].first)) continue;
        if (!std::ranges::all_of(chosen, [&](std::size_t c) { return disjoint(kids[j].first, kids[c].first); })) continue;
        chosen.push_back(j);
        reserve = saturating_add(reserve, kids[j].second);
      }
      return reserve;
    }
    // VOTE: any k-1 others may accompany child i, so only the cheapest count,
    // and only when every input is disjoint from every other
    for (std::size_t a = 0; a < kids.size(); ++a) {
      for (std::size_t b = a + 1; b < kids.size(); ++b) {
        if (!disjoint(kids[a].first, kids[b].first)) return 0;
      }
    }
    std::vector<std::size_t> mins;
    for (std::size_t j : others) mins.push_back(kids[j].second);
    std::ranges::sort(mins);
    std::size_t reserve = 0;
    for (std::size_t n = 0; n + 1 < static_cast<std::size_t>(g.k) && n < mins.size(); ++n) {
      reserve = saturating_add(reserve, mins[n]);
    }
    return reserve;
  }

  bool too_big(const Row& r) const { return r.size() > limit_; }

  void check_budget(std::size_t rows) const {
    if (rows > options_.max_rows) {
      throw ResourceError("cut-set expansion exceeded " + std::to_string(options_.max_rows) + " rows at gate '" +
                              current_gate_ + "' (" + std::to_string(gates_done_) + "/" +
                              std::to_string(gates_total_) + " gates done)",
                          current_gate_, rows, gates_done_, gates_total_);
    }
  }

  Family or_of(const std::vector<const Family*>& inputs) const {
    Family all;
    for (const Family* f : inputs) {
      for (const Row& r : *f) {
        if (!too_big(r)) all.push_back(r);
      }
    }
    check_budget(all.size());
    return minimize(std::move(all));
  }

  // rows of `left` x rows of `right`, unions above the truncation dropped
  Family product_range(const Family& left, std::size_t begin, std::size_t end, const Family& right) const {
    Family out;
    Row merged;
    for (std::size_t i = begin; i < end; ++i) {
      const Row& a = left[i];
      for (const Row& b : right) {
        merged.clear();
        std::ranges::set_union(a, b, std::back_inserter(merged));
        if (too_big(merged)) continue;
        out.push_back(merged);
        if (out.size() > options_.max_rows) check_budget(out.size());
      }
    }
    return out;
  }

  // A row of one side that already contains a row of the other side is its
  // own product with that row and absorbs every other product it takes part
  // in, so it goes straight to the result. Only the remaining rows are
  // multiplied. Both inputs must be minimal families.
  Family product(const Family& left, const Family& right) const {
    if (left.empty() || right.empty()) return {};
    Family result;
    auto split = [&](const Family& side, const Family& other, Family& rest) {
      SubsetIndex index;
      for (const Row& r : other) {
        if (r.empty()) return false;  // other side is TRUE: the product is `side`
        index.insert(r);
      }
      for (const Row& r : side) {
        if (!index.covers(r, true)) {
          rest.push_back(r);
        } else if (!too_big(r)) {
          result.push_back(r);
        }
      }
      return true;
    };
    Family left_rest, right_rest;
    if (!split(left, right, left_rest)) return truncated(left);
    if (!split(right, left, right_rest)) return truncated(right);

    const unsigned threads = std::max(1u, options_.threads);
    if (threads == 1 || left_rest.size() < 64) {
      Family p = product_range(left_rest, 0, left_rest.size(), right_rest);
      result.insert(result.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
      check_budget(result.size());
      return minimize(std::move(result));
    }
    const std::size_t chunk = (left_rest.size() + threads - 1) / threads;
    std::vector<std::future<Family>> parts;
    for (std::size_t begin = 0; begin < left_rest.size(); begin += chunk) {
      const std::size_t end = std::min(left_rest.size(), begin + chunk);
      parts.push_back(std::async(std::launch::async, [this, &left_rest, &right_rest, begin, end] {
        return minimize(product_range(left_rest, begin, end, right_rest));
      }));
    }
    for (auto& p : parts) {
      Family f = p.get();
      result.insert(result.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
    }
    check_budget(result.size());
    return minimize(std::move(result));
  }

  Family truncated(const Family& f) const {
    Family out;
    for (const Row& r : f) {
      if (!too_big(r)) out.push_back(r);
    }
    return out;
  }

  Family and_of(std::vector<const Family*> inputs) const {
    // smallest families first keeps intermediate products small
    std::ranges::stable_sort(inputs, {}, [](const Family* f) { return f->size(); });
    Family acc{Row{}};
    for (const Family* f : inputs) {
      acc = product(acc, *f);
      if (acc.empty()) break;
    }
    return acc;
  }

  Family vote_of(const std::vector<const Family*>& inputs, int k) const {
    // V(k, i) = OR(AND(F_i, V(k-1, i+1)), V(k, i+1)); V(0, .) = TRUE
    const int n = static_cast<int>(inputs.size());
    std::map<std::pair<int, int>, Family> memo;
    std::function<const Family&(int, int)> v = [&](int kk, int i) -> const Family& {
      auto key = std::make_pair(kk, i);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      Family result;
      if (kk == 0) {
        result = Family{Row{}};
      } else if (n - i >= kk) {
        Family with = product(*inputs[static_cast<std::size_t>(i)], v(kk - 1, i + 1));
        const Family& without = v(kk, i + 1);
        with.insert(with.end(), without.begin(), without.end());
        check_budget(with.size());
        result = minimize(std::move(with));
      }
      return memo.emplace(key, std::move(result)).first->second;
    };
    return v(k, 0);
  }

  const FaultTree& ft_;
  SolveOptions options_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Family> memo_;
  std::unordered_map<std::string, std::size_t> limits_;
  std::size_t limit_ = kUnlimited;
  std::string current_gate_;
  std::size_t gates_done_ = 0;
  std::size_t gates_total_ = 0;
};

CutSetCollection finish(const FaultTree& ft, std::vector<CutSet> sets, std::optional<int> truncation) {
  std::ranges::sort(sets, canonical_less);
  CutSetCollection out;
  out.sets = std::move(sets);
  out.truncation = truncation;
  out.fingerprint = hex64(fnv1a64(fault_tree_to_json(ft)));
  return out;
}

CutSet make_cut_set(const FaultTree& ft, std::vector<std::string> events) {
  std::ranges::sort(events);
  CutSet cs;
  cs.contains_ccf = std::ranges::any_of(events, [&](const std::string& e) { return is_ccf(ft.find_event(e)->kind); });
  cs.events = std::move(events);
  return cs;
}

}  // namespace

CutSetCollection solve_minimal_cut_sets(const FaultTree& ft, const SolveOptions& options) {
  if (options.max_order && *options.max_order < 1) throw Error("truncation order must be at least 1");
  Solver solver(ft, options);
  Family family = solver.run();
  std::vector<CutSet> sets;
  sets.reserve(family.size());
  for (const Row& r : family) {
    if (r.empty()) throw TreeError("top event is true with no basic event failed");
    std::vector<std::string> names;
    for (auto i : r) names.push_back(solver.names()[i]);
    sets.push_back(make_cut_set(ft, std::move(names)));
  }
  return finish(ft, std::move(sets), options.max_order);
}

namespace {

// Truth-table evaluation over a bitmask of event values.
class TableEvaluator {
 public:
  explicit TableEvaluator(const FaultTree& ft) : order_(ft.topological_gates()) {
    for (const auto& [id, _] : ft.events()) {
      slot_.emplace(id, slots_++);
      events_.push_back(id);
    }
    const std::size_t first_gate = slots_;
    for (const auto& id : order_) slot_.emplace(id, slots_++);
    for (std::size_t g = 0; g < order_.size(); ++g) {
      const Gate& gate = *ft.find_gate(order_[g]);
      Compiled c{gate.kind, gate.kind == GateKind::kVote ? gate.k : 0, first_gate + g, {}};
      for (const auto& child : gate.children) c.children.push_back(slot_.at(child));
      gates_.push_back(std::move(c));
    }
    top_ = slot_.at(ft.top());
    values_.resize(slots_);
  }

  std::size_t event_count() const { return events_.size(); }
  const std::vector<std::string>& events() const { return events_; }

  bool eval(std::uint64_t mask) {
    for (std::size_t i = 0; i < events_.size(); ++i) values_[i] = (mask >> i) & 1u;
    for (const auto& g : gates_) {
      int on = 0;
      for (auto c : g.children) on += values_[c];
      const int n = static_cast<int>(g.children.size());
      switch (g.kind) {
        case GateKind::kOr: values_[g.slot] = on > 0; break;
        case GateKind::kAnd: values_[g.slot] = on == n; break;
        case GateKind::kVote: values_[g.slot] = on >= g.k; break;
      }
    }
    return values_[top_];
  }

 private:
  struct Compiled {
    GateKind kind;
    int k;
    std::size_t slot;
    std::vector<std::size_t> children;
  };
  std::vector<std::string> order_;
  std::unordered_map<std::string, std::size_t> slot_;
  std::size_t slots_ = 0;
  std::vector<std::string> events_;
  std::vector<Compiled> gates_;
  std::size_t top_ = 0;
  std::vector<char> values_;
};

}  // namespace

CutSetCollection brute_force_cut_sets(const FaultTree& ft, std::size_t event_limit) {
  TableEvaluator table(ft);
  const std::size_t n = table.event_count();
  if (n > event_limit || n > 30) {
    throw Error("brute-force oracle limited to " + std::to_string(event_limit) + " events; tree has " +
                std::to_string(n));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<bool> truth(total);
  for (std::uint64_t m = 0; m < total; ++m) truth[m] = table.eval(m);
  std::vector<CutSet> sets;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (!truth[m]) continue;
    bool minimal = true;
    for (std::size_t b = 0; b < n && minimal; ++b) {
      if ((m >> b) & 1u) minimal = !truth[m ^ (std::uint64_t{1} << b)];
    }
    if (!minimal) continue;
    if (m == 0) throw TreeError("top event is true with no basic event failed");
    std::vector<std::string> names;
    for (std::size_t b = 0; b < n; ++b) {
      if ((m >> b) & 1u) names.push_back(table.events()[b]);
    }
    sets.push_back(make_cut_set(ft, std::move(names)));
  }
  return finish(ft, std::move(sets), std::nullopt);
}

bool evaluate_structure_function(const FaultTree& ft, const std::map<std::string, bool>& assignment) {
  for (const auto& [id, _] : ft.events()) {
    if (!assignment.contains(id)) throw Error("assignment has no value for event '" + id + "'");
  }
  std::map<std::string, bool> value;
  for (const auto& id : ft.topological_gates()) {
    const Gate& g = *ft.find_gate(id);
    int on = 0;
    for (const auto& c : g.children) {
      auto it = value.find(c);
      on += (it != value.end() ? it->second : assignment.at(c)) ? 1 : 0;
    }
    const int n = static_cast<int>(g.children.size());
    value[id] = g.kind == GateKind::kOr ? on > 0 : g.kind == GateKind::kAnd ? on == n : on >= g.k;
  }
  return value.at(ft.top());
}

bool satisfies_witness(const FaultTree& ft, const CutSet& cut) {
  std::map<std::string, bool> assignment;
  for (const auto& [id, _] : ft.events()) assignment[id] = false;
  for (const auto& e : cut.events) assignment.at(e) = true;
  if (!evaluate_structure_function(ft, assignment)) return false;
  for (const auto& e : cut.events) {
    assignment[e] = false;
    const bool still = evaluate_structure_function(ft, assignment);
    assignment[e] = true;
    if (still) return false;
  }
  return true;
}

SpofReport extract_spofs(const CutSetCollection& css) {
  SpofReport r;
  if (css.sets.empty()) return r;
  r.order = css.sets.front().order();
  r.fallback = r.order != 1;
  for (const auto& s : css.sets) {
    if (s.order() == r.order) r.sets.push_back(s);
  }
  return r;
}

std::size_t OrderHistogram::cumulative(std::size_t k) const {
  std::size_t total = 0;
  for (const auto& [order, count] : exact) {
    if (order <= k) total += count;
  }
  return total;
}

OrderHistogram order_histogram(const CutSetCollection& css, std::optional<std::size_t> up_to) {
  OrderHistogram h;
  h.up_to = up_to ? *up_to : css.truncation ? static_cast<std::size_t>(*css.truncation) : css.max_order();
  for (std::size_t k = 1; k <= h.up_to; ++k) h.exact[k] = 0;
  for (const auto& s : css.sets) {
    if (s.order() <= h.up_to) ++h.exact[s.order()];
  }
  return h;
}

std::string cut_sets_to_csv(const CutSetCollection& css) {
  std::string out = "order,events,contains_ccf\n";
  for (const auto& s : css.sets) {
    out += std::to_string(s.order()) + "," + csv_field(join(s.events, " ")) + "," + (s.contains_ccf ? "yes" : "no") +
           "\n";
  }
  return out;
}

std::string canonical_cut_set_text(const CutSetCollection& css) {
  std::string out;
  for (const auto& s : css.sets) out += "{" + join(s.events, ",") + "}\n";
  return out;
}

FaultTree random_coherent_tree(std::mt19937_64& rng, const RandomTreeOptions& options) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n_events = uniform(1, std::max(1, options.max_events));
  const int n_gates = uniform(1, std::max(1, options.max_gates));
  auto gate_name = [](int i) { return "G" + std::to_string(i); };
  auto event_name = [](int i) {
    std::string s = std::to_string(i);
    return "E" + std::string(s.size() < 2 ? 1 : 0, '0') + s;
  };

  std::vector<Gate> gates(static_cast<std::size_t>(n_gates));
  for (int i = 0; i < n_gates; ++i) {
    Gate& g = gates[static_cast<std::size_t>(i)];
    g.id = gate_name(i);
    const int kind = uniform(0, 2);
    g.kind = kind == 0 ? GateKind::kAnd : kind == 1 ? GateKind::kOr : GateKind::kVote;
  }
  // spanning structure: every gate below the top hangs off an earlier gate
  for (int j = 1; j < n_gates; ++j) gates[static_cast<std::size_t>(uniform(0, j - 1))].children.push_back(gate_name(j));
  std::set<std::string> used_events;
  for (int i = 0; i < n_gates; ++i) {
    Gate& g = gates[static_cast<std::size_t>(i)];
    const int want = uniform(1, std::max(1, options.max_children));
    int guard = 0;
    while (static_cast<int>(g.children.size()) < want && guard++ < 32) {
      std::string child;
      if (i + 1 < n_gates && uniform(0, 3) == 0) {
        child = gate_name(uniform(i + 1, n_gates - 1));  // shared sub-gate, still acyclic
      } else {
        child = event_name(uniform(1, n_events));
      }
      if (std::ranges::find(g.children, child) == g.children.end()) g.children.push_back(child);
    }
    if (g.children.empty()) g.children.push_back(event_name(uniform(1, n_events)));
    for (const auto& c : g.children) {
      if (c.starts_with('E')) used_events.insert(c);
    }
    const int n = static_cast<int>(g.children.size());
    if (g.kind == GateKind::kVote) g.k = uniform(1, n);
  }
  FaultTree ft(gate_name(0));
  for (auto& g : gates) ft.add_gate(std::move(g));
  for (const auto& e : used_events) ft.add_event({e, EventKind::kHwIndep, {}, std::nullopt, "", "", ""});
  return ft;
}

}  // namespace resha
