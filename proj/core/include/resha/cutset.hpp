#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "resha/fault_tree.hpp"

namespace resha {

struct CutSet {
  std::vector<std::string> events;  // sorted
  bool contains_ccf = false;

  std::size_t order() const noexcept { return events.size(); }
  friend auto operator<=>(const CutSet&, const CutSet&) = default;
};

/// Canonical order: by size, then lexicographically by event IDs.
bool canonical_less(const CutSet& a, const CutSet& b);

struct CutSetCollection {
  std::vector<CutSet> sets;  // canonical order, pairwise minimal
  std::optional<int> truncation;
  std::string fingerprint;  // of the solved tree's exchange JSON

  std::size_t count_of_order(std::size_t order) const;
  std::size_t count_up_to(std::size_t order) const;
  std::size_t max_order() const;
};

struct SolveOptions {
  std::optional<int> max_order;
  /// Live rows allowed in a single gate's expansion before giving up.
  std::size_t max_rows = 20'000'000;
  unsigned threads = 1;
};

/// Minimal cut sets by bottom-up MOCUS expansion with absorption; rows above
/// the truncation order are dropped as soon as they appear. Throws
/// ResourceError when a gate exceeds the row budget, TreeError on bad trees.
CutSetCollection solve_minimal_cut_sets(const FaultTree& ft, const SolveOptions& options = {});

/// Independent check: enumerates every assignment of the structure function
/// and keeps the minimal true points. Throws Error above `event_limit` events.
CutSetCollection brute_force_cut_sets(const FaultTree& ft, std::size_t event_limit = 20);

/// Throws Error if an event of the tree has no entry in the assignment.
bool evaluate_structure_function(const FaultTree& ft, const std::map<std::string, bool>& assignment);

/// Top fails with exactly `cut` true; clearing any one member lets it survive.
bool satisfies_witness(const FaultTree& ft, const CutSet& cut);

struct SpofReport {
  std::size_t order = 0;  // 1 unless nothing of order one exists
  bool fallback = false;
  std::vector<CutSet> sets;
};

/// Order-one cut sets; if there are none, the lowest populated order.
SpofReport extract_spofs(const CutSetCollection& css);

struct OrderHistogram {
  std::map<std::size_t, std::size_t> exact;  // order -> count
  std::size_t up_to = 0;                     // orders reported: 1..up_to

  /// Number of sets with order <= k (the nested-truncation count).
  std::size_t cumulative(std::size_t k) const;
};

/// Counts per order for 1..up_to (defaults to the truncation or the largest order).
OrderHistogram order_histogram(const CutSetCollection& css, std::optional<std::size_t> up_to = std::nullopt);

/// CSV columns: order,events,contains_ccf (events space-separated).
std::string cut_sets_to_csv(const CutSetCollection& css);

std::string canonical_cut_set_text(const CutSetCollection& css);

struct RandomTreeOptions {
  int max_events = 12;
  int max_gates = 8;
  int max_children = 4;
};

/// Coherent random tree with shared events and nested VOTE gates.
FaultTree random_coherent_tree(std::mt19937_64& rng, const RandomTreeOptions& options = {});

}  // namespace resha
