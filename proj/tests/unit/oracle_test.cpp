#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "resha/cutset.hpp"
#include "test_support.hpp"

namespace resha {
namespace {

using testing::Family;
using testing::as_family;

constexpr int kTrials = 600;

bool is_antichain(const CutSetCollection& css) {
  for (std::size_t i = 0; i < css.sets.size(); ++i) {
    for (std::size_t j = 0; j < css.sets.size(); ++j) {
      if (i == j) continue;
      const auto& a = css.sets[i].events;
      const auto& b = css.sets[j].events;
      if (std::includes(b.begin(), b.end(), a.begin(), a.end())) return false;
    }
  }
  return true;
}

// Trees from the test-side generator, checked against the test-side truth table.
TEST(Oracle, SolverMatchesIndependentTruthTable) {
  std::mt19937 rng(20240611);
  std::size_t sets = 0;
  for (int t = 0; t < kTrials; ++t) {
    const FaultTree ft = testing::random_tree(rng);
    const Family expected = testing::minimal_true_points(ft);
    const auto css = solve_minimal_cut_sets(ft);
    ASSERT_EQ(as_family(css), expected) << "trial " << t << "\n" << fault_tree_to_json(ft);
    ASSERT_TRUE(is_antichain(css)) << "trial " << t;
    sets += css.sets.size();
  }
  EXPECT_GT(sets, static_cast<std::size_t>(kTrials));
}

TEST(Oracle, LibraryBruteForceAgreesWithTestTruthTable) {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    const FaultTree ft = testing::random_tree(rng);
    ASSERT_EQ(as_family(brute_force_cut_sets(ft)), testing::minimal_true_points(ft)) << "trial " << t;
  }
}

// Trees from the library's generator (shared events, nested votes).
TEST(Oracle, SolverMatchesOnLibraryGeneratedTrees) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < kTrials; ++t) {
    const FaultTree ft = random_coherent_tree(rng);
    ASSERT_EQ(as_family(solve_minimal_cut_sets(ft)), testing::minimal_true_points(ft))
        << "trial " << t << "\n" << fault_tree_to_json(ft);
  }
}

TEST(Oracle, EveryCutSetIsAWitness) {
  std::mt19937 rng(3);
  for (int t = 0; t < kTrials; ++t) {
    const FaultTree ft = testing::random_tree(rng);
    for (const auto& s : solve_minimal_cut_sets(ft).sets) {
      const testing::EventSet members(s.events.begin(), s.events.end());
      ASSERT_TRUE(testing::top_holds(ft, members)) << "trial " << t;
      for (const auto& e : members) {
        auto smaller = members;
        smaller.erase(e);
        ASSERT_FALSE(testing::top_holds(ft, smaller)) << "trial " << t << " without " << e;
      }
      ASSERT_TRUE(satisfies_witness(ft, s));
    }
  }
}

TEST(Oracle, TruncationEqualsLowOrderSubset) {
  std::mt19937 rng(11);
  for (int t = 0; t < kTrials; ++t) {
    const FaultTree ft = testing::random_tree(rng);
    const Family full = testing::minimal_true_points(ft);
    std::optional<OrderHistogram> previous;
    for (int k = 1; k <= 6; ++k) {
      SolveOptions o;
      o.max_order = k;
      const auto css = solve_minimal_cut_sets(ft, o);
      ASSERT_EQ(as_family(css), testing::up_to_order(full, static_cast<std::size_t>(k)))
          << "trial " << t << " k=" << k << "\n" << fault_tree_to_json(ft);
      const OrderHistogram h = order_histogram(css);
      if (previous) {
        for (const auto& [order, count] : previous->exact) {
          ASSERT_EQ(h.exact.count(order) ? h.exact.at(order) : 0u, count) << "trial " << t << " k=" << k;
        }
      }
      previous = h;
    }
  }
}

// Deep chains of AND/OR/VOTE with heavy sharing exercise the per-gate order
// limits, which rely on disjoint supports to tighten the budget of siblings.
TEST(Oracle, OrderLimitsAreSoundOnSharedDeepTrees) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int t = 0; t < 300; ++t) {
    FaultTree ft("T0");
    const int depth = 6;
    for (int i = 0; i < depth; ++i) {
      Gate g;
      g.id = "T" + std::to_string(i);
      const int kd = kind(rng);
      g.kind = kd == 0 ? GateKind::kOr : kd == 1 ? GateKind::kAnd : GateKind::kVote;
      std::set<std::string> kids;
      while (kids.size() < 3) kids.insert("x" + std::to_string(pick(rng)));
      g.children.assign(kids.begin(), kids.end());
      if (i + 1 < depth) g.children.push_back("T" + std::to_string(i + 1));
      if (g.kind == GateKind::kVote) g.k = 2;
      ft.add_gate(std::move(g));
    }
    for (int e = 0; e < 10; ++e) {
      const std::string id = "x" + std::to_string(e);
      bool used = false;
      for (const auto& [_, g] : ft.gates()) used = used || std::ranges::find(g.children, id) != g.children.end();
      if (used) ft.add_event({id, EventKind::kHwIndep, {}, std::nullopt, "", "", ""});
    }
    const Family full = testing::minimal_true_points(ft);
    for (int k = 1; k <= 6; ++k) {
      SolveOptions o;
      o.max_order = k;
      ASSERT_EQ(as_family(solve_minimal_cut_sets(ft, o)), testing::up_to_order(full, static_cast<std::size_t>(k)))
          << "trial " << t << " k=" << k << "\n" << fault_tree_to_json(ft);
    }
  }
}

TEST(Oracle, FilterCommutesWithSubtreeExtraction) {
  std::mt19937 rng(17);
  std::bernoulli_distribution software(0.3);
  for (int t = 0; t < 200; ++t) {
    const FaultTree base = testing::random_tree(rng, 10, 6);
    FaultTree ft(base.top());
    for (const auto& [_, g] : base.gates()) ft.add_gate(g);
    for (auto [_, e] : base.events()) {
      if (software(rng)) e.kind = EventKind::kSwUca;
      ft.add_event(e);
    }
    const auto keep = hardware_event_kinds();
    const FilteredTree whole = filter_events(ft, keep);
    for (const auto& [gate, _] : ft.gates()) {
      const FaultTree sub = extract_subtree(ft, gate);
      const FilteredTree filtered = filter_events(sub, keep);
      const Family lhs = filtered.top_unreachable ? Family{} : as_family(solve_minimal_cut_sets(filtered.tree));
      // fixing software events to false leaves exactly the all-hardware minimal sets
      Family expected;
      for (const auto& s : testing::minimal_true_points(sub)) {
        bool hardware = true;
        for (const auto& e : s) hardware = hardware && is_hardware(sub.find_event(e)->kind);
        if (hardware) expected.insert(s);
      }
      ASSERT_EQ(lhs, expected) << "trial " << t << " gate " << gate;
      if (!whole.top_unreachable && whole.tree.find_gate(gate)) {
        ASSERT_EQ(as_family(solve_minimal_cut_sets(extract_subtree(whole.tree, gate))), lhs)
            << "trial " << t << " gate " << gate;
      }
    }
  }
}

}  // namespace
}  // namespace resha
