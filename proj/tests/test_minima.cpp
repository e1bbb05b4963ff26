#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace surfhom;
using namespace testsupport;

namespace {

/// Candidates given directly by (length, class); walks are placeholders.
std::vector<WeightedCycle> pool(const std::vector<std::pair<Rational, IntVector>>& items) {
  std::vector<WeightedCycle> out;
  for (std::size_t k = 0; k < items.size(); ++k)
    out.push_back({ClosedWalk{{static_cast<Dart>(k)}}, items[k].first, items[k].second, "c" + std::to_string(k + 1)});
  return out;
}

std::vector<std::string> names(const std::vector<WeightedCycle>& cs, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(cs[i].label);
  return out;
}

/// Random weighted surface and all its cycles up to total edge count, with classes in a cotree basis.
struct Instance {
  RibbonGraph R;
  std::vector<WeightedCycle> cycles;
  std::size_t dim = 0;
};

Instance random_instance(std::mt19937& rng, int max_edges, std::size_t max_candidates) {
  for (;;) {
    RibbonGraph R = random_ribbon_of_genus_at_least(rng, 1, max_edges);
    std::vector<Rational> w;
    for (int e = 0; e < R.num_edges(); ++e) w.push_back(Rational(12 + static_cast<std::int64_t>(rng() % 13), 12));
    Rational total(0);
    for (const auto& x : w) total += x;
    auto cs = enumerate_cycles(WeightedGraph(R, w), total);
    // Keep a prefix that ends between two distinct lengths.
    std::size_t keep = std::min(cs.size(), max_candidates);
    while (keep > 0 && keep < cs.size() && cs[keep - 1].length == cs[keep].length) --keep;
    cs.resize(keep);
    if (cs.empty()) continue;
    attach_classes(cs, cotree_reference_basis(R));
    return {R, cs, cs.front().cls.size()};
  }
}

bool pool_has_basis(const std::vector<WeightedCycle>& cs, std::size_t dim) {
  for (const auto& idx : subsets(cs.size(), dim)) {
    std::vector<std::vector<std::int64_t>> m;
    for (auto i : idx) m.emplace_back(cs[i].cls.begin(), cs[i].cls.end());
    if (std::llabs(det_laplace(m)) == 1) return true;
  }
  return false;
}

}  // namespace

TEST(Enumeration, MatchesDepthFirstOracle) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    RibbonGraph R = random_ribbon(rng, 1, 6);
    auto cs = enumerate_cycles(WeightedGraph::unit(R), Rational(R.num_edges()));
    std::multiset<std::vector<int>> got;
    for (const auto& c : cs) {
      validate_walk(R, c.walk);
      ASSERT_EQ(canonical_walk(R, c.walk), c.walk.darts);
      ASSERT_EQ(c.length, Rational(static_cast<std::int64_t>(c.walk.size())));
      std::vector<int> es;
      for (Dart h : c.walk.darts) es.push_back(R.edge(h));
      std::sort(es.begin(), es.end());
      got.insert(es);
    }
    ASSERT_EQ(got, cycles_by_dfs(R));
    for (std::size_t i = 1; i < cs.size(); ++i) ASSERT_LE(cs[i - 1].length, cs[i].length);
  }
}

TEST(Enumeration, RespectsBound) {
  GluedSurface s = glue_polygons({GluingWord::parse("a b a' b'")});
  WeightedGraph G(s.ribbon, {Rational(1), Rational(3, 2)});
  auto cs = enumerate_cycles(G, Rational(3, 2));
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].length, Rational(1));
  EXPECT_EQ(cs[1].length, Rational(3, 2));
  EXPECT_EQ(enumerate_cycles(G, Rational(5, 2)).size(), 4u);
  EXPECT_THROW(enumerate_cycles(G, Rational(0)), DomainError);
  EXPECT_THROW(WeightedGraph(s.ribbon, {Rational(1), Rational(-1)}), ValidationError);
}

TEST(Procedures, SpanOracleVersusExtendability) {
  auto cs = pool({{Rational(1), {1, 1}}, {Rational(2), {1, -1}}, {Rational(3), {1, 0}}});
  MinimaTrace t1 = successive_minima_I(cs, Modulus(), 2);
  EXPECT_EQ(names(cs, t1.selected), (std::vector<std::string>{"c1", "c2"}));
  EXPECT_TRUE(t1.complete);
  EXPECT_EQ(det_int(detail::class_matrix(cs, t1.selected, 2)), -2);
  MinimaTrace t2 = successive_minima_II(cs, Modulus());
  EXPECT_EQ(names(cs, t2.selected), (std::vector<std::string>{"c1", "c3"}));
  EXPECT_EQ(t2.events[1].decision, Decision::rejected);
  EXPECT_EQ(t2.events[1].reason, Reason::not_extendable);
  MinimaTrace t3 = successive_minima_I(cs, Modulus::of(2), 2);
  EXPECT_EQ(names(cs, t3.selected), (std::vector<std::string>{"c1", "c3"}));
}

TEST(Procedures, TraceJson) {
  auto cs = pool({{Rational(1), {1, 0}}, {Rational(1), {2, 0}}, {Rational(5, 4), {0, 1}}});
  nlohmann::json j = trace_to_json(successive_minima_I(cs, Modulus(), 2));
  EXPECT_EQ(j["procedure"], "I");
  EXPECT_EQ(j["events"][1]["decision"], "rejected");
  EXPECT_EQ(j["events"][1]["reason"], "span-dependent");
  EXPECT_EQ(j["events"][2]["length"], "5/4");
  EXPECT_EQ(j["events"][0]["tie_break"], "canonical-order");
  EXPECT_FALSE(j["events"][2].contains("tie_break"));
  EXPECT_EQ(j["halting"], "target-reached");
}

TEST(Procedures, RejectUnsortedOrUnclassedPools) {
  auto cs = pool({{Rational(2), {1, 0}}, {Rational(1), {0, 1}}});
  EXPECT_THROW(successive_minima_I(cs, Modulus(), 2), ValidationError);
  auto bare = pool({{Rational(1), {}}});
  EXPECT_THROW(successive_minima_II(bare, Modulus()), ValidationError);
}

TEST(Procedures, GreedyExtendabilityCanStall) {
  // (3, 2) is primitive but completes to a basis with neither (1, 0) nor (0, 1).
  auto cs = pool({{Rational(1), {3, 2}}, {Rational(2), {1, 0}}, {Rational(3), {0, 1}}});
  MinimaTrace t = successive_minima_II(cs, Modulus());
  EXPECT_FALSE(t.complete);
  EXPECT_EQ(t.halting, "candidates-exhausted");
  EXPECT_TRUE(pool_has_basis(cs, 2));
}

TEST(ProcedureProperties, SurfacePools) {
  std::mt19937 rng(42);
  int complete_ii = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Instance in = random_instance(rng, 6, 40);
    for (Modulus mod : {Modulus(), Modulus::of(2), Modulus::of(3)}) {
      MinimaTrace t1 = successive_minima_I(in.cycles, mod, in.dim);
      MinimaTrace t2 = successive_minima_II(in.cycles, mod);
      for (const MinimaTrace* t : {&t1, &t2}) {
        for (std::size_t k = 1; k < t->selected.size(); ++k)
          ASSERT_LE(in.cycles[t->selected[k - 1]].length, in.cycles[t->selected[k]].length);
      }
      ASSERT_EQ(trace_to_json(t1), trace_to_json(successive_minima_I(in.cycles, mod, in.dim)));
      ASSERT_EQ(trace_to_json(t2), trace_to_json(successive_minima_II(in.cycles, mod)));
      if (!mod.is_integers()) {
        ASSERT_EQ(sorted_lengths(pick(in.cycles, t1.selected)), sorted_lengths(pick(in.cycles, t2.selected)));
      } else {
        if (pool_has_basis(in.cycles, in.dim)) {
          ASSERT_TRUE(t2.complete);
          ++complete_ii;
        }
        if (t2.complete) {
          ASSERT_TRUE(is_locally_minimal(t2.selected, in.cycles, mod));
        }
      }
    }
  }
  EXPECT_GT(complete_ii, 100);
}

TEST(Order, FourOutcomes) {
  std::vector<Rational> a{Rational(1), Rational(2)}, b{Rational(1), Rational(3)}, c{Rational(0), Rational(5)};
  EXPECT_EQ(compare_lengths(a, a), Order::equal);
  EXPECT_EQ(compare_lengths(a, b), Order::less);
  EXPECT_EQ(compare_lengths(b, a), Order::greater);
  EXPECT_EQ(compare_lengths(a, c), Order::incomparable);
  EXPECT_THROW(compare_lengths(a, {Rational(1)}), ValidationError);
}

TEST(GlobalMinimum, ExistsOrNot) {
  // c1 + c2 and c1 + c3 are the bases; {c1, c2} is pointwise shortest.
  auto cs = pool({{Rational(1), {1, 0}}, {Rational(2), {0, 1}}, {Rational(3), {1, 1}}});
  auto g = has_global_minimum(cs, Modulus());
  ASSERT_TRUE(g);
  EXPECT_EQ(names(cs, *g), (std::vector<std::string>{"c1", "c2"}));
  EXPECT_TRUE(is_globally_minimal(pick(cs, *g), cs, Modulus()).minimal);
  GlobalMinimality m = is_globally_minimal(pick(cs, {1, 2}), cs, Modulus());
  EXPECT_FALSE(m.minimal);
  EXPECT_FALSE(m.witnesses.empty());
  // No basis at all among the candidates.
  auto none = pool({{Rational(1), {2, 0}}, {Rational(2), {0, 1}}});
  EXPECT_FALSE(has_global_minimum(none, Modulus()));
  EXPECT_TRUE(has_global_minimum(none, Modulus::of(3)));
  // Bases with sorted lengths (1, 3) and (2, 2) and nothing below both.
  auto inc = pool({{Rational(1), {1, 0}}, {Rational(2), {1, 2}}, {Rational(2), {1, 3}}, {Rational(3), {0, 1}}});
  EXPECT_FALSE(has_global_minimum(inc, Modulus()));
  EXPECT_EQ(compare_bases(pick(inc, {0, 3}), pick(inc, {1, 2})), Order::incomparable);
}

TEST(GlobalMinimum, ProcedureIBasisIsMinimal) {
  std::mt19937 rng(43);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 60; ++trial) {
    Instance in = random_instance(rng, 6, 12);
    MinimaTrace t = successive_minima_I(in.cycles, Modulus(), in.dim);
    if (!t.complete || !is_partial_basis(detail::class_matrix(in.cycles, t.selected, in.dim))) {
      if (t.complete) {
        EXPECT_THROW(verify_lemma_procI_minimal(t, in.cycles), DomainError);
      }
      continue;
    }
    ASSERT_TRUE(verify_lemma_procI_minimal(t, in.cycles));
    ASSERT_TRUE(is_globally_minimal(pick(in.cycles, t.selected), in.cycles, Modulus()).minimal);
    ++checked;
  }
  EXPECT_GE(checked, 60);
}

TEST(Generation, ContinuesPastRankUntilGenerating) {
  auto cs = pool({{Rational(1), {2, 0}}, {Rational(2), {0, 1}}, {Rational(3), {3, 0}}, {Rational(4), {1, 1}}});
  MinimaTrace t = generate_by_minima(cs);
  EXPECT_EQ(t.halting, "generates");
  EXPECT_EQ(names(cs, t.selected), (std::vector<std::string>{"c1", "c2", "c3"}));
}

TEST(Straightness, LoopsAndShortcuts) {
  GluedSurface t = glue_polygons({GluingWord::parse("a b a' b'")});
  WeightedGraph G = WeightedGraph::unit(t.ribbon);
  EXPECT_TRUE(is_straight_cycle(G, {t.walk("a"), Rational(1), {}, ""}));
  // Square with a diagonal chord of length 1: the square is not straight.
  std::vector<std::vector<Dart>> rot = {{0, 7, 8}, {1, 2}, {3, 4, 9}, {5, 6}};
  std::vector<Dart> twin(10);
  for (Dart h = 0; h < 10; ++h) twin[h] = h ^ 1;
  RibbonGraph R(rot, twin);
  WeightedGraph S = WeightedGraph::unit(R);
  ClosedWalk square{{0, 2, 4, 6}};
  ClosedWalk triangle{{0, 2, 9}};
  EXPECT_FALSE(is_straight_cycle(S, {square, Rational(4), {}, ""}));
  EXPECT_TRUE(is_straight_cycle(S, {triangle, Rational(3), {}, ""}));
  auto d = all_pairs_distance(S);
  EXPECT_EQ(*d[0][2], Rational(1));
  EXPECT_EQ(*d[1][3], Rational(2));
}
