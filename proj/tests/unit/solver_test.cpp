#include <gtest/gtest.h>

#include "generators.hpp"
#include "wgrz/error.hpp"
#include "wgrz/solver.hpp"
#include "wgrz/verify.hpp"

namespace wgrz {
namespace {

using M = ModalFormula;
using testing::pick;
using testing::random_ast;
using testing::random_model;

bool sound(const SatVerdict& v, const M& f) {
  return !v.satisfiable() || (v.witness && model_check(*v.witness, v.witness->root(), f));
}

TEST(Tableau, Examples) {
  const SatVerdict blind = sat_k_tableau(M::box(M::falsum()));
  ASSERT_TRUE(blind.satisfiable());
  EXPECT_EQ(blind.witness->frame().size(), 1u);
  EXPECT_EQ(blind.witness->frame().edge_count(), 0u);
  EXPECT_EQ(blind.label(), "sat");
  EXPECT_TRUE(sat_k_tableau(M::conj({M::dia(M::verum()), M::box(M::falsum())})).unsatisfiable());
}

TEST(Tableau, ClassicValidities) {
  auto valid = [](const std::string& text) { return sat_k_tableau(M::negation(parse_modal(text))).unsatisfiable(); };
  EXPECT_TRUE(valid("[] (p1 -> p2) -> ([] p1 -> [] p2)"));
  EXPECT_TRUE(valid("(<> p1 -> ~ [] ~ p1) & (~ [] ~ p1 -> <> p1)"));
  EXPECT_TRUE(valid("[] (p1 & p2) -> [] p1 & [] p2"));
  EXPECT_TRUE(valid("<> (p1 | p2) -> <> p1 | <> p2"));
  EXPECT_FALSE(valid("[] p1 -> p1"));
  EXPECT_FALSE(valid("[] p1 -> [] [] p1"));
  EXPECT_FALSE(valid("<> p1 & <> p2 -> <> (p1 & p2)"));
}

TEST(Tableau, BudgetExhaustionIsUnknown) {
  const M f = parse_modal("(p1 | p2) & (p2 | p3) & <> (p1 | p3) & <> (~p1 | p2) & [] (p3 | <> p1)");
  const SatVerdict v = sat_k_tableau(f, {1, true});
  EXPECT_EQ(v.outcome, SatOutcome::Unknown);
  EXPECT_EQ(v.label(), "unknown");
  EXPECT_FALSE(v.note.empty());
  EXPECT_FALSE(v.witness.has_value());
}

TEST(Tableau, WitnessIsATreeNoDeeperThanTheFormula) {
  Rng rng(41);
  for (int i = 0; i < 400; ++i) {
    const M f = random_ast(rng, 6);
    const SatVerdict v = sat_k_tableau(f);
    ASSERT_NE(v.outcome, SatOutcome::Unknown);
    EXPECT_TRUE(sound(v, f)) << render(f);
    if (!v.satisfiable()) continue;
    const KripkeFrame& fr = v.witness->frame();
    EXPECT_EQ(fr.edge_count() + 1, fr.size());
    for (std::size_t w = 0; w < fr.size(); ++w) {
      EXPECT_LE(fr.world(w).as_base().level, modal_depth(f));
    }
  }
}

TEST(Tableau, Deterministic) {
  Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    const M f = random_ast(rng, 6);
    const SatVerdict a = sat_k_tableau(f), b = sat_k_tableau(f);
    EXPECT_EQ(a.label(), b.label());
    EXPECT_EQ(a.stats.nodes, b.stats.nodes);
    if (a.witness) EXPECT_EQ(a.witness->frame().edges(), b.witness->frame().edges());
  }
}

TEST(Tableau, NegationDuality) {
  Rng rng(43);
  int valid_seen = 0;
  for (int i = 0; i < 400; ++i) {
    const M f = random_modal(rng, 2, 10);
    if (!sat_k_tableau(M::negation(f)).unsatisfiable()) continue;
    ++valid_seen;
    for (int j = 0; j < 20; ++j) {
      const KripkeModel m = random_model(rng, static_cast<std::size_t>(pick(rng, 1, 5)), 2);
      EXPECT_TRUE(ModelChecker(m).truth_set(f).all()) << render(f);
    }
  }
  EXPECT_GT(valid_seen, 10);
}

TEST(Bounded, Examples) {
  EXPECT_TRUE(sat_bounded(M::box(M::falsum()), 1).satisfiable());
  // A reflexive world satisfies <><>true, so even one world suffices.
  const SatVerdict loop = sat_bounded(M::dia(M::dia(M::verum())), 1);
  ASSERT_TRUE(loop.satisfiable());
  EXPECT_TRUE(loop.witness->frame().has_edge(0, 0));
  const M split = parse_modal("<> p1 & <> ~ p1");
  const SatVerdict one = sat_bounded(split, 1);
  EXPECT_TRUE(one.unsatisfiable());
  EXPECT_EQ(one.label(), "bounded-unsat");
  EXPECT_EQ(one.bound, 1);
  EXPECT_TRUE(sat_bounded(split, 2).satisfiable());
  EXPECT_THROW(sat_bounded(split, 0), PreconditionError);
}

TEST(Bounded, TooManyAtomsIsUnknown) {
  std::vector<M> parts;
  for (int i = 1; i <= 26; ++i) parts.push_back(M::var(i));
  EXPECT_EQ(sat_bounded(M::conj(parts), 3).outcome, SatOutcome::Unknown);
}

TEST(Bounded, MonotoneInTheBound) {
  Rng rng(44);
  for (int i = 0; i < 150; ++i) {
    const M f = random_modal(rng, 2, 12);
    bool seen_sat = false;
    for (int bound = 1; bound <= 5; ++bound) {
      const SatVerdict v = sat_bounded(f, bound);
      ASSERT_NE(v.outcome, SatOutcome::Unknown);
      EXPECT_TRUE(sound(v, f));
      if (seen_sat) EXPECT_TRUE(v.satisfiable()) << render(f) << " bound " << bound;
      seen_sat = seen_sat || v.satisfiable();
      if (v.satisfiable()) EXPECT_LE(v.witness->frame().size(), static_cast<std::size_t>(bound));
    }
  }
}

// Satisfiable somewhere in a model with at most `n` worlds, by plain
// enumeration of frames and valuations of p1, p2.
bool satisfiable_by_enumeration(const M& f, std::size_t n) {
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<WorldId> ids;
    for (std::size_t i = 0; i < size; ++i) ids.push_back(WorldId::base(0, {}, static_cast<int>(i)));
    for (std::uint32_t rel = 0; rel < (1u << (size * size)); ++rel) {
      std::vector<Edge> edges;
      for (std::size_t e = 0; e < size * size; ++e) {
        if (rel >> e & 1u) edges.emplace_back(e / size, e % size);
      }
      const KripkeFrame frame(ids, edges);
      for (std::uint32_t val = 0; val < (1u << (2 * size)); ++val) {
        std::map<int, WorldSet> valuation{{1, WorldSet(size)}, {2, WorldSet(size)}};
        for (std::size_t w = 0; w < size; ++w) {
          valuation[1][w] = val >> w & 1u;
          valuation[2][w] = val >> (size + w) & 1u;
        }
        if (ModelChecker(frame, valuation).truth_set(f).any()) return true;
      }
    }
  }
  return false;
}

TEST(Bounded, MatchesModelEnumeration) {
  Rng rng(46);
  for (int i = 0; i < 40; ++i) {
    const M f = random_modal(rng, 2, 10);
    for (int bound = 1; bound <= 3; ++bound) {
      EXPECT_EQ(sat_bounded(f, bound).satisfiable(), satisfiable_by_enumeration(f, bound))
          << render(f) << " bound " << bound;
    }
  }
}

TEST(Agreement, BothDirections) {
  Rng rng(45);
  for (int i = 0; i < 200; ++i) {
    const M f = random_modal(rng, 2, 12);
    const SatVerdict t = sat_k_tableau(f);
    ASSERT_NE(t.outcome, SatOutcome::Unknown);
    if (t.satisfiable()) {
      const int size = static_cast<int>(t.witness->frame().size());
      if (size <= 8) EXPECT_TRUE(sat_bounded(f, size).satisfiable()) << render(f);
    } else {
      EXPECT_FALSE(sat_bounded(f, 6).satisfiable()) << render(f);
    }
    const CrossCheck c = cross_validate(f, 6);
    EXPECT_TRUE(c.agree) << render(f);
  }
}

}  // namespace
}  // namespace wgrz
