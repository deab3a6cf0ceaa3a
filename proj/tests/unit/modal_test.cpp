#include <gtest/gtest.h>

#include "generators.hpp"
#include "wgrz/error.hpp"
#include "wgrz/kripke.hpp"
#include "wgrz/modal.hpp"

namespace wgrz {
namespace {

using M = ModalFormula;
using testing::random_ast;

TEST(ModalParse, Examples) {
  EXPECT_EQ(parse_modal("[] false"), M::box(M::falsum()));
  EXPECT_EQ(parse_modal("box+ p1"), M::conj({M::var(1), M::box(M::var(1))}));
  EXPECT_EQ(parse_modal("dia^2 false"), M::dia(M::dia(M::falsum())));
}

TEST(ModalParse, SugarAndPrecedence) {
  const M p1 = M::var(1), p2 = M::var(2), p3 = M::var(3);
  EXPECT_EQ(parse_modal("box<=0 p1"), p1);
  EXPECT_EQ(parse_modal("box<=2 p1"), M::conj({p1, M::box(p1), M::box(M::box(p1))}));
  EXPECT_EQ(parse_modal("box^3 p1"), M::box(M::box(M::box(p1))));
  EXPECT_EQ(parse_modal("p1 & p2 & p3"), M::conj({p1, p2, p3}));
  EXPECT_EQ(parse_modal("(p1 & p2) & p3"), M::conj({M::conj({p1, p2}), p3}));
  EXPECT_EQ(parse_modal("p1 -> p2 -> p3"), M::implies(p1, M::implies(p2, p3)));
  EXPECT_EQ(parse_modal("[] p1 | <> ~ p2"), M::disj(M::box(p1), M::dia(M::negation(p2))));
  EXPECT_EQ(parse_modal("true"), M::verum());
}

TEST(ModalParse, Errors) {
  EXPECT_THROW(parse_modal("p1 ->"), ParseError);
  EXPECT_THROW(parse_modal("[] (p1"), ParseError);
  EXPECT_THROW(parse_modal("box^ p1"), ParseError);
  EXPECT_THROW(parse_modal("A p1 . p1"), ParseError);
  EXPECT_THROW(parse_modal("p1 p2"), ParseError);
}

TEST(ModalRender, Examples) {
  EXPECT_EQ(render(M::box(M::falsum())), "[] false");
  EXPECT_EQ(render(M::conj({M::var(1), M::box(M::var(1))})), "(p1 & [] p1)");
  EXPECT_EQ(render(M::box_le(2, M::var(1))), "box<=2 p1");
}

TEST(ModalRender, RoundTripOnRandomAsts) {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const M f = random_ast(rng, 8);
    const M back = parse_modal(render(f));
    // The parser expands sugar, so the round trip lands on the expansion.
    EXPECT_EQ(back, expand_sugar(f)) << render(f);
    if (!f.is_sugar() && expand_sugar(f) == f) EXPECT_EQ(back, f);
  }
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(M::box(M::var(1)), Substitution{{1, M::falsum()}}), M::box(M::falsum()));
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const M f = random_ast(rng, 6);
    EXPECT_EQ(substitute(f, {}), f);
  }
}

TEST(Substitute, Homomorphism) {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const M a = random_ast(rng, 4), b = random_ast(rng, 4), g = random_ast(rng, 3);
    const Substitution s{{1, g}, {2, M::box(g)}};
    const auto sa = substitute(a, s), sb = substitute(b, s);
    EXPECT_EQ(substitute(M::conj({a, b}), s), M::conj({sa, sb}));
    EXPECT_EQ(substitute(M::disj(a, b), s), M::disj(sa, sb));
    EXPECT_EQ(substitute(M::implies(a, b), s), M::implies(sa, sb));
    EXPECT_EQ(substitute(M::negation(a), s), M::negation(sa));
    EXPECT_EQ(substitute(M::box(a), s), M::box(sa));
    EXPECT_EQ(substitute(M::dia(a), s), M::dia(sa));
    EXPECT_EQ(substitute(M::box_le(2, a), s), M::box_le(2, sa));
    EXPECT_EQ(substitute(M::var(3), s), M::var(3));
  }
}

TEST(Substitute, DisjointSubstitutionsCommute) {
  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const M f = random_ast(rng, 6);
    // g avoids p2, h avoids p1.
    const M g = substitute(random_ast(rng, 3), Substitution{{2, M::var(3)}});
    const M h = substitute(random_ast(rng, 3), Substitution{{1, M::var(3)}});
    const M sequential = substitute(substitute(f, Substitution{{1, g}}), Substitution{{2, h}});
    const M simultaneous = substitute(f, Substitution{{1, g}, {2, h}});
    EXPECT_EQ(sequential, simultaneous);
  }
}

TEST(Substitute, SizeBound) {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const M f = random_ast(rng, 6);
    const M g = random_ast(rng, 4), h = random_ast(rng, 4);
    const Substitution s{{1, g}, {2, h}, {3, g}};
    const auto max_size = std::max(formula_size(g), formula_size(h));
    EXPECT_LE(formula_size(substitute(f, s)), formula_size(f) * std::max<std::uint64_t>(max_size, 1));
  }
}

TEST(Size, ExamplesAndSugar) {
  EXPECT_EQ(formula_size(M::falsum()), 1u);
  EXPECT_EQ(formula_size(M::box(M::falsum())), 2u);
  EXPECT_EQ(formula_size(M::conj({M::var(1), M::var(2), M::var(3)})), 5u);
  Rng rng(10);
  for (int i = 0; i < 500; ++i) {
    const M f = random_ast(rng, 6);
    EXPECT_EQ(formula_size(f), formula_size(expand_sugar(f))) << render(f);
  }
}

TEST(ExpandSugar, Examples) {
  const M psi = M::disj(M::var(1), M::box(M::var(2)));
  EXPECT_EQ(expand_sugar(M::box_plus(psi)), M::conj({psi, M::box(psi)}));
  EXPECT_EQ(expand_sugar(M::box_le(0, psi)), psi);
  EXPECT_EQ(expand_sugar(M::box_le(2, psi)), M::conj({psi, M::box(psi), M::box(M::box(psi))}));
}

// box<=2 p1 against "p1 at every world reachable in at most two steps",
// over every model with at most four worlds.
TEST(ExpandSugar, BoundedBoxMatchesReachabilityOnAllSmallModels) {
  const M sugared = M::box_le(2, M::var(1));
  const M expanded = expand_sugar(sugared);
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<WorldId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(WorldId::base(0, {}, static_cast<int>(i)));
    for (std::uint32_t rel = 0; rel < (1u << (n * n)); ++rel) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (rel >> (i * n + j) & 1u) edges.emplace_back(i, j);
        }
      }
      const KripkeFrame frame(ids, edges);
      for (std::uint32_t val = 0; val < (1u << n); ++val) {
        WorldSet p(n);
        for (std::size_t w = 0; w < n; ++w) p[w] = val >> w & 1u;
        const std::map<int, WorldSet> valuation{{1, p}};
        ModelChecker checker(frame, valuation);
        for (std::size_t w = 0; w < n; ++w) {
          bool expected = p[w];
          for (std::size_t u = 0; u < n; ++u) {
            if (!(rel >> (w * n + u) & 1u)) continue;
            expected = expected && p[u];
            for (std::size_t v = 0; v < n; ++v) {
              if (rel >> (u * n + v) & 1u) expected = expected && p[v];
            }
          }
          ASSERT_EQ(checker.holds(w, sugared), expected);
          ASSERT_EQ(checker.holds(w, expanded), expected);
        }
      }
    }
  }
}

TEST(Variables, ConstantPredicate) {
  EXPECT_TRUE(is_constant(M::box(M::falsum())));
  EXPECT_FALSE(is_constant(M::box_le(3, M::var(2))));
  EXPECT_EQ(variables(parse_modal("p3 & [] (p1 | p3)")), (std::set<int>{1, 3}));
  EXPECT_EQ(modal_depth(parse_modal("[] <> p1 & <> p2")), 2);
  EXPECT_EQ(modal_depth(M::box_le(3, M::var(1))), 3);
}

}  // namespace
}  // namespace wgrz
