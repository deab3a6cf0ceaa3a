#include <gtest/gtest.h>

#include <map>

#include "wgrz/error.hpp"
#include "wgrz/qbf.hpp"
#include "wgrz/qbf_semantics.hpp"
#include "wgrz/verify.hpp"

namespace wgrz {
namespace {

using Q = QbfFormula;

// Independent evaluator: quantifiers are eliminated by Shannon expansion
// into variable-free formulas, then evaluated bottom-up.
Q ground(const Q& f, const std::map<int, bool>& env) {
  switch (f.kind()) {
    case Q::Kind::Var: {
      auto it = env.find(f.index());
      bool value = it != env.end() && it->second;
      return value ? Q::implies(Q::falsum(), Q::falsum()) : Q::falsum();
    }
    case Q::Kind::Falsum: return f;
    case Q::Kind::And: return Q::conj(ground(f.left(), env), ground(f.right(), env));
    case Q::Kind::Or: return Q::disj(ground(f.left(), env), ground(f.right(), env));
    case Q::Kind::Implies: return Q::implies(ground(f.left(), env), ground(f.right(), env));
    default: {
      auto with = env;
      auto without = env;
      with[f.index()] = true;
      without[f.index()] = false;
      Q a = ground(f.body(), without);
      Q b = ground(f.body(), with);
      return f.kind() == Q::Kind::Forall ? Q::conj(a, b) : Q::disj(a, b);
    }
  }
}

bool ground_value(const Q& f) {
  switch (f.kind()) {
    case Q::Kind::Falsum: return false;
    case Q::Kind::And: return ground_value(f.left()) && ground_value(f.right());
    case Q::Kind::Or: return ground_value(f.left()) || ground_value(f.right());
    case Q::Kind::Implies: return !ground_value(f.left()) || ground_value(f.right());
    default: throw std::logic_error("not ground");
  }
}

bool oracle_truth(const Q& closed) { return ground_value(ground(closed, {})); }

TEST(QbfParse, Examples) {
  EXPECT_EQ(parse_qbf("E p1 . p1"), Q::exists(1, Q::var(1)));
  EXPECT_EQ(parse_qbf("A p1 . (p1 -> p1)"), Q::forall(1, Q::implies(Q::var(1), Q::var(1))));
  EXPECT_THROW(parse_qbf("p1 ->"), ParseError);
}

TEST(QbfParse, ErrorsCarryOffsets) {
  try {
    parse_qbf("p1 ->");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 5u);
  }
  EXPECT_THROW(parse_qbf("(p1 & p2"), ParseError);
  EXPECT_THROW(parse_qbf("p1 & p2)"), ParseError);
  EXPECT_THROW(parse_qbf("p1 # p2"), ParseError);
  EXPECT_THROW(parse_qbf("p0"), ParseError);
  EXPECT_THROW(parse_qbf("A p1 p1"), ParseError);
}

TEST(QbfParse, PrecedenceAndSugar) {
  const Q p1 = Q::var(1), p2 = Q::var(2), p3 = Q::var(3);
  EXPECT_EQ(parse_qbf("p1 -> p2 -> p3"), Q::implies(p1, Q::implies(p2, p3)));
  EXPECT_EQ(parse_qbf("p1 | p2 & p3"), Q::disj(p1, Q::conj(p2, p3)));
  EXPECT_EQ(parse_qbf("p1 & p2 & p3"), Q::conj(Q::conj(p1, p2), p3));
  EXPECT_EQ(parse_qbf("~p1"), Q::implies(p1, Q::falsum()));
  EXPECT_EQ(parse_qbf("A p1 . p1 & p2"), Q::forall(1, Q::conj(p1, p2)));
  EXPECT_EQ(parse_qbf("p2 & E p1 . p1"), Q::conj(p2, Q::exists(1, p1)));
}

TEST(QbfRender, ExamplesAndRoundTrip) {
  EXPECT_EQ(render(Q::exists(1, Q::var(1))), "E p1 . p1");
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Q f = random_closed_qbf(rng, 3, 15);
    EXPECT_EQ(parse_qbf(render(f)), f) << render(f);
  }
}

TEST(QbfSemantics, FreeVars) {
  EXPECT_TRUE(free_vars(Q::forall(1, Q::var(1))).empty());
  EXPECT_EQ(free_vars(Q::implies(Q::var(1), Q::exists(2, Q::var(2)))), std::set<int>{1});
  EXPECT_EQ(free_vars(Q::forall(1, Q::disj(Q::var(1), Q::var(2)))), std::set<int>{2});
}

TEST(QbfSemantics, UniversalClosure) {
  EXPECT_EQ(universal_closure(Q::var(1)), Q::forall(1, Q::var(1)));
  const Q closed = Q::exists(1, Q::var(1));
  EXPECT_EQ(universal_closure(closed), closed);
  EXPECT_EQ(universal_closure(Q::disj(Q::var(2), Q::var(1))),
            Q::forall(1, Q::forall(2, Q::disj(Q::var(2), Q::var(1)))));
}

TEST(QbfSemantics, Evaluate) {
  EXPECT_TRUE(evaluate({1}, Q::var(1)));
  EXPECT_TRUE(evaluate({}, Q::exists(1, Q::var(1))));
  EXPECT_FALSE(evaluate({}, Q::forall(1, Q::var(1))));
  // The quantifier overrides the model's value for the bound variable.
  EXPECT_FALSE(evaluate({1}, Q::forall(1, Q::var(1))));
  EXPECT_TRUE(evaluate({}, Q::exists(1, Q::var(1))));
}

TEST(QbfSemantics, IsTrueQbf) {
  EXPECT_TRUE(is_true_qbf(Q::implies(Q::var(1), Q::var(1))));
  EXPECT_FALSE(is_true_qbf(Q::var(1)));
  EXPECT_TRUE(is_true_qbf(Q::exists(1, Q::forall(2, Q::implies(Q::var(2), Q::var(1))))));
}

TEST(QbfSemantics, EvaluateIgnoresUnrelatedIndices) {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Q f = random_matrix(rng, 3, 9);
    for (int bits = 0; bits < 8; ++bits) {
      QbfModel m;
      for (int v = 1; v <= 3; ++v) {
        if (bits >> (v - 1) & 1) m.insert(v);
      }
      QbfModel junk = m;
      junk.insert({7, 42});
      EXPECT_EQ(evaluate(m, f), evaluate(junk, f));
    }
  }
}

TEST(QbfSemantics, ClosureTruthAndOracleAgreement) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const Q f = random_closed_qbf(rng, 3, 9);
    EXPECT_EQ(is_true_qbf(f), oracle_truth(f)) << render(f);
    EXPECT_EQ(is_true_qbf(f), is_true_qbf(universal_closure(f)));
  }
}

TEST(Prenex, Examples) {
  const Q prenex = Q::forall(1, Q::exists(2, Q::conj(Q::var(1), Q::var(2))));
  EXPECT_EQ(to_prenex(prenex), prenex);
  EXPECT_EQ(to_prenex(Q::conj(Q::forall(1, Q::var(1)), Q::exists(1, Q::var(1)))), prenex);
  EXPECT_EQ(to_prenex(Q::implies(Q::forall(1, Q::var(1)), Q::falsum())),
            Q::exists(1, Q::implies(Q::var(1), Q::falsum())));
  EXPECT_THROW(to_prenex(Q::var(1)), PreconditionError);
}

TEST(Prenex, NegateExamples) {
  EXPECT_EQ(negate_prenex(Q::forall(1, Q::var(1))), Q::exists(1, Q::implies(Q::var(1), Q::falsum())));
  EXPECT_EQ(negate_prenex(Q::exists(1, Q::var(1))), Q::forall(1, Q::implies(Q::var(1), Q::falsum())));
  EXPECT_THROW(negate_prenex(Q::conj(Q::forall(1, Q::var(1)), Q::var(1))), PreconditionError);
}

TEST(Prenex, PreservesTruthAndQuantifierCount) {
  auto count = [](Q f) {
    int c = 0;
    std::function<void(const Q&)> walk = [&](const Q& g) {
      if (g.is_quantifier()) {
        ++c;
        walk(g.body());
      } else if (g.is_binary()) {
        walk(g.left());
        walk(g.right());
      }
    };
    walk(f);
    return c;
  };
  Rng rng(17);
  for (int i = 0; i < 600; ++i) {
    const Q f = random_closed_qbf(rng, 3, 9);
    const Q p = to_prenex(f);
    ASSERT_TRUE(is_prenex(p)) << render(p);
    ASSERT_TRUE(is_closed(p));
    EXPECT_EQ(oracle_truth(p), oracle_truth(f)) << render(f) << "  =>  " << render(p);
    EXPECT_EQ(count(p), count(f));
    const Q neg = negate_prenex(p);
    EXPECT_TRUE(is_prenex(neg));
    EXPECT_NE(oracle_truth(neg), oracle_truth(f));
    EXPECT_EQ(oracle_truth(negate_prenex(neg)), oracle_truth(f));
  }
}

TEST(Prenex, NormalizePrefix) {
  const Q f = parse_qbf("A p3 . E p1 . (p3 -> p1)");
  const Q g = normalize_prefix(f);
  EXPECT_EQ(g, parse_qbf("A p1 . E p2 . (p1 -> p2)"));
  // Repeated binders: the matrix refers to the innermost one.
  EXPECT_EQ(normalize_prefix(parse_qbf("A p1 . E p1 . p1")), parse_qbf("A p1 . E p2 . p2"));
}

TEST(QbfSize, CountsEveryNode) {
  EXPECT_EQ(formula_size(Q::falsum()), 1u);
  EXPECT_EQ(formula_size(parse_qbf("A p1 . (p1 -> p1)")), 4u);
}

}  // namespace
}  // namespace wgrz
