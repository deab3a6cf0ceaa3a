#include <gtest/gtest.h>

#include "generators.hpp"
#include "wgrz/error.hpp"
#include "wgrz/kripke.hpp"
#include "wgrz/kripke_json.hpp"
#include "wgrz/reduction.hpp"

namespace wgrz {
namespace {

using M = ModalFormula;
using testing::pick;
using testing::random_ast;
using testing::random_model;

std::vector<WorldId> plain_worlds(std::size_t n) {
  std::vector<WorldId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(WorldId::base(0, {}, static_cast<int>(i)));
  return ids;
}

// Random tree with edges directed away from world 0.
KripkeFrame random_tree(Rng& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(static_cast<std::size_t>(pick(rng, 0, static_cast<int>(i) - 1)), i);
  return KripkeFrame(plain_worlds(n), edges);
}

TEST(WorldIdTags, RenderAndParse) {
  const WorldId base = WorldId::base(2, {1, 3}, 7);
  EXPECT_EQ(base.tag(), "base:L2:{1,3}:#7");
  const WorldId host = WorldId::base(1, {}, 2);
  const WorldId gadget = WorldId::gadget(3, GadgetPart::A, 0, host);
  EXPECT_EQ(gadget.tag(), "gadget:m3:a0@base:L1:{}:#2");
  EXPECT_EQ(WorldId::gadget(2, GadgetPart::B).tag(), "gadget:m2:b");
  EXPECT_EQ(WorldId::gadget(2, GadgetPart::C).tag(), "gadget:m2:c");
  for (const auto& w : {base, host, gadget, WorldId::gadget(4, GadgetPart::B, 0, gadget)}) {
    EXPECT_EQ(WorldId::parse(w.tag()), w);
  }
  EXPECT_THROW(WorldId::parse("base:L2:{3,1}:#7"), ParseError);
  EXPECT_THROW(WorldId::parse("gadget:m2:a3"), Error);
  EXPECT_THROW(WorldId::parse("world7"), ParseError);
}

TEST(ModelCheck, Examples) {
  const KripkeModel blind(KripkeFrame(plain_worlds(1), {}), {}, 0);
  EXPECT_TRUE(model_check(blind, 0, M::box(M::falsum())));
  const KripkeModel loop(KripkeFrame(plain_worlds(1), {{0, 0}}), {}, 0);
  EXPECT_TRUE(model_check(loop, 0, M::dia(M::verum())));
  EXPECT_FALSE(model_check(loop, 0, M::box(M::falsum())));
  EXPECT_THROW(model_check(loop, WorldId::base(5, {}, 0), M::verum()), UnknownWorld);
}

TEST(ModelCheck, SugarMatchesExpansion) {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const KripkeModel model = random_model(rng, static_cast<std::size_t>(pick(rng, 1, 6)), 3);
    const M f = random_ast(rng, 6);
    ModelChecker checker(model);
    EXPECT_EQ(checker.truth_set(f), checker.truth_set(expand_sugar(f))) << render(f);
  }
}

TEST(ModelCheck, ConstantFormulasIgnoreValuation) {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    const KripkeModel a = random_model(rng, static_cast<std::size_t>(pick(rng, 1, 6)), 3);
    std::map<int, std::vector<std::size_t>> other;
    for (std::size_t w = 0; w < a.frame().size(); ++w) {
      if (pick(rng, 0, 1)) other[1].push_back(w);
    }
    const KripkeModel b(a.frame(), other, 0);
    const M f = random_ast(rng, 6, 0);  // no variables
    ASSERT_TRUE(is_constant(f));
    EXPECT_EQ(ModelChecker(a).truth_set(f), ModelChecker(b).truth_set(f));
  }
}

TEST(Closure, Examples) {
  const KripkeFrame chain(plain_worlds(3), {{0, 1}, {1, 2}});
  const KripkeFrame t = close(chain, Closure::Transitive);
  EXPECT_EQ(t.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));

  const KripkeFrame empty(plain_worlds(3), {});
  EXPECT_EQ(close(empty, Closure::ReflexiveTransitive).edges(), (std::vector<Edge>{{0, 0}, {1, 1}, {2, 2}}));

  const KripkeFrame ab(plain_worlds(2), {{0, 1}});
  EXPECT_EQ(close(ab, Closure::ReflexiveSymmetric).edges(), (std::vector<Edge>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(Closure, IdempotentAndMonotone) {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const KripkeFrame f = random_model(rng, static_cast<std::size_t>(pick(rng, 1, 7)), 0).frame();
    for (auto mode : {Closure::Transitive, Closure::ReflexiveTransitive, Closure::ReflexiveSymmetric}) {
      const KripkeFrame once = close(f, mode);
      EXPECT_EQ(close(once, mode).edges(), once.edges());
      for (const auto& [a, b] : f.edges()) EXPECT_TRUE(once.has_edge(a, b));
      EXPECT_EQ(once.size(), f.size());
    }
    EXPECT_TRUE(is_transitive(close(f, Closure::Transitive)));
    EXPECT_TRUE(is_symmetric(close(f, Closure::ReflexiveSymmetric)));
  }
}

TEST(FrameClass, Examples) {
  const KripkeFrame chain = close(KripkeFrame(plain_worlds(3), {{0, 1}, {1, 2}}), Closure::Transitive);
  EXPECT_TRUE(frame_class_check(chain, FrameClass::GL));
  EXPECT_FALSE(frame_class_check(chain, FrameClass::Grz));
  EXPECT_FALSE(frame_class_check(frame_Fm(3), FrameClass::GL));
  const KripkeFrame cycle(plain_worlds(2), {{0, 0}, {1, 1}, {0, 1}, {1, 0}});
  EXPECT_FALSE(frame_class_check(cycle, FrameClass::Grz));
  EXPECT_TRUE(frame_class_check(cycle, FrameClass::KTB));
}

TEST(FrameClass, ClosuresOfTreesLandInTheirClasses) {
  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    const KripkeFrame tree = random_tree(rng, static_cast<std::size_t>(pick(rng, 1, 12)));
    EXPECT_TRUE(frame_class_check(close(tree, Closure::Transitive), FrameClass::GL));
    EXPECT_TRUE(frame_class_check(close(tree, Closure::ReflexiveTransitive), FrameClass::Grz));
    EXPECT_TRUE(frame_class_check(close(tree, Closure::ReflexiveSymmetric), FrameClass::KTB));
  }
}

TEST(FrameValidates, Examples) {
  Rng rng(25);
  for (int i = 0; i < 50; ++i) {
    const KripkeFrame f = random_model(rng, static_cast<std::size_t>(pick(rng, 1, 6)), 0).frame();
    EXPECT_TRUE(frame_validates(f, M::verum()));
  }
  // T is valid exactly on reflexive frames.
  const M t_axiom = M::implies(M::box(M::var(1)), M::var(1));
  EXPECT_TRUE(frame_validates(close(random_tree(rng, 5), Closure::ReflexiveTransitive), t_axiom));
  EXPECT_FALSE(frame_validates(KripkeFrame(plain_worlds(2), {{0, 1}}), t_axiom));
  // Loeb's axiom on a finite strict order.
  const M p = M::var(1);
  const M loeb = M::implies(M::box(M::implies(M::box(p), p)), M::box(p));
  EXPECT_TRUE(frame_validates(close(random_tree(rng, 6), Closure::Transitive), loeb));
  EXPECT_FALSE(frame_validates(KripkeFrame(plain_worlds(1), {{0, 0}}), loeb));
}

TEST(FrameValidates, RefusesBeyondBudget) {
  const KripkeFrame f(plain_worlds(8), {});
  const M two_vars = M::disj(M::var(1), M::var(2));
  EXPECT_THROW(frame_validates(f, two_vars, 15), BudgetExceeded);
  EXPECT_NO_THROW(frame_validates(f, two_vars, 16));
}

TEST(KripkeJson, RoundTrip) {
  Rng rng(26);
  for (int i = 0; i < 50; ++i) {
    const KripkeModel m = random_model(rng, static_cast<std::size_t>(pick(rng, 1, 6)), 2);
    const std::string text = dump_json(model_to_json(m));
    const KripkeModel back = model_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(dump_json(model_to_json(back)), text);
  }
}

TEST(KripkeJson, Schema) {
  const KripkeModel m(KripkeFrame({WorldId::base(0, {}, 0), WorldId::base(1, {1}, 1)}, {{0, 1}}), {{1, {1}}}, 0);
  const auto doc = model_to_json(m);
  EXPECT_EQ(doc.dump(),
            R"({"worlds":["base:L0:{}:#0","base:L1:{1}:#1"],"relation":[["base:L0:{}:#0","base:L1:{1}:#1"]],)"
            R"("valuation":{"p1":["base:L1:{1}:#1"]},"root":"base:L0:{}:#0"})");
  auto bad = nlohmann::json::parse(doc.dump());
  bad["root"] = "base:L9:{}:#9";
  EXPECT_THROW(model_from_json(bad), UnknownWorld);
}

}  // namespace
}  // namespace wgrz
