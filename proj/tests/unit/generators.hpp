#pragma once

#include <map>
#include <vector>

#include "wgrz/kripke.hpp"
#include "wgrz/modal.hpp"
#include "wgrz/verify.hpp"

namespace wgrz::testing {

inline int pick(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

// Random AST over every node kind, sugar included.
inline ModalFormula random_ast(Rng& rng, int depth, int vars = 3) {
  using M = ModalFormula;
  if (depth <= 0 || pick(rng, 0, 4) == 0) {
    const int leaf = pick(rng, 0, vars + 1);
    if (leaf == 0) return M::falsum();
    if (leaf == 1) return M::verum();
    return M::var(leaf - 1);
  }
  auto sub = [&] { return random_ast(rng, depth - 1, vars); };
  switch (pick(rng, 0, 11)) {
    case 0: return M::negation(sub());
    case 1: {
      std::vector<M> kids;
      const int n = pick(rng, 2, 4);
      for (int i = 0; i < n; ++i) kids.push_back(sub());
      return M::conj(std::move(kids));
    }
    case 2: return M::disj(sub(), sub());
    case 3: return M::implies(sub(), sub());
    case 4: return M::box(sub());
    case 5: return M::dia(sub());
    case 6: return M::box_plus(sub());
    case 7: return M::box_le(pick(rng, 0, 3), sub());
    case 8: return M::box_pow(pick(rng, 1, 3), sub());
    case 9: return M::dia_pow(pick(rng, 1, 3), sub());
    case 10: return M::conj({sub(), sub()});
    default: return M::disj(sub(), sub());
  }
}

// Random model on `worlds` worlds with edge probability about 1/3.
inline KripkeModel random_model(Rng& rng, std::size_t worlds, int vars) {
  std::vector<WorldId> ids;
  for (std::size_t i = 0; i < worlds; ++i) ids.push_back(WorldId::base(0, {}, static_cast<int>(i)));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < worlds; ++i) {
    for (std::size_t j = 0; j < worlds; ++j) {
      if (pick(rng, 0, 2) == 0) edges.emplace_back(i, j);
    }
  }
  std::map<int, std::vector<std::size_t>> valuation;
  for (int v = 1; v <= vars; ++v) {
    for (std::size_t w = 0; w < worlds; ++w) {
      if (pick(rng, 0, 1)) valuation[v].push_back(w);
    }
  }
  return KripkeModel(KripkeFrame(std::move(ids), edges), valuation, 0);
}

}  // namespace wgrz::testing
