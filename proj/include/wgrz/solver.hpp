#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wgrz/kripke.hpp"
#include "wgrz/modal.hpp"

namespace wgrz {

enum class SatOutcome { Satisfiable, Unsatisfiable, Unknown };
enum class Engine { Tableau, Bounded };

struct SatStats {
  std::uint64_t nodes = 0;
  int max_depth = 0;
};

// Result of a K-satisfiability query. A satisfiable verdict carries a
// witness whose root satisfies the query. An unsatisfiable verdict from the
// bounded engine only means "no model within the bound".
struct SatVerdict {
  SatOutcome outcome = SatOutcome::Unknown;
  std::optional<KripkeModel> witness;
  Engine engine = Engine::Tableau;
  int bound = 0;  // bounded engine only
  SatStats stats;
  std::string note;  // reason for Unknown

  bool satisfiable() const noexcept { return outcome == SatOutcome::Satisfiable; }
  bool unsatisfiable() const noexcept { return outcome == SatOutcome::Unsatisfiable; }
  // "sat", "unsat", "bounded-unsat" or "unknown"
  std::string label() const;
};

struct TableauOptions {
  std::uint64_t node_budget = 10'000'000;
  bool build_witness = true;
};

// Tableau for K. Depth-first over one world at a time: conjunctions first,
// then disjunctions (semantic branching, backjumping on the clash
// dependencies), then one successor per diamond carrying every boxed formula.
// Failed and successful world labels are cached for the whole call.
// Running out of node budget yields Unknown, never a guess.
SatVerdict sat_k_tableau(const ModalFormula& f, const TableauOptions& options = {});

// Exhaustive search for a pointed model with at most max_worlds worlds.
//
// Works on Hintikka types: truth assignments to the variables and the
// []/<> subformulas of f. If f has a model with at most N worlds it has one
// whose worlds carry pairwise distinct types and whose relation is "every
// type-compatible pair", so searching sets of at most N types is exhaustive
// over all models of that size. Types that cannot occur in any model are
// eliminated first. Returns Unknown when the type space exceeds 2^24.
SatVerdict sat_bounded(const ModalFormula& f, int max_worlds);

}  // namespace wgrz
