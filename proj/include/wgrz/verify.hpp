#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "wgrz/modal.hpp"
#include "wgrz/qbf.hpp"
#include "wgrz/solver.hpp"

namespace wgrz {

using Rng = std::mt19937_64;

// n = 1: every matrix over {p1, false} with &, |, -> up to the exhaustive
// size bound, under both quantifiers. n in 2..n_max: `count` random
// instances cycling through the quantifier counts.
struct CorpusSpec {
  int n_max = 3;
  int exhaustive_size_max = 5;
  int random_size_max = 9;
  int count = 200;
  std::uint64_t seed = 0;
  // Instances with n at most this also get the extended-model checks.
  int extended_n_max = 2;
};

struct CorpusInstance {
  QbfFormula formula;
  std::string origin;  // "exhaustive" or "random"
};

// All quantifier-free formulas over p1..p_vars and false with exactly `size`
// symbols, in a fixed order.
std::vector<QbfFormula> enumerate_matrices(int vars, int size);

QbfFormula random_matrix(Rng& rng, int vars, int max_size);
// Closed prenex formula with quantifier i binding p_i.
QbfFormula random_prenex(Rng& rng, int n, int max_size);
// Arbitrary closed formula (quantifiers anywhere, names may clash) over at
// most `vars` variables.
QbfFormula random_closed_qbf(Rng& rng, int vars, int max_size);
// Random modal formula over p1..p_vars with formula_size <= max_size.
ModalFormula random_modal(Rng& rng, int vars, int max_size);

std::vector<CorpusInstance> generate_corpus(const CorpusSpec& spec);

struct ExtendedChecks {
  std::size_t worlds = 0;
  bool alpha_at_root = false;
  bool transitive = false;
  // "world:m" for every pair where (*) fails
  std::vector<std::string> star_failures;
};

struct InstanceRecord {
  std::size_t index = 0;
  std::string formula;
  std::string origin;
  int n = 0;
  bool truth = false;
  std::string star_verdict;
  std::string alpha_verdict;
  bool alpha_constant = false;
  bool routes_agree = false;  // substitute route == direct route
  bool witnesses_check = false;  // every tableau witness satisfies its query
  // True instances only.
  std::optional<bool> tree_satisfies_star;
  std::optional<bool> closures_in_class;  // GL / Grz / KTB on the three closures
  std::optional<bool> closures_satisfy_star;
  std::optional<ExtendedChecks> extended;
  std::uint64_t star_size = 0;
  std::uint64_t alpha_size = 0;
  std::uint64_t star_nodes = 0;
  std::uint64_t alpha_nodes = 0;

  bool passed() const;
  nlohmann::ordered_json to_json() const;
};

InstanceRecord check_instance(const QbfFormula& f, std::size_t index = 0, const std::string& origin = "manual",
                              int extended_n_max = 2, const TableauOptions& options = {});

struct VerifyReport {
  CorpusSpec spec;
  std::vector<InstanceRecord> records;
  // c2 fixed from the instance with the smallest |phi*|.
  double size_constant = 0;
  bool size_bound_holds = false;

  bool passed() const;
  std::string json_lines() const;
  std::string summary() const;
};

VerifyReport run_verify(const CorpusSpec& spec, const TableauOptions& options = {});

// Outcome of comparing the two engines on one formula.
struct CrossCheck {
  SatVerdict tableau;
  SatVerdict bounded;
  bool conclusive = false;
  bool agree = true;
};

CrossCheck cross_validate(const ModalFormula& f, int bound);

}  // namespace wgrz
