#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <vector>

#include "wgrz/error.hpp"
#include "wgrz/solver.hpp"

namespace wgrz {

namespace {

using Mask = std::uint32_t;
constexpr int kMaxAtoms = 24;
constexpr std::uint64_t kStepBudget = 50'000'000;

enum class Op : std::uint8_t { Top, Bot, Atom, Not, And, Or, Implies };

struct CNode {
  Op op;
  int atom = -1;
  std::vector<int> kids;
};

// Three-valued truth: 0 false, 1 true, 2 undetermined.
using Tri = std::uint8_t;
constexpr Tri kFalse = 0, kTrue = 1, kOpen = 2;

struct StepsExhausted {};

class TypeSpace {
 public:
  explicit TypeSpace(const ModalFormula& f) : root_(compile(f)) {}

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int root() const { return root_; }
  const std::vector<int>& variables() const { return variables_; }
  bool is_variable(int atom) const { return atoms_[atom].kind() == ModalFormula::Kind::Var; }
  bool is_box(int atom) const { return atoms_[atom].kind() == ModalFormula::Kind::Box; }
  bool is_dia(int atom) const { return atoms_[atom].kind() == ModalFormula::Kind::Dia; }
  int operand(int atom) const { return operand_[atom]; }
  int variable_index(int atom) const { return atoms_[atom].index(); }

  bool eval(int id, Mask type) const {
    const CNode& n = nodes_[id];
    switch (n.op) {
      case Op::Top: return true;
      case Op::Bot: return false;
      case Op::Atom: return (type >> n.atom) & 1u;
      case Op::Not: return !eval(n.kids[0], type);
      case Op::And:
        for (int k : n.kids) {
          if (!eval(k, type)) return false;
        }
        return true;
      case Op::Or: return eval(n.kids[0], type) || eval(n.kids[1], type);
      case Op::Implies: return !eval(n.kids[0], type) || eval(n.kids[1], type);
    }
    return false;
  }

  // Atoms below `assigned` bits are fixed; the rest are open.
  Tri eval3(int id, Mask assigned, Mask values) const {
    const CNode& n = nodes_[id];
    switch (n.op) {
      case Op::Top: return kTrue;
      case Op::Bot: return kFalse;
      case Op::Atom:
        if (!((assigned >> n.atom) & 1u)) return kOpen;
        return ((values >> n.atom) & 1u) ? kTrue : kFalse;
      case Op::Not: {
        const Tri v = eval3(n.kids[0], assigned, values);
        return v == kOpen ? kOpen : static_cast<Tri>(1 - v);
      }
      case Op::And: {
        Tri out = kTrue;
        for (int k : n.kids) {
          const Tri v = eval3(k, assigned, values);
          if (v == kFalse) return kFalse;
          if (v == kOpen) out = kOpen;
        }
        return out;
      }
      case Op::Or:
      case Op::Implies: {
        Tri a = eval3(n.kids[0], assigned, values);
        if (n.op == Op::Implies && a != kOpen) a = static_cast<Tri>(1 - a);
        if (a == kTrue) return kTrue;
        const Tri b = eval3(n.kids[1], assigned, values);
        if (b == kTrue) return kTrue;
        return (a == kFalse && b == kFalse) ? kFalse : kOpen;
      }
    }
    return kOpen;
  }

 private:
  int compile(const ModalFormula& f) {
    if (auto it = ids_.find(f); it != ids_.end()) return it->second;
    using K = ModalFormula::Kind;
    CNode n{Op::Top, -1, {}};
    switch (f.kind()) {
      case K::Verum: n.op = Op::Top; break;
      case K::Falsum: n.op = Op::Bot; break;
      case K::Not: n = {Op::Not, -1, {compile(f.operand())}}; break;
      case K::And:
        n.op = Op::And;
        for (const auto& k : f.children()) n.kids.push_back(compile(k));
        break;
      case K::Or: n = {Op::Or, -1, {compile(f.left()), compile(f.right())}}; break;
      case K::Implies: n = {Op::Implies, -1, {compile(f.left()), compile(f.right())}}; break;
      case K::Var:
      case K::Box:
      case K::Dia: {
        const int inner = f.kind() == K::Var ? -1 : compile(f.operand());
        n = {Op::Atom, static_cast<int>(atoms_.size()), {}};
        atoms_.push_back(f);
        operand_.push_back(inner);
        if (f.kind() == K::Var) variables_.push_back(n.atom);
        break;
      }
      default: throw PreconditionError("bounded search expects sugar-free input");
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    ids_.emplace(f, id);
    return id;
  }

  std::vector<CNode> nodes_;
  std::vector<ModalFormula> atoms_;
  std::vector<int> operand_;
  std::vector<int> variables_;
  std::unordered_map<ModalFormula, int, ModalFormulaHash> ids_;
  int root_;
};

class BoundedSearch {
 public:
  BoundedSearch(const TypeSpace& space, int max_worlds) : space_(space), max_worlds_(max_worlds) {}

  std::uint64_t steps() const { return steps_; }

  // A set of types closed under demands that contains a type satisfying the
  // root, or nullopt.
  std::optional<std::vector<Mask>> run() {
    for (Mask root : candidates({space_.root()}, {})) {
      std::vector<Mask> types{root};
      if (extend(types)) return types;
    }
    return std::nullopt;
  }

  bool compatible(Mask t, Mask u) const {
    for (int a = 0; a < space_.atom_count(); ++a) {
      const bool on = (t >> a) & 1u;
      if (space_.is_box(a) && on && !space_.eval(space_.operand(a), u)) return false;
      if (space_.is_dia(a) && !on && space_.eval(space_.operand(a), u)) return false;
    }
    return true;
  }

 private:
  void step() {
    if (++steps_ > kStepBudget) throw StepsExhausted{};
  }

  // Every type making all of `yes` true and all of `no` false.
  std::vector<Mask> candidates(const std::vector<int>& yes, const std::vector<int>& no) {
    std::vector<Mask> out;
    enumerate(0, 0, 0, yes, no, out);
    return out;
  }

  void enumerate(int atom, Mask assigned, Mask values, const std::vector<int>& yes, const std::vector<int>& no,
                 std::vector<Mask>& out) {
    step();
    for (int id : yes) {
      if (space_.eval3(id, assigned, values) == kFalse) return;
    }
    for (int id : no) {
      if (space_.eval3(id, assigned, values) == kTrue) return;
    }
    if (atom == space_.atom_count()) {
      out.push_back(values);
      return;
    }
    const Mask bit = Mask{1} << atom;
    enumerate(atom + 1, assigned | bit, values, yes, no, out);
    enumerate(atom + 1, assigned | bit, values | bit, yes, no, out);
  }

  bool extend(std::vector<Mask>& types) {
    std::vector<Mask> key = types;
    std::sort(key.begin(), key.end());
    if (!visited_.insert(key).second) return false;

    for (Mask t : types) {
      for (int a = 0; a < space_.atom_count(); ++a) {
        const bool on = (t >> a) & 1u;
        bool want;  // truth value the demand needs at some successor
        if (space_.is_dia(a) && on) {
          want = true;
        } else if (space_.is_box(a) && !on) {
          want = false;
        } else {
          continue;
        }
        const int target = space_.operand(a);
        bool met = false;
        for (Mask u : types) {
          step();
          if (space_.eval(target, u) == want && compatible(t, u)) {
            met = true;
            break;
          }
        }
        if (met) continue;
        if (static_cast<int>(types.size()) >= max_worlds_) return false;

        std::vector<int> yes, no;
        (want ? yes : no).push_back(target);
        for (int b = 0; b < space_.atom_count(); ++b) {
          const bool b_on = (t >> b) & 1u;
          if (space_.is_box(b) && b_on) yes.push_back(space_.operand(b));
          if (space_.is_dia(b) && !b_on) no.push_back(space_.operand(b));
        }
        for (Mask u : candidates(yes, no)) {
          if (std::find(types.begin(), types.end(), u) != types.end()) continue;
          types.push_back(u);
          if (extend(types)) return true;
          types.pop_back();
        }
        return false;
      }
    }
    return true;
  }

  const TypeSpace& space_;
  int max_worlds_;
  std::uint64_t steps_ = 0;
  std::set<std::vector<Mask>> visited_;
};

}  // namespace

SatVerdict sat_bounded(const ModalFormula& f, int max_worlds) {
  if (max_worlds < 1) throw PreconditionError("sat_bounded needs max_worlds >= 1");
  SatVerdict verdict;
  verdict.engine = Engine::Bounded;
  verdict.bound = max_worlds;

  const TypeSpace space(expand_sugar(f));
  if (space.atom_count() > kMaxAtoms) {
    verdict.note = std::to_string(space.atom_count()) + " type atoms exceed the limit of " + std::to_string(kMaxAtoms);
    return verdict;
  }

  BoundedSearch search(space, max_worlds);
  std::optional<std::vector<Mask>> types;
  try {
    types = search.run();
  } catch (const StepsExhausted&) {
    verdict.note = "step budget of " + std::to_string(kStepBudget) + " exhausted";
    verdict.stats.nodes = search.steps();
    return verdict;
  }
  verdict.stats.nodes = search.steps();
  if (!types) {
    verdict.outcome = SatOutcome::Unsatisfiable;
    return verdict;
  }

  // Keep the part reachable from the root type under the maximal relation.
  const std::vector<Mask>& ts = *types;
  std::vector<int> level(ts.size(), -1);
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue{0};
  level[0] = 0;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    order.push_back(i);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (level[j] < 0 && search.compatible(ts[i], ts[j])) {
        level[j] = level[i] + 1;
        queue.push_back(j);
      }
    }
  }
  std::vector<std::size_t> position(ts.size());
  std::vector<WorldId> worlds;
  std::map<int, std::vector<std::size_t>> valuation;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    position[i] = k;
    std::vector<int> vars;
    for (int a : space.variables()) {
      if ((ts[i] >> a) & 1u) vars.push_back(space.variable_index(a));
    }
    std::sort(vars.begin(), vars.end());
    for (int v : vars) valuation[v].push_back(k);
    worlds.push_back(WorldId::base(level[i], std::move(vars), static_cast<int>(k)));
    verdict.stats.max_depth = std::max(verdict.stats.max_depth, level[i]);
  }
  std::vector<Edge> edges;
  for (std::size_t i : order) {
    for (std::size_t j : order) {
      if (search.compatible(ts[i], ts[j])) edges.emplace_back(position[i], position[j]);
    }
  }
  verdict.outcome = SatOutcome::Satisfiable;
  verdict.witness = KripkeModel(KripkeFrame(std::move(worlds), edges), valuation, 0);
  return verdict;
}

}  // namespace wgrz
