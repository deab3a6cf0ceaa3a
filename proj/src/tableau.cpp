#include <algorithm>
#include <deque>
#include <memory>
#include <unordered_map>
#include <vector>

#include "wgrz/error.hpp"
#include "wgrz/solver.hpp"

namespace wgrz {

namespace {

// ---------------------------------------------------------------------------
// Negation normal form, hash-consed. Every node is interned together with its
// dual so that negation is a table lookup.

enum class Op : std::uint8_t { Top, Bot, Lit, And, Or, Box, Dia };

struct NNode {
  Op op;
  int var = 0;
  bool positive = true;
  std::vector<int> kids;

  friend bool operator==(const NNode&, const NNode&) = default;
};

struct NNodeHash {
  std::size_t operator()(const NNode& n) const noexcept {
    std::size_t h = static_cast<std::size_t>(n.op) * 31 + static_cast<std::size_t>(n.var) * 7 + n.positive;
    for (int k : n.kids) h = h * 1000003u ^ static_cast<std::size_t>(k);
    return h;
  }
};

class NnfTable {
 public:
  static constexpr int kTop = 0;
  static constexpr int kBot = 1;

  NnfTable() {
    push(NNode{Op::Top, 0, true, {}});
    push(NNode{Op::Bot, 0, true, {}});
    neg_[kTop] = kBot;
    neg_[kBot] = kTop;
  }

  const NNode& node(int id) const { return nodes_[id]; }
  int neg(int id) const { return neg_[id]; }
  std::size_t size() const { return nodes_.size(); }

  int build(const ModalFormula& f, bool positive) {
    auto& memo = positive ? pos_memo_ : neg_memo_;
    if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
    const int id = translate(f, positive);
    memo.emplace(f.id(), id);
    return id;
  }

 private:
  int translate(const ModalFormula& f, bool pos) {
    using K = ModalFormula::Kind;
    switch (f.kind()) {
      case K::Var: return lit(f.index(), pos);
      case K::Falsum: return pos ? kBot : kTop;
      case K::Verum: return pos ? kTop : kBot;
      case K::Not: return build(f.operand(), !pos);
      case K::And: {
        std::vector<int> kids;
        for (const auto& k : f.children()) kids.push_back(build(k, pos));
        return pos ? make_and(std::move(kids)) : make_or(std::move(kids));
      }
      case K::Or: {
        std::vector<int> kids{build(f.left(), pos), build(f.right(), pos)};
        return pos ? make_or(std::move(kids)) : make_and(std::move(kids));
      }
      case K::Implies: {
        std::vector<int> kids{build(f.left(), !pos), build(f.right(), pos)};
        return pos ? make_or(std::move(kids)) : make_and(std::move(kids));
      }
      case K::Box: return modal(pos ? Op::Box : Op::Dia, build(f.operand(), pos));
      case K::Dia: return modal(pos ? Op::Dia : Op::Box, build(f.operand(), pos));
      case K::BoxPlus: {
        const int inner = build(f.operand(), pos);
        return pos ? make_and({inner, modal(Op::Box, inner)}) : make_or({inner, modal(Op::Dia, inner)});
      }
      case K::BoxLe: {
        std::vector<int> layers;
        int layer = build(f.operand(), pos);
        for (int i = 0; i <= f.param(); ++i) {
          layers.push_back(layer);
          layer = modal(pos ? Op::Box : Op::Dia, layer);
        }
        return pos ? make_and(std::move(layers)) : make_or(std::move(layers));
      }
      case K::BoxPow:
      case K::DiaPow: {
        const bool box = (f.kind() == K::BoxPow) == pos;
        int out = build(f.operand(), pos);
        for (int i = 0; i < f.param(); ++i) out = modal(box ? Op::Box : Op::Dia, out);
        return out;
      }
    }
    return kTop;
  }

  int lit(int var, bool positive) { return intern(NNode{Op::Lit, var, positive, {}}); }

  int modal(Op op, int kid) {
    if (op == Op::Box && kid == kTop) return kTop;
    if (op == Op::Dia && kid == kBot) return kBot;
    return intern(NNode{op, 0, true, {kid}});
  }

  int make_and(std::vector<int> kids) { return junction(Op::And, std::move(kids)); }
  int make_or(std::vector<int> kids) { return junction(Op::Or, std::move(kids)); }

  // Flattened, sorted, duplicate-free, with unit/absorbing constants removed.
  int junction(Op op, std::vector<int> kids) {
    const int unit = op == Op::And ? kTop : kBot;
    const int zero = op == Op::And ? kBot : kTop;
    std::vector<int> flat;
    for (int k : kids) {
      if (k == unit) continue;
      if (k == zero) return zero;
      if (nodes_[k].op == op) {
        flat.insert(flat.end(), nodes_[k].kids.begin(), nodes_[k].kids.end());
      } else {
        flat.push_back(k);
      }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    for (int k : flat) {
      if (std::binary_search(flat.begin(), flat.end(), neg_[k])) return zero;
    }
    if (flat.empty()) return unit;
    if (flat.size() == 1) return flat.front();
    return intern(NNode{op, 0, true, std::move(flat)});
  }

  int intern(NNode n) {
    if (auto it = index_.find(n); it != index_.end()) return it->second;
    NNode dual = n;
    switch (n.op) {
      case Op::Lit: dual.positive = !n.positive; break;
      case Op::And: dual.op = Op::Or; break;
      case Op::Or: dual.op = Op::And; break;
      case Op::Box: dual.op = Op::Dia; break;
      case Op::Dia: dual.op = Op::Box; break;
      default: break;
    }
    for (int& k : dual.kids) k = neg_[k];
    std::sort(dual.kids.begin(), dual.kids.end());
    const int x = push(std::move(n));
    const int y = push(std::move(dual));
    neg_[x] = y;
    neg_[y] = x;
    return x;
  }

  int push(NNode n) {
    const int id = static_cast<int>(nodes_.size());
    index_.emplace(n, id);
    nodes_.push_back(std::move(n));
    neg_.push_back(-1);
    return id;
  }

  std::vector<NNode> nodes_;
  std::vector<int> neg_;
  std::unordered_map<NNode, int, NNodeHash> index_;
  std::unordered_map<const void*, int> pos_memo_;
  std::unordered_map<const void*, int> neg_memo_;
};

// ---------------------------------------------------------------------------
// Dependency sets: sorted tokens. Tokens below the label size name label
// members of the current world; the rest name branching decisions.

using Dep = std::shared_ptr<const std::vector<int>>;

Dep make_dep(int token) { return std::make_shared<const std::vector<int>>(std::vector<int>{token}); }

Dep dep_union(const Dep& a, const Dep& b) {
  if (!a || a->empty()) return b;
  if (!b || b->empty() || a == b) return a;
  std::vector<int> out;
  out.reserve(a->size() + b->size());
  std::set_union(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(out));
  return std::make_shared<const std::vector<int>>(std::move(out));
}

Dep nonnull(Dep d) { return d ? d : std::make_shared<const std::vector<int>>(); }

bool dep_contains(const Dep& d, int token) { return d && std::binary_search(d->begin(), d->end(), token); }

Dep dep_without(const Dep& d, int token) {
  if (!dep_contains(d, token)) return d;
  std::vector<int> out;
  out.reserve(d->size());
  for (int t : *d) {
    if (t != token) out.push_back(t);
  }
  return std::make_shared<const std::vector<int>>(std::move(out));
}

struct Entry {
  int id;
  Dep dep;
};

struct WorldState {
  std::vector<int> slot;  // formula id -> entry index, -1 when absent
  std::vector<Entry> entries;
  std::size_t head = 0;
  std::vector<int> ors;
  std::vector<int> boxes;
  std::vector<int> dias;
};

struct Checkpoint {
  std::size_t entries, head, ors, boxes, dias;
};

struct WitnessNode {
  std::vector<int> vars;
  std::vector<int> children;
};

struct Outcome {
  bool sat = false;
  int witness = -1;
  Dep dep;  // unsat: the clash dependencies
};

struct LabelHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x);
    return h;
  }
};

struct CacheEntry {
  bool sat;
  int witness;
  std::vector<int> core;  // unsat: positions within the label
};

struct OutOfBudget {};

class Tableau {
 public:
  Tableau(const TableauOptions& options) : options_(options) {}

  SatVerdict run(const ModalFormula& f) {
    SatVerdict verdict;
    verdict.engine = Engine::Tableau;
    const int root = table_.build(f, true);
    try {
      Outcome r = solve_world({root}, 0);
      verdict.outcome = r.sat ? SatOutcome::Satisfiable : SatOutcome::Unsatisfiable;
      if (r.sat && options_.build_witness) verdict.witness = export_witness(r.witness);
    } catch (const OutOfBudget&) {
      verdict.outcome = SatOutcome::Unknown;
      verdict.note = "node budget of " + std::to_string(options_.node_budget) + " exhausted";
    }
    verdict.stats = stats_;
    return verdict;
  }

 private:
  void tick() {
    if (++stats_.nodes > options_.node_budget) throw OutOfBudget{};
  }

  WorldState& state(int depth) {
    if (static_cast<std::size_t>(depth) >= states_.size()) states_.resize(depth + 1);
    WorldState& ws = states_[depth];
    if (ws.slot.size() < table_.size()) ws.slot.resize(table_.size(), -1);
    return ws;
  }

  static Checkpoint checkpoint(const WorldState& ws) {
    return {ws.entries.size(), ws.head, ws.ors.size(), ws.boxes.size(), ws.dias.size()};
  }

  static void undo(WorldState& ws, const Checkpoint& cp) {
    for (std::size_t i = cp.entries; i < ws.entries.size(); ++i) ws.slot[ws.entries[i].id] = -1;
    ws.entries.resize(cp.entries);
    ws.head = cp.head;
    ws.ors.resize(cp.ors);
    ws.boxes.resize(cp.boxes);
    ws.dias.resize(cp.dias);
  }

  // Adds a formula; returns a clash dependency if it contradicts the world.
  Dep add(WorldState& ws, int id, const Dep& dep) {
    if (ws.slot[id] >= 0) return nullptr;
    if (id == NnfTable::kBot) return nonnull(dep);
    const int other = ws.slot[table_.neg(id)];
    if (other >= 0) {
      Dep d = dep_union(dep, ws.entries[other].dep);
      return nonnull(d);
    }
    ws.slot[id] = static_cast<int>(ws.entries.size());
    ws.entries.push_back({id, dep});
    return nullptr;
  }

  Dep propagate(WorldState& ws) {
    while (ws.head < ws.entries.size()) {
      const int index = static_cast<int>(ws.head++);
      const int id = ws.entries[index].id;
      const NNode& n = table_.node(id);
      switch (n.op) {
        case Op::And: {
          const Dep dep = ws.entries[index].dep;
          for (int k : n.kids) {
            if (Dep clash = add(ws, k, dep)) return clash;
          }
          break;
        }
        case Op::Or: ws.ors.push_back(index); break;
        case Op::Box: ws.boxes.push_back(index); break;
        case Op::Dia: ws.dias.push_back(index); break;
        default: break;
      }
    }
    return nullptr;
  }

  struct Choice {
    Dep clash;
    int branch = -1;  // entry index of the disjunction to split on
  };

  // Unit propagation over the open disjunctions, then the first disjunction
  // that still has two or more open disjuncts.
  Choice choose(WorldState& ws) {
    bool changed = true;
    while (changed) {
      changed = false;
      int branch = -1;
      for (std::size_t oi = 0; oi < ws.ors.size(); ++oi) {
        const int index = ws.ors[oi];
        const NNode& n = table_.node(ws.entries[index].id);
        bool satisfied = false;
        int open = -1;
        int open_count = 0;
        for (int k : n.kids) {
          if (ws.slot[k] >= 0) {
            satisfied = true;
            break;
          }
          if (ws.slot[table_.neg(k)] < 0) {
            open = k;
            ++open_count;
          }
        }
        if (satisfied || open_count >= 2) {
          if (!satisfied && branch < 0) branch = index;
          continue;
        }
        Dep dep = ws.entries[index].dep;
        for (int k : n.kids) {
          if (k != open) dep = dep_union(dep, ws.entries[ws.slot[table_.neg(k)]].dep);
        }
        if (open_count == 0) return {nonnull(dep), -1};
        if (Dep clash = add(ws, open, dep)) return {clash, -1};
        if (Dep clash = propagate(ws)) return {clash, -1};
        changed = true;
        break;
      }
      if (!changed) return {nullptr, branch};
    }
    return {};
  }

  Outcome search(WorldState& ws, int depth, int& next_token) {
    tick();
    if (Dep clash = propagate(ws)) return {false, -1, clash};
    Choice choice = choose(ws);
    if (choice.clash) return {false, -1, choice.clash};
    if (choice.branch < 0) return expand_modal(ws, depth);

    const Entry disjunction = ws.entries[choice.branch];
    std::vector<int> open;
    for (int k : table_.node(disjunction.id).kids) {
      if (ws.slot[table_.neg(k)] < 0) open.push_back(k);
    }
    Dep accumulated = disjunction.dep;
    std::vector<std::pair<int, Dep>> refuted;  // earlier disjuncts and why they failed
    for (int choice_kid : open) {
      const Checkpoint cp = checkpoint(ws);
      const int token = next_token++;
      Dep clash = add(ws, choice_kid, make_dep(token));
      for (const auto& [kid, why] : refuted) {
        if (clash) break;
        clash = add(ws, table_.neg(kid), why);
      }
      Outcome r = clash ? Outcome{false, -1, clash} : search(ws, depth, next_token);
      undo(ws, cp);
      if (r.sat) return r;
      if (!dep_contains(r.dep, token)) return r;  // this choice was irrelevant: jump back
      Dep why = dep_without(r.dep, token);
      refuted.emplace_back(choice_kid, why);
      accumulated = dep_union(accumulated, why);
    }
    return {false, -1, nonnull(accumulated)};
  }

  Outcome expand_modal(WorldState& ws, int depth) {
    std::vector<int> box_kids;
    std::vector<Dep> box_deps;
    for (int index : ws.boxes) {
      box_kids.push_back(table_.node(ws.entries[index].id).kids[0]);
      box_deps.push_back(ws.entries[index].dep);
    }
    // Copy out before recursing: the child works on another WorldState, but
    // the diamonds list must stay stable.
    const std::vector<int> dias = ws.dias;
    std::vector<int> children;
    for (int index : dias) {
      const Entry dia = ws.entries[index];
      const int target = table_.node(dia.id).kids[0];
      std::vector<int> label = box_kids;
      label.push_back(target);
      std::sort(label.begin(), label.end());
      label.erase(std::unique(label.begin(), label.end()), label.end());

      Outcome r = solve_world(label, depth + 1);
      if (!r.sat) {
        Dep dep = dia.dep;
        for (int pos : *r.dep) {
          const int member = label[pos];
          if (member == target) continue;
          for (std::size_t b = 0; b < box_kids.size(); ++b) {
            if (box_kids[b] == member) {
              dep = dep_union(dep, box_deps[b]);
              break;
            }
          }
        }
        return {false, -1, nonnull(dep)};
      }
      children.push_back(r.witness);
    }

    WitnessNode node;
    for (const auto& e : ws.entries) {
      const NNode& n = table_.node(e.id);
      if (n.op == Op::Lit && n.positive) node.vars.push_back(n.var);
    }
    std::sort(node.vars.begin(), node.vars.end());
    node.children = std::move(children);
    witnesses_.push_back(std::move(node));
    return {true, static_cast<int>(witnesses_.size()) - 1, nullptr};
  }

  Outcome solve_world(const std::vector<int>& label, int depth) {
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (auto it = cache_.find(label); it != cache_.end()) {
      const CacheEntry& c = it->second;
      if (c.sat) return {true, c.witness, nullptr};
      return {false, -1, std::make_shared<const std::vector<int>>(c.core)};
    }
    tick();

    WorldState& ws = state(depth);
    const Checkpoint empty = checkpoint(ws);
    Dep clash;
    for (std::size_t i = 0; i < label.size() && !clash; ++i) {
      clash = add(ws, label[i], make_dep(static_cast<int>(i)));
    }
    int next_token = static_cast<int>(label.size());
    Outcome r = clash ? Outcome{false, -1, clash} : search(ws, depth, next_token);
    undo(states_[depth], empty);

    CacheEntry entry{r.sat, r.witness, {}};
    if (!r.sat) {
      for (int t : *r.dep) {
        if (t < static_cast<int>(label.size())) entry.core.push_back(t);
      }
      r.dep = std::make_shared<const std::vector<int>>(entry.core);
    }
    cache_.emplace(label, std::move(entry));
    return r;
  }

  KripkeModel export_witness(int root) const {
    std::vector<WorldId> worlds;
    std::vector<Edge> edges;
    std::map<int, std::vector<std::size_t>> valuation;
    struct Item {
      int node;
      int depth;
      std::size_t parent;
    };
    std::vector<Item> stack{{root, 0, static_cast<std::size_t>(-1)}};
    while (!stack.empty()) {
      const Item item = stack.back();
      stack.pop_back();
      const WitnessNode& n = witnesses_[item.node];
      const std::size_t idx = worlds.size();
      worlds.push_back(WorldId::base(item.depth, n.vars, static_cast<int>(idx)));
      for (int v : n.vars) valuation[v].push_back(idx);
      if (item.parent != static_cast<std::size_t>(-1)) edges.emplace_back(item.parent, idx);
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back({*it, item.depth + 1, idx});
    }
    return KripkeModel(KripkeFrame(std::move(worlds), edges), valuation, 0);
  }

  TableauOptions options_;
  NnfTable table_;
  SatStats stats_;
  std::deque<WorldState> states_;  // stable references across depths
  std::vector<WitnessNode> witnesses_;
  std::unordered_map<std::vector<int>, CacheEntry, LabelHash> cache_;
};

}  // namespace

SatVerdict sat_k_tableau(const ModalFormula& f, const TableauOptions& options) {
  return Tableau(options).run(f);
}

std::string SatVerdict::label() const {
  switch (outcome) {
    case SatOutcome::Satisfiable: return "sat";
    case SatOutcome::Unsatisfiable: return engine == Engine::Bounded ? "bounded-unsat" : "unsat";
    case SatOutcome::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace wgrz
