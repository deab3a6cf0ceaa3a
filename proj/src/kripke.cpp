#include "wgrz/kripke.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "wgrz/error.hpp"

namespace wgrz {

// ---------------------------------------------------------------------------
// WorldId

namespace {

std::string base_tag(const BaseWorld& b) {
  std::string tag = "base:L" + std::to_string(b.level) + ":{";
  for (std::size_t i = 0; i < b.assignment.size(); ++i) {
    if (i != 0) tag += ',';
    tag += std::to_string(b.assignment[i]);
  }
  tag += "}:#" + std::to_string(b.serial);
  return tag;
}

std::string part_tag(const GadgetWorld& g) {
  switch (g.part) {
    case GadgetPart::A: return "a" + std::to_string(g.a_index);
    case GadgetPart::B: return "b";
    case GadgetPart::C: return "c";
  }
  return "?";
}

class TagReader {
 public:
  explicit TagReader(std::string_view text) : text_(text) {}

  bool eat(std::string_view s) {
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }
  void expect(std::string_view s) {
    if (!eat(s)) fail();
  }
  int number() {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc() || value < 0) fail();
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }
  bool done() const { return pos_ == text_.size(); }
  std::string_view rest() const { return text_.substr(pos_); }
  [[noreturn]] void fail() const { throw ParseError("malformed world id '" + std::string(text_) + "'", pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

WorldId WorldId::base(int level, std::vector<int> assignment, int serial) {
  std::sort(assignment.begin(), assignment.end());
  assignment.erase(std::unique(assignment.begin(), assignment.end()), assignment.end());
  BaseWorld b{level, std::move(assignment), serial};
  std::string tag = base_tag(b);
  return WorldId(std::move(b), std::move(tag));
}

WorldId WorldId::gadget(int m, GadgetPart part, int a_index, std::optional<WorldId> host) {
  if (m < 1) throw PreconditionError("gadget index m must be positive");
  if (part == GadgetPart::A && (a_index < 0 || a_index > m)) {
    throw PreconditionError("gadget world a_i needs 0 <= i <= m");
  }
  if (part != GadgetPart::A) a_index = 0;
  GadgetWorld g{m, part, a_index, host ? std::make_shared<const WorldId>(*host) : nullptr};
  std::string tag = "gadget:m" + std::to_string(m) + ":" + part_tag(g);
  if (g.host) tag += "@" + g.host->tag();
  return WorldId(std::move(g), std::move(tag));
}

WorldId WorldId::parse(std::string_view tag) {
  TagReader r(tag);
  if (r.eat("base:L")) {
    const int level = r.number();
    r.expect(":{");
    std::vector<int> assignment;
    if (!r.eat("}")) {
      do {
        assignment.push_back(r.number());
      } while (r.eat(","));
      r.expect("}");
    }
    r.expect(":#");
    const int serial = r.number();
    if (!r.done()) r.fail();
    WorldId id = base(level, std::move(assignment), serial);
    if (id.tag() != tag) r.fail();  // non-canonical spelling
    return id;
  }
  if (r.eat("gadget:m")) {
    const int m = r.number();
    r.expect(":");
    GadgetPart part = GadgetPart::A;
    int a_index = 0;
    if (r.eat("a")) {
      a_index = r.number();
    } else if (r.eat("b")) {
      part = GadgetPart::B;
    } else if (r.eat("c")) {
      part = GadgetPart::C;
    } else {
      r.fail();
    }
    std::optional<WorldId> host;
    if (r.eat("@")) {
      host = parse(r.rest());
    } else if (!r.done()) {
      r.fail();
    }
    WorldId id = gadget(m, part, a_index, std::move(host));
    if (id.tag() != tag) r.fail();
    return id;
  }
  r.fail();
}

// ---------------------------------------------------------------------------
// Frames and models

KripkeFrame::KripkeFrame(std::vector<WorldId> worlds, const std::vector<Edge>& edges)
    : worlds_(std::move(worlds)), succ_(worlds_.size()) {
  for (std::size_t i = 0; i < worlds_.size(); ++i) {
    if (!index_.emplace(worlds_[i].tag(), i).second) {
      throw PreconditionError("duplicate world id " + worlds_[i].tag());
    }
  }
  for (const auto& [from, to] : edges) {
    if (from >= worlds_.size() || to >= worlds_.size()) throw PreconditionError("edge endpoint out of range");
    succ_[from].push_back(to);
  }
  for (auto& s : succ_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

std::size_t KripkeFrame::index_of(const WorldId& w) const {
  auto it = index_.find(w.tag());
  if (it == index_.end()) throw UnknownWorld(w.tag());
  return it->second;
}

std::optional<std::size_t> KripkeFrame::find(std::string_view tag) const {
  auto it = index_.find(std::string(tag));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool KripkeFrame::has_edge(std::size_t from, std::size_t to) const {
  const auto& s = succ_.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

std::vector<Edge> KripkeFrame::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < succ_.size(); ++i) {
    for (std::size_t j : succ_[i]) out.emplace_back(i, j);
  }
  return out;
}

std::size_t KripkeFrame::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

KripkeModel::KripkeModel(KripkeFrame frame, const std::map<int, std::vector<std::size_t>>& valuation,
                         std::size_t root)
    : frame_(std::move(frame)), root_(root) {
  if (root_ >= frame_.size()) throw PreconditionError("root is not a world of the frame");
  for (const auto& [var, worlds] : valuation) {
    if (var < 1) throw PreconditionError("variable indices are positive");
    WorldSet set(frame_.size());
    for (std::size_t w : worlds) {
      if (w >= frame_.size()) throw PreconditionError("valuation names a world outside the frame");
      set.set(w);
    }
    valuation_.emplace(var, std::move(set));
  }
}

bool KripkeModel::holds(int variable, std::size_t world) const {
  auto it = valuation_.find(variable);
  return it != valuation_.end() && it->second.test(world);
}

WorldSet KripkeModel::true_set(int variable) const {
  auto it = valuation_.find(variable);
  return it == valuation_.end() ? WorldSet(frame_.size()) : it->second;
}

// ---------------------------------------------------------------------------
// Model checking

WorldSet ModelChecker::box_of(const WorldSet& s) const {
  WorldSet out(frame_.size());
  for (std::size_t w = 0; w < frame_.size(); ++w) {
    const auto succ = frame_.successors(w);
    out[w] = std::all_of(succ.begin(), succ.end(), [&](std::size_t v) { return s.test(v); });
  }
  return out;
}

WorldSet ModelChecker::dia_of(const WorldSet& s) const {
  WorldSet out(frame_.size());
  for (std::size_t w = 0; w < frame_.size(); ++w) {
    const auto succ = frame_.successors(w);
    out[w] = std::any_of(succ.begin(), succ.end(), [&](std::size_t v) { return s.test(v); });
  }
  return out;
}

const WorldSet& ModelChecker::truth_set(const ModalFormula& f) {
  if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second.second;

  using K = ModalFormula::Kind;
  const std::size_t n = frame_.size();
  WorldSet out(n);
  switch (f.kind()) {
    case K::Var: {
      auto it = valuation_.find(f.index());
      if (it != valuation_.end()) out = it->second;
      break;
    }
    case K::Falsum:
      break;
    case K::Verum:
      out.set();
      break;
    case K::Not:
      out = ~truth_set(f.operand());
      break;
    case K::And:
      out.set();
      for (const auto& k : f.children()) out &= truth_set(k);
      break;
    case K::Or:
      out = truth_set(f.left()) | truth_set(f.right());
      break;
    case K::Implies:
      out = ~truth_set(f.left()) | truth_set(f.right());
      break;
    case K::Box:
      out = box_of(truth_set(f.operand()));
      break;
    case K::Dia:
      out = dia_of(truth_set(f.operand()));
      break;
    case K::BoxPlus: {
      const WorldSet inner = truth_set(f.operand());
      out = inner & box_of(inner);
      break;
    }
    case K::BoxLe: {
      WorldSet layer = truth_set(f.operand());
      out = layer;
      for (int i = 0; i < f.param(); ++i) {
        layer = box_of(layer);
        out &= layer;
      }
      break;
    }
    case K::BoxPow:
    case K::DiaPow: {
      out = truth_set(f.operand());
      for (int i = 0; i < f.param(); ++i) out = f.kind() == K::BoxPow ? box_of(out) : dia_of(out);
      break;
    }
  }
  auto [it, inserted] = memo_.emplace(f.id(), std::make_pair(f, std::move(out)));
  return it->second.second;
}

bool model_check(const KripkeModel& model, std::size_t world, const ModalFormula& f) {
  if (world >= model.frame().size()) throw UnknownWorld("#" + std::to_string(world));
  ModelChecker checker(model);
  return checker.holds(world, f);
}

bool model_check(const KripkeModel& model, const WorldId& world, const ModalFormula& f) {
  return model_check(model, model.frame().index_of(world), f);
}

// ---------------------------------------------------------------------------
// Closures and frame classes

namespace {

std::vector<WorldSet> adjacency(const KripkeFrame& frame) {
  std::vector<WorldSet> rows(frame.size(), WorldSet(frame.size()));
  for (std::size_t i = 0; i < frame.size(); ++i) {
    for (std::size_t j : frame.successors(i)) rows[i].set(j);
  }
  return rows;
}

KripkeFrame from_rows(const KripkeFrame& frame, const std::vector<WorldSet>& rows) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto j = rows[i].find_first(); j != WorldSet::npos; j = rows[i].find_next(j)) edges.emplace_back(i, j);
  }
  return KripkeFrame(frame.worlds(), edges);
}

}  // namespace

KripkeFrame close(const KripkeFrame& frame, Closure mode) {
  std::vector<WorldSet> rows = adjacency(frame);
  const std::size_t n = frame.size();
  if (mode == Closure::ReflexiveTransitive || mode == Closure::ReflexiveSymmetric) {
    for (std::size_t i = 0; i < n; ++i) rows[i].set(i);
  }
  if (mode == Closure::ReflexiveSymmetric) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : frame.successors(i)) rows[j].set(i);
    }
  } else {
    // Warshall
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].test(k)) rows[i] |= rows[k];
      }
    }
  }
  return from_rows(frame, rows);
}

bool is_reflexive(const KripkeFrame& frame) {
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (!frame.has_edge(i, i)) return false;
  }
  return true;
}

bool is_irreflexive(const KripkeFrame& frame) {
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (frame.has_edge(i, i)) return false;
  }
  return true;
}

bool is_transitive(const KripkeFrame& frame) {
  for (std::size_t i = 0; i < frame.size(); ++i) {
    for (std::size_t j : frame.successors(i)) {
      for (std::size_t k : frame.successors(j)) {
        if (!frame.has_edge(i, k)) return false;
      }
    }
  }
  return true;
}

bool is_symmetric(const KripkeFrame& frame) {
  for (const auto& [i, j] : frame.edges()) {
    if (!frame.has_edge(j, i)) return false;
  }
  return true;
}

bool is_antisymmetric(const KripkeFrame& frame) {
  for (const auto& [i, j] : frame.edges()) {
    if (i != j && frame.has_edge(j, i)) return false;
  }
  return true;
}

bool frame_class_check(const KripkeFrame& frame, FrameClass cls) {
  switch (cls) {
    case FrameClass::GL: return is_transitive(frame) && is_irreflexive(frame);
    case FrameClass::Grz: return is_reflexive(frame) && is_transitive(frame) && is_antisymmetric(frame);
    case FrameClass::KTB: return is_reflexive(frame) && is_symmetric(frame);
  }
  return false;
}

bool frame_validates(const KripkeFrame& frame, const ModalFormula& f, std::size_t budget) {
  const std::set<int> vars = variables(f);
  const std::size_t n = frame.size();
  const std::vector<int> var_list(vars.begin(), vars.end());
  const std::size_t bits = n * var_list.size();
  if (bits > budget || bits >= 63) {
    throw BudgetExceeded("valuation space 2^" + std::to_string(bits) + " exceeds budget 2^" + std::to_string(budget));
  }

  std::map<int, WorldSet> valuation;
  for (int v : var_list) valuation.emplace(v, WorldSet(n));
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::size_t bit = 0;
    for (int v : var_list) {
      WorldSet& set = valuation[v];
      for (std::size_t w = 0; w < n; ++w, ++bit) set[w] = ((code >> bit) & 1U) != 0;
    }
    ModelChecker checker(frame, valuation);
    if (!checker.truth_set(f).all()) return false;
  }
  return true;
}

std::string to_dot(const KripkeFrame& frame) {
  std::ostringstream out;
  out << "digraph frame {\n";
  for (std::size_t i = 0; i < frame.size(); ++i) out << "  w" << i << " [label=\"" << frame.world(i).tag() << "\"];\n";
  for (const auto& [i, j] : frame.edges()) out << "  w" << i << " -> w" << j << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace wgrz
