#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "wgrz/modal.hpp"

namespace wgrz {

using WorldSet = boost::dynamic_bitset<std::uint64_t>;

class WorldId;

// A world of a quantifier tree (or of a tableau witness): the number of
// resolved quantifiers, the classical model it carries, and a serial number
// that keeps siblings with equal models apart.
struct BaseWorld {
  int level = 0;
  std::vector<int> assignment;  // sorted, distinct
  int serial = 0;
};

enum class GadgetPart : std::uint8_t { A, B, C };

// A world of a gadget frame F_m / F_m+: a_i (0 <= i <= m), b or c, optionally
// tagged with the base world the copy hangs below.
struct GadgetWorld {
  int m = 1;
  GadgetPart part = GadgetPart::A;
  int a_index = 0;
  std::shared_ptr<const WorldId> host;
};

// Tagged world identifier. Its rendered tag is the identity used for lookup
// and serialization, e.g. "base:L2:{1,3}:#7" or "gadget:m3:a0@base:L1:{}:#2".
class WorldId {
 public:
  static WorldId base(int level, std::vector<int> assignment, int serial);
  static WorldId gadget(int m, GadgetPart part, int a_index = 0, std::optional<WorldId> host = std::nullopt);
  static WorldId parse(std::string_view tag);

  bool is_base() const noexcept { return std::holds_alternative<BaseWorld>(data_); }
  bool is_gadget() const noexcept { return !is_base(); }
  const BaseWorld& as_base() const { return std::get<BaseWorld>(data_); }
  const GadgetWorld& as_gadget() const { return std::get<GadgetWorld>(data_); }
  const std::string& tag() const noexcept { return tag_; }

  friend bool operator==(const WorldId& a, const WorldId& b) { return a.tag_ == b.tag_; }

 private:
  WorldId(std::variant<BaseWorld, GadgetWorld> data, std::string tag)
      : data_(std::move(data)), tag_(std::move(tag)) {}

  std::variant<BaseWorld, GadgetWorld> data_;
  std::string tag_;
};

using Edge = std::pair<std::size_t, std::size_t>;

// Finite frame. Worlds are addressed by position; the relation is stored as
// sorted, duplicate-free successor lists.
class KripkeFrame {
 public:
  KripkeFrame() = default;
  KripkeFrame(std::vector<WorldId> worlds, const std::vector<Edge>& edges);

  std::size_t size() const noexcept { return worlds_.size(); }
  const std::vector<WorldId>& worlds() const noexcept { return worlds_; }
  const WorldId& world(std::size_t i) const { return worlds_.at(i); }
  std::size_t index_of(const WorldId& w) const;
  std::optional<std::size_t> find(std::string_view tag) const;

  std::span<const std::size_t> successors(std::size_t i) const { return succ_.at(i); }
  bool has_edge(std::size_t from, std::size_t to) const;
  std::vector<Edge> edges() const;
  std::size_t edge_count() const noexcept;

 private:
  std::vector<WorldId> worlds_;
  std::vector<std::vector<std::size_t>> succ_;
  std::unordered_map<std::string, std::size_t> index_;
};

class KripkeModel {
 public:
  // valuation maps a variable index to the worlds where it is true.
  KripkeModel(KripkeFrame frame, const std::map<int, std::vector<std::size_t>>& valuation, std::size_t root);

  const KripkeFrame& frame() const noexcept { return frame_; }
  std::size_t root() const noexcept { return root_; }
  const WorldId& root_world() const { return frame_.world(root_); }
  bool holds(int variable, std::size_t world) const;
  // Worlds where the variable is true; empty set for unlisted variables.
  WorldSet true_set(int variable) const;
  const std::map<int, WorldSet>& valuation() const noexcept { return valuation_; }

 private:
  KripkeFrame frame_;
  std::map<int, WorldSet> valuation_;
  std::size_t root_;
};

// Computes the set of worlds satisfying each subformula, bottom-up, with
// one memo entry per formula node. Sugar is evaluated directly (box<=n as the
// intersection of the first n box iterates), not via expansion.
class ModelChecker {
 public:
  explicit ModelChecker(const KripkeModel& model) : ModelChecker(model.frame(), model.valuation()) {}
  ModelChecker(const KripkeFrame& frame, const std::map<int, WorldSet>& valuation)
      : frame_(frame), valuation_(valuation) {}

  const WorldSet& truth_set(const ModalFormula& f);
  bool holds(std::size_t world, const ModalFormula& f) { return truth_set(f).test(world); }

 private:
  WorldSet box_of(const WorldSet& s) const;
  WorldSet dia_of(const WorldSet& s) const;

  const KripkeFrame& frame_;
  const std::map<int, WorldSet>& valuation_;
  std::unordered_map<const void*, std::pair<ModalFormula, WorldSet>> memo_;
};

bool model_check(const KripkeModel& model, std::size_t world, const ModalFormula& f);
bool model_check(const KripkeModel& model, const WorldId& world, const ModalFormula& f);

enum class Closure { Transitive, ReflexiveTransitive, ReflexiveSymmetric };

// Smallest superset of the relation with the named property.
KripkeFrame close(const KripkeFrame& frame, Closure mode);

bool is_reflexive(const KripkeFrame& frame);
bool is_irreflexive(const KripkeFrame& frame);
bool is_transitive(const KripkeFrame& frame);
bool is_symmetric(const KripkeFrame& frame);
bool is_antisymmetric(const KripkeFrame& frame);

enum class FrameClass { GL, Grz, KTB };

// Finite-frame characterisations: GL = transitive and irreflexive,
// Grz = partial order, KTB = reflexive and symmetric.
bool frame_class_check(const KripkeFrame& frame, FrameClass cls);

inline constexpr std::size_t kDefaultValidityBudget = 20;

// True iff f holds at every world under every valuation of its variables.
// Enumerates all 2^(|worlds| * #vars) valuations and throws BudgetExceeded
// (without answering) when |worlds| * #vars exceeds budget.
bool frame_validates(const KripkeFrame& frame, const ModalFormula& f,
                     std::size_t budget = kDefaultValidityBudget);

// Plain digraph text for inspection.
std::string to_dot(const KripkeFrame& frame);

}  // namespace wgrz
