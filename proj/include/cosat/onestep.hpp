#ifndef COSAT_ONESTEP_HPP_
#define COSAT_ONESTEP_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cosat/arith.hpp"
#include "cosat/formula.hpp"
#include "cosat/logic.hpp"
#include "cosat/pointset.hpp"

namespace cosat {

// ---- successor structures, all over local points 0..n-1 -------------------

struct KripkeStructure {
  PointSet succ;
  friend bool operator==(const KripkeStructure&, const KripkeStructure&) = default;
};

// Partial map antecedent -> value; undefined antecedents take the logic's default.
struct ConditionalStructure {
  std::vector<std::pair<PointSet, PointSet>> entries;
  friend bool operator==(const ConditionalStructure&, const ConditionalStructure&) = default;
};

enum class Three { Bot = 0, Star = 1, Top = 2 };
const char* three_name(Three t);

// Partial map f0 into {bot, *, top}; the total map is its intersection closure.
struct AgencyStructure {
  std::vector<std::pair<PointSet, Three>> entries;
  friend bool operator==(const AgencyStructure&, const AgencyStructure&) = default;
};

// weights[i] is the multiplicity of point i. The designated individual,
// when present, carries its own multiplicity `self` on top of its class.
struct CountingStructure {
  std::vector<BigInt> weights;
  BigInt self = 0;
  friend bool operator==(const CountingStructure&, const CountingStructure&) = default;
};

struct ProbStructure {
  std::vector<Rat> mass;
  Rat self;
  friend bool operator==(const ProbStructure&, const ProbStructure&) = default;
};

using Structure =
    std::variant<KripkeStructure, ConditionalStructure, AgencyStructure, CountingStructure, ProbStructure>;

struct LocalCarrier {
  std::size_t size = 0;
  std::optional<std::size_t> designated;
};

// ---- one-step models over assignment classes ------------------------------

using PointClass = std::uint64_t;  // bit i = alphabet letter i

struct Carrier {
  std::vector<PointClass> classes;  // strictly ascending
  std::optional<std::size_t> designated;

  LocalCarrier local() const { return {classes.size(), designated}; }
  std::optional<std::size_t> index_of(PointClass c) const;
};

// Keeps the points in `keep` (plus the designated one); old_to_new maps
// dropped points to npos.
struct Restriction {
  Carrier carrier;
  std::vector<std::size_t> old_to_new;
};
Restriction restrict_carrier(const Carrier& c, const PointSet& keep);
PointSet remap_set(const PointSet& s, const std::vector<std::size_t>& old_to_new, std::size_t n);

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Points of the carrier whose assignment satisfies phi; atoms of phi must be
// alphabet letters. Throws std::out_of_range on an unknown letter.
PointSet extension(const Formula& phi, const Analysis& an, const Carrier& c);

struct ClauseAtom {
  Formula atom;  // the modal formula itself
  bool positive = true;
  std::vector<PointSet> args;
  const ModalOp& op() const { return atom->op; }
};

struct OneStepClause {
  std::vector<ClauseAtom> atoms;
  std::size_t negatives() const;
};

struct OneStepModel {
  Carrier carrier;
  Structure structure;
};

enum class Strategy { Small, Carrier };

struct Capabilities {
  bool supports_small = false;
  bool supports_carrier = true;
  bool copointed = false;
  // Set-valued structures: the designated class point stands for the current
  // state alone. Weight engines keep class weight and self weight apart.
  bool class_point_is_self = true;
};

struct EngineOptions {
  IlpOptions ilp;
};

class Engine {
 public:
  virtual ~Engine() = default;

  virtual const Logic& logic() const = 0;
  virtual Capabilities caps() const = 0;
  virtual bool check_structure(const Structure& s, const LocalCarrier& c) const = 0;
  virtual bool eval_atom(const Structure& s, const ModalOp& op, const std::vector<PointSet>& args,
                         const LocalCarrier& c) const = 0;
  virtual std::optional<OneStepModel> sat(const OneStepClause& cl, const Carrier& u,
                                          Strategy strategy) const = 0;
  // Representation size: entries, or summed binary length of weights.
  virtual std::size_t structure_size(const Structure& s) const = 0;
  // Largest small-strategy carrier for a clause with n atoms (npos: none).
  virtual std::size_t small_bound(std::size_t atoms) const = 0;
  // Structure of a state without children.
  virtual Structure leaf() const = 0;
  // Whether a leaf state carries a loop edge.
  virtual bool leaf_loops() const { return caps().copointed; }
  // Points that must become child states in a witness.
  virtual PointSet needed_points(const Structure& s, const LocalCarrier& c) const = 0;
  // Re-expresses s over a new point set; map[i] = new index of old point i
  // (npos = dropped).
  virtual Structure remap(const Structure& s, const std::vector<std::size_t>& map,
                          const LocalCarrier& to) const = 0;
};

std::shared_ptr<const Engine> make_engine(const Logic& logic, const EngineOptions& opt = {});

// Structure passes check_structure and every literal has its sign.
bool model_check_clause(const Engine& e, const OneStepModel& m, const OneStepClause& cl);

// ---- engine-specific helpers exposed for tests and oracles ----------------

Three closure_eval(const AgencyStructure& s, const PointSet& a);

// Points visited by the most recent counting/probability eval_atom on this
// thread, and the carrier size of that call.
struct VisitRecord {
  std::uint64_t visits = 0;
  std::uint64_t carrier = 0;
  std::uint64_t calls = 0;  // running total on this thread
};
const VisitRecord& last_weight_eval();

}  // namespace cosat

#endif  // COSAT_ONESTEP_HPP_
