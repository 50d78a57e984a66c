#ifndef COSAT_WITNESS_HPP_
#define COSAT_WITNESS_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cosat/formula.hpp"
#include "cosat/onestep.hpp"

namespace cosat {

// A state's structure lives over its local points: its children in order,
// then the state itself when it carries a loop.
struct State {
  std::vector<std::string> vars;  // sorted, true variables
  std::vector<std::size_t> children;
  bool loop = false;
  Structure structure;
};

struct ShallowModel {
  Logic logic;
  std::size_t root = 0;
  std::vector<State> states;
};

LocalCarrier local_carrier(const State& s);

// General finite coalgebra: every state lists the global ids of its local
// points; self_index marks the state itself among them.
struct CoalgebraState {
  std::vector<std::string> vars;
  std::vector<std::size_t> points;
  std::optional<std::size_t> self_index;
  Structure structure;
};

struct Coalgebra {
  Logic logic;
  std::vector<CoalgebraState> states;
};

Coalgebra as_coalgebra(const ShallowModel& m);

// Truth sets of formulas over all states, computed bottom-up and memoised.
class ModelChecker {
 public:
  ModelChecker(const Coalgebra& c, const Engine& e) : c_(c), e_(e) {}
  const std::vector<bool>& extension(const Formula& f);
  bool holds(std::size_t state, const Formula& f) { return extension(f).at(state); }

 private:
  const Coalgebra& c_;
  const Engine& e_;
  std::unordered_map<std::string, std::vector<bool>> memo_;
};

bool model_check(const ShallowModel& m, std::size_t state, const Formula& f, const Engine& e);

struct VerifyReport {
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> notes;  // details of failed checks
  bool ok() const;
  std::string str() const;
};

struct VerifyOptions {
  bool small = false;  // also check small-strategy branching bounds
};

VerifyReport verify(const ShallowModel& m, const Formula& f, const Engine& e,
                    const VerifyOptions& opt = {});

// Witness JSON, schema version 1. deserialize throws SchemaError.
std::string serialize(const ShallowModel& m);
ShallowModel deserialize(const std::string& text);

// Distinct modal subformulas of f.
std::size_t modal_atom_count(const Formula& f);

}  // namespace cosat

#endif  // COSAT_WITNESS_HPP_
