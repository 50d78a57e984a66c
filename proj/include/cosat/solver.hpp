#ifndef COSAT_SOLVER_HPP_
#define COSAT_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "cosat/formula.hpp"
#include "cosat/logic.hpp"
#include "cosat/onestep.hpp"
#include "cosat/witness.hpp"

namespace cosat {

enum class StrategyChoice { Default, Small, Carrier, Both };

StrategyChoice parse_strategy(const std::string& s);  // throws std::invalid_argument
std::string strategy_name(StrategyChoice s);

struct SolverOptions {
  StrategyChoice strategy = StrategyChoice::Default;
  IlpOptions ilp;
  bool cache = true;
  std::size_t max_states = 1'000'000;  // witness size cap
  std::size_t max_alphabet = 24;
};

struct SolveStats {
  std::uint64_t sat_calls = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t sign_maps = 0;      // full sign maps handed to the engine
  std::uint64_t engine_calls = 0;
  int max_depth = 0;
  std::size_t max_carrier = 0;      // largest carrier of a returned one-step model
  std::size_t max_structure = 0;
  std::size_t states = 0;           // witness size
};

struct Verdict {
  bool sat = false;
  std::optional<ShallowModel> model;
  SolveStats stats;
};

class Solver {
 public:
  explicit Solver(const Logic& logic, SolverOptions opt = {});

  const Logic& logic() const { return logic_; }
  const Engine& engine() const { return *engine_; }
  const SolverOptions& options() const { return opt_; }
  // The one-step strategy actually used (Both reports Both).
  StrategyChoice effective_strategy() const { return strat_; }

  Verdict sat(const Formula& f) const;
  // Verdict for the negation; sat == false means f is valid.
  Verdict refute(const Formula& f) const;
  bool valid(const Formula& f) const { return !refute(f).sat; }

 private:
  Logic logic_;
  SolverOptions opt_;
  std::shared_ptr<const Engine> engine_;
  StrategyChoice strat_;
};

}  // namespace cosat

#endif  // COSAT_SOLVER_HPP_
