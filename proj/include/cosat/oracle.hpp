#ifndef COSAT_ORACLE_HPP_
#define COSAT_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosat/formula.hpp"
#include "cosat/onestep.hpp"
#include "cosat/witness.hpp"

namespace cosat {

// Plain finite Kripke model over f's variables. succ[i] and val[i] are bit
// masks; reflexive models have every loop implicitly.
struct KripkeModel {
  std::vector<std::string> vars;
  std::vector<std::uint32_t> val;
  std::vector<std::uint32_t> succ;
  bool reflexive = false;
  std::size_t root = 0;
};

// Own evaluator, shares nothing with the engines.
bool kripke_holds(const KripkeModel& m, std::size_t state, const Formula& f);

// Exhaustive search for a pointed model with at most n states (n <= 16).
// States are added bottom-up in increasing order of (successors, valuation)
// and a state equivalent on f's subformulas to an earlier one is skipped.
std::optional<KripkeModel> kripke_brute(const Formula& f, std::size_t n, bool reflexive);

struct OneStepBounds {
  std::uint32_t max_weight = 4;       // counting: per point
  std::uint32_t max_self = 4;         // counting: self weight (half uses max_weight * points)
  std::uint32_t max_denominator = 8;  // probability grid
};

// Enumerates structures over the carrier and returns the first that passes
// model_check_clause.
std::optional<OneStepModel> onestep_brute(const Engine& e, const OneStepClause& cl, const Carrier& u,
                                          const OneStepBounds& b = {});

struct SearchBounds {
  std::size_t max_types = 4096;
  std::uint64_t max_choices = 1u << 20;  // structures tried per round and valuation
};

struct BoundedModel {
  Coalgebra model;
  std::size_t root = 0;
};

// Builds every state type reachable by finite acyclic models (k, t, ck, ckid)
// and returns one whose root satisfies f. Throws ResourceLimit when the caps
// are exceeded and std::invalid_argument for other logics.
std::optional<BoundedModel> bounded_model_search(const Formula& f, const Engine& e,
                                                 const SearchBounds& b = {});

}  // namespace cosat

#endif  // COSAT_ORACLE_HPP_
