#ifndef COSAT_ARITH_HPP_
#define COSAT_ARITH_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosat/rat.hpp"

namespace cosat {

enum class Rel { Lt, Le, Eq, Ge, Gt, Mod };

// sum coeffs[v] * x_v  rel  rhs.  For Mod: sum == rhs (mod modulus).
struct LinConstraint {
  std::map<std::size_t, Rat> coeffs;
  Rel rel = Rel::Le;
  Rat rhs;
  BigInt modulus = 0;
};

enum class Domain { NonnegRational, NonnegInteger };

struct LinSystem {
  std::size_t vars = 0;
  std::vector<LinConstraint> constraints;
  Domain domain = Domain::NonnegRational;
};

// Checks every constraint and nonnegativity at a rational point.
bool satisfies(const LinSystem& sys, const std::vector<Rat>& x);

// Exact simplex; strict rows go through an infinitesimal. Congruences are rejected.
std::optional<std::vector<Rat>> lp_feasible(const LinSystem& sys);

struct IlpOptions {
  BigInt value_cap = 1000000;       // largest coordinate the search will try
  std::uint64_t node_cap = 200000;  // search nodes before giving up
};

struct IlpStats {
  BigInt bound;          // solution-size bound for the system
  BigInt box;            // box actually searched
  std::uint64_t nodes = 0;
};

// Nonnegative integer solution, or nullopt when none exists. Throws
// ResourceLimit when the search could not be completed within the caps.
std::optional<std::vector<BigInt>> ilp_feasible(const LinSystem& sys, const IlpOptions& opt = {},
                                                IlpStats* stats = nullptr);

// If the system is feasible it has a solution with every coordinate at most
// this value (integer programming solution-size estimate).
BigInt ilp_solution_bound(const LinSystem& sys);

// Zeroes coordinates of a feasible point in index order while feasibility
// survives. Result support is at most the number of constraints.
std::vector<Rat> minimize_support(const LinSystem& sys, const std::vector<Rat>& p);

std::size_t support_size(const std::vector<Rat>& x);

}  // namespace cosat

#endif  // COSAT_ARITH_HPP_
