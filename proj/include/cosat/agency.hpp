#ifndef COSAT_AGENCY_HPP_
#define COSAT_AGENCY_HPP_

#include <map>
#include <string>
#include <vector>

#include "cosat/formula.hpp"
#include "cosat/pointset.hpp"
#include "cosat/witness.hpp"

namespace cosat {

// Finite selection function model. f(x)(A) is table[x][A] when present and
// empty otherwise, so the table determines a total selection function.
struct SelectionModel {
  std::vector<std::vector<std::string>> vars;  // sorted, per state
  std::vector<std::map<PointSet, PointSet>> table;

  std::size_t size() const { return vars.size(); }
  PointSet select(std::size_t x, const PointSet& a) const;
};

// Names of violated conditions (E1, E2, E3); empty when all hold.
std::vector<std::string> selection_violations(const SelectionModel& sm);

// Truth under the selection semantics: E a iff x in f(x)(a), C a iff f(x)(a) nonempty.
class SelectionChecker {
 public:
  explicit SelectionChecker(const SelectionModel& sm) : sm_(sm) {}
  const PointSet& extension(const Formula& f);
  bool holds(std::size_t x, const Formula& f) { return extension(f).contains(x); }

 private:
  const SelectionModel& sm_;
  std::map<std::string, PointSet> memo_;
};

// Doubles every state of an agency witness; state s becomes s and s + n.
// The table holds the extensions of the query's subformulas and the full
// set, closed under intersection.
SelectionModel to_selection(const ShallowModel& m, const Formula& query, const Engine& e);

// Three-valued structures read off the table. Throws FrameViolation when the
// model breaks E1-E3 or the derived structure breaks the intersection rule.
Coalgebra from_selection(const SelectionModel& sm);

}  // namespace cosat

#endif  // COSAT_AGENCY_HPP_
