#ifndef COSAT_SUITES_HPP_
#define COSAT_SUITES_HPP_

#include <string>
#include <vector>

namespace cosat {

enum class Expect { Valid, Invalid, Sat, Unsat };

struct AxiomCase {
  std::string logic;
  std::string formula;
  Expect expect;
};

// Known validities and non-validities of the supported logics.
const std::vector<AxiomCase>& axiom_suite();

std::string expect_name(Expect e);

}  // namespace cosat

#endif  // COSAT_SUITES_HPP_
