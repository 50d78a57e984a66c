#include "cosat/suites.hpp"

namespace cosat {

const std::vector<AxiomCase>& axiom_suite() {
  static const std::vector<AxiomCase> cases = {
      {"k", "[](p -> q) -> ([]p -> []q)", Expect::Valid},
      {"t", "[]p -> p", Expect::Valid},
      {"k", "[]p -> p", Expect::Invalid},
      {"ckid", "(p => p)", Expect::Valid},
      {"ck", "(p => p)", Expect::Invalid},
      {"ckmp", "(p => q) -> (p -> q)", Expect::Valid},
      {"ck", "(p => q) -> (p -> q)", Expect::Invalid},
      {"agency", "~C true", Expect::Valid},
      {"agency", "~C false", Expect::Valid},
      {"agency", "(E p & E q) -> E (p & q)", Expect::Valid},
      {"agency", "E p -> p", Expect::Valid},
      {"agency", "E p -> C p", Expect::Valid},
      {"prob", "L{1*(true) >= 1}", Expect::Valid},
      {"prob", "L{1*(p) >= 1/2} & L{1*(~p) >= 2/3}", Expect::Unsat},
      {"presburger-t", "p -> <0>p", Expect::Valid},
      {"presburger", "p -> <0>p", Expect::Invalid},
  };
  return cases;
}

std::string expect_name(Expect e) {
  switch (e) {
    case Expect::Valid: return "valid";
    case Expect::Invalid: return "invalid";
    case Expect::Sat: return "sat";
    case Expect::Unsat: return "unsat";
  }
  return "?";
}

}  // namespace cosat
