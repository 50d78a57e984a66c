#ifndef COSAT_LOGIC_HPP_
#define COSAT_LOGIC_HPP_

#include <string>
#include <string_view>

#include "cosat/rat.hpp"

namespace cosat {

enum class LogicKind { K, T, CK, CKId, CKMp, Agency, Pres, PresT, PresHalf, Prob, ProbStat };

// Which modal operators a logic admits in the surface syntax.
enum class Syntax { Box, Cond, Agency, Count, Prob };

struct Logic {
  LogicKind kind = LogicKind::K;
  Rat rho;  // stationary threshold, prob-stat only

  Syntax syntax() const;
  bool copointed() const;
  std::string name() const;

  friend bool operator==(const Logic&, const Logic&) = default;
};

// Accepts k, t, ck, ckid, ckmp, agency, presburger, presburger-t,
// presburger-half, prob, prob-stat:<rat>. Throws std::invalid_argument.
Logic parse_logic(std::string_view id);

}  // namespace cosat

#endif  // COSAT_LOGIC_HPP_
