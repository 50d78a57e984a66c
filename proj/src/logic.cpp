#include "cosat/logic.hpp"

#include <stdexcept>

namespace cosat {

Syntax Logic::syntax() const {
  switch (kind) {
    case LogicKind::K:
    case LogicKind::T: return Syntax::Box;
    case LogicKind::CK:
    case LogicKind::CKId:
    case LogicKind::CKMp: return Syntax::Cond;
    case LogicKind::Agency: return Syntax::Agency;
    case LogicKind::Pres:
    case LogicKind::PresT:
    case LogicKind::PresHalf: return Syntax::Count;
    case LogicKind::Prob:
    case LogicKind::ProbStat: return Syntax::Prob;
  }
  return Syntax::Box;
}

bool Logic::copointed() const {
  switch (kind) {
    case LogicKind::T:
    case LogicKind::CKMp:
    case LogicKind::Agency:
    case LogicKind::PresT:
    case LogicKind::PresHalf:
    case LogicKind::ProbStat: return true;
    default: return false;
  }
}

std::string Logic::name() const {
  switch (kind) {
    case LogicKind::K: return "k";
    case LogicKind::T: return "t";
    case LogicKind::CK: return "ck";
    case LogicKind::CKId: return "ckid";
    case LogicKind::CKMp: return "ckmp";
    case LogicKind::Agency: return "agency";
    case LogicKind::Pres: return "presburger";
    case LogicKind::PresT: return "presburger-t";
    case LogicKind::PresHalf: return "presburger-half";
    case LogicKind::Prob: return "prob";
    case LogicKind::ProbStat: return "prob-stat:" + rho.str();
  }
  return "?";
}

Logic parse_logic(std::string_view id) {
  static const std::pair<const char*, LogicKind> kTable[] = {
      {"k", LogicKind::K},          {"t", LogicKind::T},
      {"ck", LogicKind::CK},        {"ckid", LogicKind::CKId},
      {"ckmp", LogicKind::CKMp},    {"agency", LogicKind::Agency},
      {"presburger", LogicKind::Pres}, {"presburger-t", LogicKind::PresT},
      {"presburger-half", LogicKind::PresHalf}, {"prob", LogicKind::Prob},
  };
  for (auto& [name, kind] : kTable)
    if (id == name) return Logic{kind, Rat()};
  constexpr std::string_view stat = "prob-stat:";
  if (id.substr(0, stat.size()) == stat) {
    Rat rho = Rat::parse(id.substr(stat.size()));
    if (rho < Rat(0) || rho > Rat(1))
      throw std::invalid_argument("stationary threshold must lie in [0,1]");
    return Logic{LogicKind::ProbStat, rho};
  }
  throw std::invalid_argument("unknown logic '" + std::string(id) + "'");
}

}  // namespace cosat
