// Internal: column grouping shared by the counting and probability engines.
#ifndef COSAT_SRC_ENGINE_WEIGHTS_HPP_
#define COSAT_SRC_ENGINE_WEIGHTS_HPP_

#include <map>
#include <vector>

#include "engines.hpp"

namespace cosat::detail {

// Carrier points with identical membership in every clause argument are
// interchangeable; each group gets one variable placed on its least point.
struct Columns {
  std::vector<std::size_t> rep;         // group -> least point
  std::vector<std::size_t> group_of;    // point -> group
};

inline Columns group_columns(const OneStepClause& cl, std::size_t n) {
  Columns c;
  c.group_of.assign(n, 0);
  std::map<std::vector<bool>, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> sig;
    for (const auto& a : cl.atoms)
      for (const auto& e : a.args) sig.push_back(e.contains(i));
    auto [it, fresh] = seen.emplace(std::move(sig), c.rep.size());
    if (fresh) c.rep.push_back(i);
    c.group_of[i] = it->second;
  }
  return c;
}

// coefficient map of sum_k coeffs[k] * |args[k]| in group variables;
// the designated individual is variable `self_var` when present.
template <class Num>
std::map<std::size_t, Rat> linear_form(const std::vector<Num>& coeffs, const std::vector<PointSet>& args,
                                       const Columns& cols, std::optional<std::size_t> designated,
                                       std::optional<std::size_t> self_var) {
  std::map<std::size_t, Rat> out;
  for (std::size_t k = 0; k < args.size(); ++k) {
    Rat a(coeffs[k]);
    for (std::size_t g = 0; g < cols.rep.size(); ++g)
      if (args[k].contains(cols.rep[g])) out[g] += a;
    if (designated && self_var && args[k].contains(*designated)) out[*self_var] += a;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

}  // namespace cosat::detail

#endif  // COSAT_SRC_ENGINE_WEIGHTS_HPP_
