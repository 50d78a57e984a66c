#include "cosat/onestep.hpp"

#include <algorithm>
#include <stdexcept>

#include "cosat/errors.hpp"
#include "engines.hpp"

namespace cosat {

const char* three_name(Three t) {
  switch (t) {
    case Three::Bot: return "bot";
    case Three::Star: return "star";
    case Three::Top: return "top";
  }
  return "?";
}

std::optional<std::size_t> Carrier::index_of(PointClass c) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), c);
  if (it == classes.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - classes.begin());
}

Restriction restrict_carrier(const Carrier& c, const PointSet& keep) {
  Restriction r;
  r.old_to_new.assign(c.classes.size(), npos);
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    if (!keep.contains(i) && c.designated != i) continue;
    r.old_to_new[i] = r.carrier.classes.size();
    r.carrier.classes.push_back(c.classes[i]);
  }
  if (c.designated) r.carrier.designated = r.old_to_new[*c.designated];
  return r;
}

PointSet remap_set(const PointSet& s, const std::vector<std::size_t>& old_to_new, std::size_t n) {
  PointSet out(n);
  for (std::size_t i = 0; i < s.universe(); ++i)
    if (s.contains(i) && old_to_new[i] != npos) out.insert(old_to_new[i]);
  return out;
}

namespace {

bool eval_class(const Formula& f, const Analysis& an, PointClass b) {
  switch (f->kind) {
    case Kind::False: return false;
    case Kind::True: return true;
    case Kind::Var:
    case Kind::Modal: {
      auto it = an.letter.find(f->key);
      if (it == an.letter.end()) throw std::out_of_range("not an alphabet letter: " + f->key);
      return (b >> it->second) & 1u;
    }
    case Kind::Not: return !eval_class(f->kids[0], an, b);
    case Kind::And: return eval_class(f->kids[0], an, b) && eval_class(f->kids[1], an, b);
    case Kind::Or: return eval_class(f->kids[0], an, b) || eval_class(f->kids[1], an, b);
    case Kind::Implies: return !eval_class(f->kids[0], an, b) || eval_class(f->kids[1], an, b);
    case Kind::Iff: return eval_class(f->kids[0], an, b) == eval_class(f->kids[1], an, b);
  }
  return false;
}

}  // namespace

PointSet extension(const Formula& phi, const Analysis& an, const Carrier& c) {
  PointSet out(c.classes.size());
  for (std::size_t i = 0; i < c.classes.size(); ++i)
    if (eval_class(phi, an, c.classes[i])) out.insert(i);
  return out;
}

std::size_t OneStepClause::negatives() const {
  std::size_t n = 0;
  for (const auto& a : atoms) if (!a.positive) ++n;
  return n;
}

bool model_check_clause(const Engine& e, const OneStepModel& m, const OneStepClause& cl) {
  auto lc = m.carrier.local();
  if (!e.check_structure(m.structure, lc)) return false;
  for (const auto& a : cl.atoms)
    if (e.eval_atom(m.structure, a.op(), a.args, lc) != a.positive) return false;
  return true;
}

std::shared_ptr<const Engine> make_engine(const Logic& logic, const EngineOptions& opt) {
  switch (logic.syntax()) {
    case Syntax::Box: return detail::kripke_engine(logic);
    case Syntax::Cond: return detail::conditional_engine(logic);
    case Syntax::Agency: return detail::agency_engine(logic);
    case Syntax::Count: return detail::counting_engine(logic, opt);
    case Syntax::Prob: return detail::prob_engine(logic);
  }
  throw InternalError("no engine for logic");
}

namespace detail {
VisitRecord& weight_record() {
  thread_local VisitRecord r;
  return r;
}
}  // namespace detail

const VisitRecord& last_weight_eval() { return detail::weight_record(); }

}  // namespace cosat
