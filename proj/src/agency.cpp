#include "cosat/agency.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cosat/errors.hpp"

namespace cosat {

PointSet SelectionModel::select(std::size_t x, const PointSet& a) const {
  auto it = table.at(x).find(a);
  if (it == table[x].end()) return PointSet(size());
  return it->second;
}

std::vector<std::string> selection_violations(const SelectionModel& sm) {
  std::set<std::string> bad;
  const PointSet full = PointSet::full(sm.size());
  for (std::size_t x = 0; x < sm.size(); ++x) {
    if (!sm.select(x, full).empty()) bad.insert("E1");
    for (const auto& [a, fa] : sm.table[x]) {
      if (!fa.subset_of(a)) bad.insert("E3");
      for (const auto& [b, fb] : sm.table[x])
        if (!(fa & fb).subset_of(sm.select(x, a & b))) bad.insert("E2");
    }
  }
  return {bad.begin(), bad.end()};
}

const PointSet& SelectionChecker::extension(const Formula& f) {
  auto it = memo_.find(f->key);
  if (it != memo_.end()) return it->second;
  const std::size_t n = sm_.size();
  PointSet out(n);
  switch (f->kind) {
    case Kind::False: break;
    case Kind::True: out = PointSet::full(n); break;
    case Kind::Var:
      for (std::size_t x = 0; x < n; ++x)
        if (std::binary_search(sm_.vars[x].begin(), sm_.vars[x].end(), f->name)) out.insert(x);
      break;
    case Kind::Not: out = extension(f->kids[0]).complement(); break;
    case Kind::And: out = extension(f->kids[0]) & extension(f->kids[1]); break;
    case Kind::Or: out = extension(f->kids[0]) | extension(f->kids[1]); break;
    case Kind::Implies: out = extension(f->kids[0]).complement() | extension(f->kids[1]); break;
    case Kind::Iff: out = (extension(f->kids[0]) ^ extension(f->kids[1])).complement(); break;
    case Kind::Modal: {
      const PointSet a = extension(f->kids[0]);
      for (std::size_t x = 0; x < n; ++x) {
        PointSet s = sm_.select(x, a);
        bool yes = f->op.kind == ModalKind::Effect ? s.contains(x) : !s.empty();
        if (f->op.kind != ModalKind::Effect && f->op.kind != ModalKind::Capable)
          throw InternalError("selection models only interpret E and C");
        if (yes) out.insert(x);
      }
      break;
    }
  }
  return memo_.emplace(f->key, std::move(out)).first->second;
}

namespace {

void subformulas(const Formula& f, std::vector<Formula>& out, std::set<std::string>& seen) {
  if (!seen.insert(f->key).second) return;
  for (const auto& k : f->kids) subformulas(k, out, seen);
  out.push_back(f);
}

}  // namespace

SelectionModel to_selection(const ShallowModel& m, const Formula& query, const Engine& e) {
  const std::size_t n = m.states.size();
  Coalgebra twin = as_coalgebra(m);
  for (std::size_t s = 0; s < n; ++s) {
    CoalgebraState c = twin.states[s];
    for (auto& p : c.points) p += n;
    twin.states.push_back(std::move(c));
  }
  ModelChecker mc(twin, e);
  std::vector<Formula> subs;
  std::set<std::string> seen;
  subformulas(query, subs, seen);

  std::set<PointSet> family{PointSet::full(2 * n)};
  for (const auto& g : subs) {
    const auto& ext = mc.extension(g);
    PointSet s(2 * n);
    for (std::size_t x = 0; x < 2 * n; ++x)
      if (ext[x]) s.insert(x);
    family.insert(s);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<PointSet> v(family.begin(), family.end());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        grew |= family.insert(v[i] & v[j]).second;
  }

  SelectionModel sm;
  sm.table.resize(2 * n);
  for (std::size_t x = 0; x < 2 * n; ++x) {
    const CoalgebraState& st = twin.states[x];
    sm.vars.push_back(st.vars);
    const auto& a = std::get<AgencyStructure>(st.structure);
    for (const auto& set : family) {
      PointSet local(st.points.size());
      for (std::size_t j = 0; j < st.points.size(); ++j)
        if (set.contains(st.points[j])) local.insert(j);
      PointSet chosen(2 * n);
      switch (closure_eval(a, local)) {
        case Three::Top: chosen = set; break;
        case Three::Star: chosen = set; chosen.erase(x); break;
        case Three::Bot: break;
      }
      sm.table[x].emplace(set, chosen);
    }
  }
  return sm;
}

Coalgebra from_selection(const SelectionModel& sm) {
  auto bad = selection_violations(sm);
  if (!bad.empty()) {
    std::string s;
    for (const auto& b : bad) s += (s.empty() ? "" : ", ") + b;
    throw FrameViolation("selection model violates " + s);
  }
  const std::size_t n = sm.size();
  Coalgebra c;
  c.logic = parse_logic("agency");
  for (std::size_t x = 0; x < n; ++x) {
    CoalgebraState st;
    st.vars = sm.vars[x];
    for (std::size_t y = 0; y < n; ++y) st.points.push_back(y);
    st.self_index = x;
    AgencyStructure a;
    for (const auto& [set, chosen] : sm.table[x]) {
      Three v = chosen.contains(x) ? Three::Top : chosen.empty() ? Three::Bot : Three::Star;
      a.entries.emplace_back(set, v);
    }
    std::set<PointSet> closed;
    for (const auto& e : a.entries) closed.insert(e.first);
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<PointSet> v(closed.begin(), closed.end());
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) grew |= closed.insert(v[i] & v[j]).second;
    }
    for (const auto& set : closed) {
      PointSet chosen = sm.select(x, set);
      Three v = chosen.contains(x) ? Three::Top : chosen.empty() ? Three::Bot : Three::Star;
      if (closure_eval(a, set) != v)
        throw FrameViolation("state " + std::to_string(x) +
                             ": derived three-valued map is not closed under intersection");
    }
    st.structure = std::move(a);
    c.states.push_back(std::move(st));
  }
  return c;
}

}  // namespace cosat
