#include "cosat/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <mutex>
#include <tuple>
#include <set>
#include <stdexcept>
#include <string>

#include "cosat/errors.hpp"

namespace cosat {

namespace {

void post_order(const Formula& f, std::vector<Formula>& out, std::map<std::string, std::size_t>& index) {
  if (index.count(f->key)) return;
  for (const auto& k : f->kids) post_order(k, out, index);
  index.emplace(f->key, out.size());
  out.push_back(f);
}

struct Subformulas {
  std::vector<Formula> list;
  std::map<std::string, std::size_t> index;
  explicit Subformulas(const Formula& f) { post_order(f, list, index); }
  std::size_t at(const Formula& g) const { return index.at(g->key); }
};

}  // namespace

// ---------------------------------------------------------------- kripke

bool kripke_holds(const KripkeModel& m, std::size_t x, const Formula& f) {
  switch (f->kind) {
    case Kind::False: return false;
    case Kind::True: return true;
    case Kind::Var: {
      auto it = std::find(m.vars.begin(), m.vars.end(), f->name);
      return it != m.vars.end() && (m.val[x] >> (it - m.vars.begin()) & 1);
    }
    case Kind::Not: return !kripke_holds(m, x, f->kids[0]);
    case Kind::And: return kripke_holds(m, x, f->kids[0]) && kripke_holds(m, x, f->kids[1]);
    case Kind::Or: return kripke_holds(m, x, f->kids[0]) || kripke_holds(m, x, f->kids[1]);
    case Kind::Implies: return !kripke_holds(m, x, f->kids[0]) || kripke_holds(m, x, f->kids[1]);
    case Kind::Iff: return kripke_holds(m, x, f->kids[0]) == kripke_holds(m, x, f->kids[1]);
    case Kind::Modal:
      if (f->op.kind != ModalKind::Box) throw std::invalid_argument("kripke models only interpret boxes");
      for (std::size_t y = 0; y < m.val.size(); ++y)
        if (((m.succ[x] >> y & 1) || (m.reflexive && y == x)) && !kripke_holds(m, y, f->kids[0])) return false;
      return true;
  }
  return false;
}

std::optional<KripkeModel> kripke_brute(const Formula& f, std::size_t n, bool reflexive) {
  if (n > 16) throw std::invalid_argument("kripke_brute handles at most 16 states");
  const Subformulas sf(f);
  KripkeModel m;
  m.vars = variables(f);
  m.reflexive = reflexive;
  const std::size_t nv = m.vars.size();
  if (nv > 8) throw std::invalid_argument("kripke_brute handles at most 8 variables");
  const std::size_t top = sf.at(f);
  std::vector<std::vector<char>> types;
  std::set<std::vector<char>> seen;

  auto type_of = [&](std::uint32_t succ, std::uint32_t val) {
    std::vector<char> t(sf.list.size());
    for (std::size_t i = 0; i < sf.list.size(); ++i) {
      const Formula& g = sf.list[i];
      auto k = [&](int j) { return t[sf.at(g->kids[j])] != 0; };
      switch (g->kind) {
        case Kind::False: t[i] = 0; break;
        case Kind::True: t[i] = 1; break;
        case Kind::Var: {
          auto pos = std::find(m.vars.begin(), m.vars.end(), g->name) - m.vars.begin();
          t[i] = val >> pos & 1;
          break;
        }
        case Kind::Not: t[i] = !k(0); break;
        case Kind::And: t[i] = k(0) && k(1); break;
        case Kind::Or: t[i] = k(0) || k(1); break;
        case Kind::Implies: t[i] = !k(0) || k(1); break;
        case Kind::Iff: t[i] = k(0) == k(1); break;
        case Kind::Modal: {
          if (g->op.kind != ModalKind::Box) throw std::invalid_argument("kripke_brute only handles boxes");
          const std::size_t a = sf.at(g->kids[0]);
          bool all = !reflexive || t[a];
          for (std::size_t y = 0; all && y < types.size(); ++y)
            if ((succ >> y & 1) && !types[y][a]) all = false;
          t[i] = all;
          break;
        }
      }
    }
    return t;
  };

  std::function<bool(std::uint64_t)> grow = [&](std::uint64_t last) -> bool {
    const std::size_t i = types.size();
    if (i == n) return false;
    const std::uint64_t limit = (std::uint64_t{1} << i) << nv;
    for (std::uint64_t code = last + 1; code < limit; ++code) {
      const auto succ = static_cast<std::uint32_t>(code >> nv);
      const auto val = static_cast<std::uint32_t>(code & ((1u << nv) - 1));
      auto t = type_of(succ, val);
      if (!seen.insert(t).second) continue;
      types.push_back(t);
      m.succ.push_back(succ);
      m.val.push_back(val);
      if (t[top]) {
        m.root = i;
        return true;
      }
      if (grow(code)) return true;
      types.pop_back();
      m.succ.pop_back();
      m.val.pop_back();
      seen.erase(t);
    }
    return false;
  };
  // state 0 may take code 0, so start below it
  if (grow(std::numeric_limits<std::uint64_t>::max())) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------- one step

namespace {

std::vector<PointSet> distinct_cells(const OneStepClause& cl) {
  std::vector<PointSet> cells;
  for (const auto& a : cl.atoms)
    if (std::find(cells.begin(), cells.end(), a.args[0]) == cells.end()) cells.push_back(a.args[0]);
  return cells;
}

// Calls f with every vector in [0, hi[0]] x ... x [0, hi[k-1]] until it returns true.
bool odometer(const std::vector<std::uint64_t>& hi, const std::function<bool(const std::vector<std::uint64_t>&)>& f) {
  std::vector<std::uint64_t> v(hi.size(), 0);
  while (true) {
    if (f(v)) return true;
    std::size_t i = 0;
    while (i < v.size() && v[i] == hi[i]) v[i++] = 0;
    if (i == v.size()) return false;
    ++v[i];
  }
}

PointSet from_mask(std::size_t n, std::uint64_t mask) {
  PointSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) s.insert(i);
  return s;
}

// Distributions over n points (plus the state itself) with denominators up
// to q, each in lowest terms exactly once. Shared across calls.
const std::vector<Structure>& prob_grid(std::size_t n, bool self, std::uint32_t max_q) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, bool, std::uint32_t>, std::vector<Structure>> grids;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = grids.try_emplace({n, self, max_q});
  if (!fresh) return it->second;
  const std::size_t parts = n + (self ? 1 : 0);
  std::vector<std::uint32_t> c(parts, 0);
  for (std::uint32_t q = 1; q <= max_q && parts > 0; ++q) {
    std::function<void(std::size_t, std::uint32_t)> go = [&](std::size_t i, std::uint32_t left) {
      if (i + 1 == parts) {
        c[i] = left;
        std::uint32_t g = q;  // non-reduced points were listed at a smaller q
        for (auto v : c) g = std::gcd(g, v);
        if (g > 1) return;
        ProbStructure s;
        for (std::size_t j = 0; j < n; ++j) s.mass.push_back(Rat(c[j], q));
        s.self = self ? Rat(c[n], q) : Rat(0);
        it->second.emplace_back(std::move(s));
        return;
      }
      for (std::uint32_t x = 0; x <= left; ++x) {
        c[i] = x;
        go(i + 1, left - x);
      }
    };
    go(0, q);
  }
  return it->second;
}

// The grid cut down to the structures this logic admits.
const std::vector<Structure>& admitted_grid(const Engine& e, std::size_t n, bool self, std::uint32_t max_q) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, std::size_t, bool, std::uint32_t>, std::vector<Structure>> grids;
  const auto& all = prob_grid(n, self, max_q);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = grids.try_emplace({e.logic().name(), n, self, max_q});
  if (!fresh) return it->second;
  LocalCarrier lc{n, self ? std::optional<std::size_t>(0) : std::nullopt};
  for (const auto& st : all)
    if (e.check_structure(st, lc)) it->second.push_back(st);
  return it->second;
}

}  // namespace

std::optional<OneStepModel> onestep_brute(const Engine& e, const OneStepClause& cl, const Carrier& u,
                                          const OneStepBounds& b) {
  const std::size_t n = u.classes.size();
  if (n > 20) throw std::invalid_argument("onestep_brute handles at most 20 points");
  std::optional<OneStepModel> found;
  const LocalCarrier lc = u.local();
  auto test = [&](const Structure& s) {
    // literals first: most candidates fail one cheaply
    for (const auto& a : cl.atoms)
      if (e.eval_atom(s, a.op(), a.args, lc) != a.positive) return false;
    OneStepModel m{u, s};
    if (!model_check_clause(e, m, cl)) return false;
    found = std::move(m);
    return true;
  };
  const std::uint64_t subsets = (std::uint64_t{1} << n) - 1;

  switch (e.logic().syntax()) {
    case Syntax::Box:
      for (std::uint64_t mask = 0; mask <= subsets; ++mask)
        if (test(KripkeStructure{from_mask(n, mask)})) break;
      break;
    case Syntax::Cond: {
      auto cells = distinct_cells(cl);
      // 0 = no entry, otherwise 1 + subset mask
      odometer(std::vector<std::uint64_t>(cells.size(), subsets + 1), [&](const auto& v) {
        ConditionalStructure s;
        for (std::size_t i = 0; i < cells.size(); ++i)
          if (v[i] > 0) s.entries.emplace_back(cells[i], from_mask(n, v[i] - 1));
        return test(std::move(s));
      });
      break;
    }
    case Syntax::Agency: {
      auto cells = distinct_cells(cl);
      odometer(std::vector<std::uint64_t>(cells.size(), 3), [&](const auto& v) {
        AgencyStructure s;
        for (std::size_t i = 0; i < cells.size(); ++i)
          if (v[i] > 0) s.entries.emplace_back(cells[i], static_cast<Three>(v[i] - 1));
        return test(std::move(s));
      });
      break;
    }
    case Syntax::Count: {
      std::vector<std::uint64_t> hi(n, b.max_weight);
      if (u.designated)
        hi.push_back(e.logic().kind == LogicKind::PresHalf ? std::uint64_t{b.max_weight} * n : b.max_self);
      // one structure, rewritten in place
      Structure st = CountingStructure{std::vector<BigInt>(n), BigInt(0)};
      auto& w = std::get<CountingStructure>(st);
      odometer(hi, [&](const auto& v) {
        for (std::size_t i = 0; i < n; ++i) w.weights[i] = v[i];
        if (u.designated) w.self = v[n];
        return test(st);
      });
      break;
    }
    case Syntax::Prob:
      for (const auto& st : admitted_grid(e, n, u.designated.has_value(), b.max_denominator))
        if (test(st)) break;
      break;
  }
  return found;
}

// ---------------------------------------------------------------- bounded

namespace {

// Masks reachable as unions of the given profiles, ascending.
std::vector<std::uint64_t> unions_of(const std::vector<std::uint64_t>& profiles, std::uint64_t cap) {
  std::set<std::uint64_t> out{0};
  for (auto p : profiles) {
    std::vector<std::uint64_t> now(out.begin(), out.end());
    for (auto m : now) out.insert(m | p);
    if (out.size() > cap) throw ResourceLimit("bounded model search: too many successor choices");
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::optional<BoundedModel> bounded_model_search(const Formula& f, const Engine& e, const SearchBounds& b) {
  const LogicKind kind = e.logic().kind;
  const bool kripke = kind == LogicKind::K || kind == LogicKind::T;
  if (!kripke && kind != LogicKind::CK && kind != LogicKind::CKId)
    throw std::invalid_argument("bounded model search supports k, t, ck and ckid only");
  const bool loop = kind == LogicKind::T;
  const Subformulas sf(f);
  const auto vars = variables(f);
  if (vars.size() > 16) throw ResourceLimit("too many variables");
  const std::size_t top = sf.at(f);
  std::vector<std::size_t> modal;
  for (std::size_t i = 0; i < sf.list.size(); ++i)
    if (sf.list[i]->kind == Kind::Modal) modal.push_back(i);
  if (modal.size() > 30) throw ResourceLimit("too many modal subformulas");

  struct Realized {
    std::vector<char> type;
    std::uint32_t val;
    std::vector<std::size_t> points;  // realized indices
    Structure structure;
  };
  std::vector<Realized> R;
  std::set<std::vector<char>> seen;

  auto evaluate = [&](std::uint32_t val, const std::vector<std::size_t>& pts, const Structure& s) {
    const LocalCarrier lc{pts.size() + (loop ? 1 : 0), loop ? std::optional<std::size_t>(pts.size()) : std::nullopt};
    std::vector<char> t(sf.list.size());
    for (std::size_t i = 0; i < sf.list.size(); ++i) {
      const Formula& g = sf.list[i];
      auto k = [&](int j) { return t[sf.at(g->kids[j])] != 0; };
      switch (g->kind) {
        case Kind::False: t[i] = 0; break;
        case Kind::True: t[i] = 1; break;
        case Kind::Var:
          t[i] = val >> (std::lower_bound(vars.begin(), vars.end(), g->name) - vars.begin()) & 1;
          break;
        case Kind::Not: t[i] = !k(0); break;
        case Kind::And: t[i] = k(0) && k(1); break;
        case Kind::Or: t[i] = k(0) || k(1); break;
        case Kind::Implies: t[i] = !k(0) || k(1); break;
        case Kind::Iff: t[i] = k(0) == k(1); break;
        case Kind::Modal: {
          std::vector<PointSet> args;
          for (const auto& kid : g->kids) {
            const std::size_t a = sf.at(kid);
            PointSet ps(lc.size);
            for (std::size_t j = 0; j < pts.size(); ++j)
              if (R[pts[j]].type[a]) ps.insert(j);
            if (loop && t[a]) ps.insert(pts.size());
            args.push_back(std::move(ps));
          }
          t[i] = e.eval_atom(s, g->op, args, lc);
          break;
        }
      }
    }
    return t;
  };

  auto add = [&](std::uint32_t val, std::vector<std::size_t> pts, Structure s) -> bool {
    const LocalCarrier lc{pts.size() + (loop ? 1 : 0), loop ? std::optional<std::size_t>(pts.size()) : std::nullopt};
    if (!e.check_structure(s, lc)) return false;
    auto t = evaluate(val, pts, s);
    if (!seen.insert(t).second) return false;
    if (R.size() >= b.max_types) throw ResourceLimit("bounded model search: too many state types");
    R.push_back({std::move(t), val, std::move(pts), std::move(s)});
    return R.back().type[top] != 0;
  };

  auto build = [&](std::size_t root) {
    BoundedModel bm;
    bm.model.logic = e.logic();
    bm.root = root;
    for (std::size_t x = 0; x < R.size(); ++x) {
      CoalgebraState st;
      for (std::size_t v = 0; v < vars.size(); ++v)
        if (R[x].val >> v & 1) st.vars.push_back(vars[v]);
      st.points = R[x].points;
      if (loop) {
        st.self_index = st.points.size();
        st.points.push_back(x);
      }
      st.structure = R[x].structure;
      bm.model.states.push_back(std::move(st));
    }
    return bm;
  };

  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t before = R.size();
    // one representative per behaviour towards the modal subformulas
    std::map<std::vector<char>, std::size_t> rep_of;
    for (std::size_t r = 0; r < before; ++r) {
      std::vector<char> prof;
      for (auto i : modal)
        for (const auto& kid : sf.list[i]->kids) prof.push_back(R[r].type[sf.at(kid)]);
      rep_of.emplace(prof, r);
    }
    std::vector<std::size_t> reps;
    for (const auto& [p, r] : rep_of) reps.push_back(r);
    std::sort(reps.begin(), reps.end());

    for (std::uint32_t val = 0; val < (1u << vars.size()); ++val) {
      if (kripke) {
        // a successor matters only through the boxes it falsifies
        std::vector<std::uint64_t> prof(reps.size(), 0);
        for (std::size_t j = 0; j < reps.size(); ++j)
          for (std::size_t m = 0; m < modal.size(); ++m)
            if (!R[reps[j]].type[sf.at(sf.list[modal[m]]->kids[0])]) prof[j] |= std::uint64_t{1} << m;
        for (auto u : unions_of(prof, b.max_choices)) {
          std::vector<std::size_t> pts;
          for (std::size_t j = 0; j < reps.size(); ++j)
            if (prof[j] != 0 && (prof[j] & ~u) == 0) pts.push_back(reps[j]);
          KripkeStructure s{PointSet::full(pts.size() + (loop ? 1 : 0))};
          if (add(val, pts, std::move(s))) return build(R.size() - 1);
        }
      } else {
        // cells: distinct antecedent extensions over the representatives
        const std::size_t n = reps.size();
        std::vector<PointSet> cells;
        std::vector<std::vector<std::size_t>> atoms_of;
        for (auto i : modal) {
          const std::size_t a = sf.at(sf.list[i]->kids[0]);
          PointSet ext(n);
          for (std::size_t j = 0; j < n; ++j)
            if (R[reps[j]].type[a]) ext.insert(j);
          auto it = std::find(cells.begin(), cells.end(), ext);
          if (it == cells.end()) {
            cells.push_back(ext);
            atoms_of.emplace_back();
            it = cells.end() - 1;
          }
          atoms_of[it - cells.begin()].push_back(i);
        }
        // per cell, a value matters only through the consequents it breaks
        std::vector<std::vector<std::uint64_t>> sig(cells.size(), std::vector<std::uint64_t>(n, 0));
        std::vector<std::vector<std::uint64_t>> choices;
        std::uint64_t product = 1;
        for (std::size_t c = 0; c < cells.size(); ++c) {
          for (std::size_t j = 0; j < n; ++j) {
            if (kind == LogicKind::CKId && !cells[c].contains(j)) continue;
            for (std::size_t m = 0; m < atoms_of[c].size(); ++m)
              if (!R[reps[j]].type[sf.at(sf.list[atoms_of[c][m]]->kids[1])]) sig[c][j] |= std::uint64_t{1} << m;
          }
          choices.push_back(unions_of(sig[c], b.max_choices));
          product *= choices.back().size();
          if (product > b.max_choices) throw ResourceLimit("bounded model search: too many structures");
        }
        std::vector<std::uint64_t> hi;
        for (const auto& ch : choices) hi.push_back(ch.size() - 1);
        bool hit = odometer(hi, [&](const auto& v) {
          ConditionalStructure s;
          for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::uint64_t u = choices[c][v[c]];
            PointSet value(n);
            for (std::size_t j = 0; j < n; ++j)
              if (sig[c][j] != 0 && (sig[c][j] & ~u) == 0) value.insert(j);
            s.entries.emplace_back(cells[c], value);
          }
          return add(val, reps, std::move(s));
        });
        if (hit) return build(R.size() - 1);
      }
    }
    grew = R.size() > before;
  }
  return std::nullopt;
}

}  // namespace cosat
