// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "cosat/agency.hpp"
#include "cosat/errors.hpp"
#include "cosat/oracle.hpp"
#include "cosat/solver.hpp"
#include "cosat/suites.hpp"
#include "cosat/witness.hpp"
#include "gen.hpp"

using namespace cosat;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Result {
  bool pass = true;
  std::string detail;
};

void report(int n, const char* title, const Result& r) {
  std::printf("criterion %2d %s: %s  (%s)\n", n, title, r.pass ? "PASS" : "FAIL", r.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

const std::vector<std::string> kLogics = {"k",          "t",    "ck",           "ckid",
                                          "ckmp",       "agency", "presburger", "presburger-t",
                                          "presburger-half", "prob", "prob-stat:1/2"};

// ---------------------------------------------------------------- witnesses

struct Item {
  std::string logic;
  Formula f;
};

struct WitnessCheck {
  std::size_t sat = 0, ok = 0;
  std::string first_failure;
  std::vector<std::pair<ShallowModel, Formula>> agency;  // for the selection round trip
};

const Solver& solver_for(const std::string& logic, StrategyChoice s = StrategyChoice::Default) {
  static std::map<std::pair<std::string, int>, std::unique_ptr<Solver>> cache;
  auto& slot = cache[{logic, static_cast<int>(s)}];
  if (!slot) {
    SolverOptions opt;
    opt.strategy = s;
    slot = std::make_unique<Solver>(parse_logic(logic), opt);
  }
  return *slot;
}

// Solves f and checks any witness; returns the serialized witness or "".
std::string solve_checked(const std::string& logic, const Formula& f, WitnessCheck* wc,
                          StrategyChoice s = StrategyChoice::Default, bool* verdict = nullptr) {
  const Solver& solver = solver_for(logic, s);
  Verdict v = solver.sat(f);
  if (verdict) *verdict = v.sat;
  if (!v.sat) return "";
  std::string json = serialize(*v.model);
  if (wc) {
    ++wc->sat;
    VerifyReport r = verify(*v.model, f, solver.engine(), {solver.effective_strategy() == StrategyChoice::Small});
    bool back = serialize(deserialize(json)) == json;
    if (r.ok() && back && v.stats.max_depth <= rank(f)) {
      ++wc->ok;
    } else if (wc->first_failure.empty()) {
      wc->first_failure = logic + " " + render(f) + (back ? "" : " (json round trip)") + "\n" + r.str();
    }
    if (logic == "agency") wc->agency.emplace_back(*v.model, f);
  }
  return json;
}

// Every formula the witness criteria run over.
std::vector<Item> witness_corpus() {
  std::vector<Item> items;
  for (const auto& c : axiom_suite()) {
    Formula f = parse(c.formula, parse_logic(c.logic));
    bool refute = c.expect == Expect::Valid || c.expect == Expect::Invalid;
    items.push_back({c.logic, refute ? neg(f) : f});
  }
  for (const char* text : {"C p & ~E p", "E p & C q & ~E q", "E (p & C q) & ~C ~p", "~E p & C (p | q) & C q"})
    items.push_back({"agency", parse(text, parse_logic("agency"))});
  for (const auto& id : kLogics) {
    testgen::Shape shape;
    shape.max_rank = 2;
    shape.max_modal = 4;
    testgen::FormulaGen gen(9000 + std::hash<std::string>{}(id) % 1000, parse_logic(id), shape);
    for (int i = 0; i < 60; ++i) items.push_back({id, gen.next()});
  }
  return items;
}

// ---------------------------------------------------------------- 1

Result criterion1(WitnessCheck& wc) {
  auto t0 = Clock::now();
  std::size_t ok = 0;
  std::string bad;
  for (const auto& c : axiom_suite()) {
    Formula f = parse(c.formula, parse_logic(c.logic));
    bool refute = c.expect == Expect::Valid || c.expect == Expect::Invalid;
    bool sat = false;
    solve_checked(c.logic, refute ? neg(f) : f, &wc, StrategyChoice::Default, &sat);
    bool got = refute ? !sat : sat;
    bool want = c.expect == Expect::Valid || c.expect == Expect::Sat;
    if (got == want) ++ok;
    else bad += " " + c.logic + ":" + c.formula;
  }
  double secs = since(t0);
  Result r;
  r.pass = ok == axiom_suite().size() && secs < 10;
  r.detail = fmt("%zu/%zu as expected, %.2f s", ok, axiom_suite().size(), secs) + bad;
  return r;
}

// ---------------------------------------------------------------- 2

std::vector<Item> random_kt() {
  std::vector<Item> items;
  for (const char* id : {"k", "t"}) {
    testgen::Shape shape;  // rank <= 3, <= 6 leaves, <= 5 modal operators
    testgen::FormulaGen gen(std::string(id) == "k" ? 202 : 303, parse_logic(id), shape);
    const int n = std::getenv("COSAT_QUICK") ? 50 : 500;  // quick mode is for development only
    for (int i = 0; i < n; ++i) items.push_back({id, gen.next()});
  }
  return items;
}

Result criterion2(const std::vector<Item>& items, WitnessCheck& wc) {
  auto t0 = Clock::now();
  std::size_t agree = 0, sat = 0;
  std::string bad;
  for (const auto& it : items) {
    bool solver_sat = false;
    solve_checked(it.logic, it.f, &wc, StrategyChoice::Default, &solver_sat);
    auto m = kripke_brute(it.f, 6, it.logic == "t");
    bool brute = m.has_value() && kripke_holds(*m, m->root, it.f);
    if (solver_sat == brute) ++agree;
    else if (bad.size() < 200) bad += " " + it.logic + ":" + render(it.f);
    sat += solver_sat;
  }
  double secs = since(t0);
  Result r;
  r.pass = agree == items.size() && secs < 300;
  r.detail = fmt("%zu/%zu agree, %zu sat, %.1f s", agree, items.size(), sat, secs) + bad;
  return r;
}

// ---------------------------------------------------------------- 3, 5, 8

struct OpSpec {
  Formula proto;  // modal formula; only its operator is used
  int arity;
};

std::vector<OpSpec> menu(Syntax s) {
  Formula a = var("a"), b = var("b");
  auto cnt = [&](std::vector<std::int64_t> c, CountRel rel, std::int64_t bound, std::int64_t mod = 0) {
    std::vector<Formula> args(c.size() == 1 ? std::vector<Formula>{a} : std::vector<Formula>{a, b});
    return OpSpec{count(CountParams{std::move(c), rel, bound, mod}, args), static_cast<int>(args.size())};
  };
  auto lik = [&](std::vector<Rat> c, Rat bound) {
    std::vector<Formula> args(c.size() == 1 ? std::vector<Formula>{a} : std::vector<Formula>{a, b});
    return OpSpec{likelihood(LikelihoodParams{std::move(c), bound}, args), static_cast<int>(args.size())};
  };
  switch (s) {
    case Syntax::Box: return {{box(a), 1}};
    case Syntax::Cond: return {{cond(a, b), 2}};
    case Syntax::Agency: return {{effect(a), 1}, {capable(a), 1}};
    case Syntax::Count:
      return {cnt({1}, CountRel::Gt, 0), cnt({1}, CountRel::Gt, 1), cnt({1}, CountRel::Eq, 1),
              cnt({2}, CountRel::Lt, 3), cnt({1}, CountRel::Mod, 1, 2), cnt({1, -1}, CountRel::Gt, 0),
              cnt({1, 2}, CountRel::Eq, 2)};
    case Syntax::Prob:
      return {lik({Rat(1)}, Rat(1, 2)), lik({Rat(1)}, Rat(1)), lik({Rat(1)}, Rat(1, 3)),
              lik({Rat(1), Rat(-1)}, Rat(0)), lik({Rat(1), Rat(1, 2)}, Rat(3, 4))};
  }
  return {};
}

struct Lit {
  std::size_t op;
  bool sign;
  std::vector<std::uint32_t> masks;
};

std::uint64_t code(const Lit& l, const std::vector<std::uint32_t>& perm) {
  std::uint64_t c = l.op * 2 + l.sign;
  for (auto m : l.masks) c = c * 256 + perm[m];
  return c;
}

std::size_t bound_for(LogicKind k, const OneStepClause& cl) {
  const std::size_t n = cl.atoms.size();
  switch (k) {
    case LogicKind::K: return cl.negatives();
    case LogicKind::T: return cl.negatives() + 1;
    case LogicKind::CK:
    case LogicKind::CKId:
    case LogicKind::CKMp: return n * n + n;
    case LogicKind::Agency: return n * n + n + 2;
    case LogicKind::Prob:
    case LogicKind::ProbStat: return n + 2;
    default: return npos;
  }
}

struct OneStepTally {
  std::size_t clauses = 0, agree = 0, sat = 0;
  std::size_t small_checked = 0, small_violations = 0;
  std::size_t evals = 0, eval_violations = 0;
  std::string first;
};

// Re-evaluates every atom on m and checks the single-pass visit record.
// clause arguments re-indexed onto a sub-carrier returned by the engine
OneStepClause onto(const OneStepClause& cl, const Carrier& from, const Carrier& to) {
  if (from.classes == to.classes) return cl;
  std::vector<std::size_t> map(from.classes.size(), npos);
  for (std::size_t i = 0; i < from.classes.size(); ++i)
    if (auto j = to.index_of(from.classes[i])) map[i] = *j;
  OneStepClause out = cl;
  for (auto& at : out.atoms)
    for (auto& a : at.args) a = remap_set(a, map, to.classes.size());
  return out;
}

void audit_evals(const Engine& e, const OneStepModel& m, const OneStepClause& cl, OneStepTally& t) {
  const Syntax s = e.logic().syntax();
  if (s != Syntax::Count && s != Syntax::Prob) return;
  for (const auto& at : cl.atoms) {
    e.eval_atom(m.structure, at.op(), at.args, m.carrier.local());
    ++t.evals;
    const VisitRecord& rec = last_weight_eval();
    if (rec.visits != m.carrier.classes.size() || rec.carrier != m.carrier.classes.size()) ++t.eval_violations;
  }
}

std::string describe(const OneStepClause& cl, std::size_t n);

void check_clause(const Engine& e, const OneStepClause& cl, const Carrier& u, OneStepTally& t, bool compare) {
  const Capabilities caps = e.caps();
  auto wide = e.sat(cl, u, Strategy::Carrier);
  bool sound = !wide || model_check_clause(e, *wide, onto(cl, u, wide->carrier));
  if (wide) audit_evals(e, *wide, onto(cl, u, wide->carrier), t);
  if (caps.supports_small) {
    auto small = e.sat(cl, u, Strategy::Small);
    ++t.small_checked;
    bool within = !small || small->carrier.classes.size() <= bound_for(e.logic().kind, cl);
    if (small) {
      sound = sound && model_check_clause(e, *small, onto(cl, u, small->carrier));
      audit_evals(e, *small, onto(cl, u, small->carrier), t);
    }
    if (!within || small.has_value() != wide.has_value()) {
      ++t.small_violations;
      if (t.first.empty()) t.first = "small model bound or verdict";
    }
  }
  if (!compare) return;
  ++t.clauses;
  const bool prob = e.logic().syntax() == Syntax::Prob;
  // the probability grid only ever certifies satisfiability, so it has nothing
  // to add once the engine produced a checked model
  std::optional<OneStepModel> brute;
  if (!(prob && wide && sound)) brute = onestep_brute(e, cl, u, OneStepBounds{3, 3, prob ? 6u : 8u});
  if (wide && !brute) {
    // the engine may need weights beyond the default grid: widen it to cover
    // that model and search again
    if (const auto* w = std::get_if<CountingStructure>(&wide->structure)) {
      BigInt top = w->self;
      for (const auto& v : w->weights) top = std::max(top, v);
      if (top > 3 && top <= 8) {
        auto k = static_cast<std::uint32_t>(top);
        brute = onestep_brute(e, cl, u, OneStepBounds{k, k, 8});
      }
    }
  }
  if (brute) audit_evals(e, *brute, cl, t);
  bool ok;
  if (e.logic().syntax() == Syntax::Prob) ok = !brute || wide;  // grid search is incomplete
  else ok = brute.has_value() == wide.has_value();
  ok = ok && sound;
  t.sat += wide.has_value();
  if (ok) ++t.agree;
  else if (t.first.empty()) t.first = describe(cl, u.classes.size()) + fmt(": engine %s, brute %s",
                                          wide ? "sat" : "unsat", brute ? "sat" : "unsat");
}

std::string describe(const OneStepClause& cl, std::size_t n) {
  std::string s = fmt("{%zu points}", n);
  for (const auto& at : cl.atoms) {
    s += at.positive ? " +" : " -";
    s += render(at.atom);
    for (const auto& a : at.args) s += a.str();
  }
  return s;
}

OneStepTally onestep_suite(const std::string& id) {
  auto e = make_engine(parse_logic(id));
  const bool pointed = e->caps().copointed;
  const auto ops = menu(e->logic().syntax());
  OneStepTally t;
  for (std::size_t n = 1; n <= 4; ++n) {
    Carrier u;
    for (std::size_t i = 0; i < n; ++i) u.classes.push_back(i);
    if (pointed) u.designated = 0;
    std::vector<Lit> lits;
    for (std::size_t o = 0; o < ops.size(); ++o) {
      const std::uint32_t sets = 1u << n;
      std::vector<std::uint32_t> m(ops[o].arity, 0);
      std::function<void(int)> fill = [&](int i) {
        if (i == ops[o].arity) {
          for (bool s : {true, false}) lits.push_back({o, s, m});
          return;
        }
        for (std::uint32_t x = 0; x < sets; ++x) {
          m[i] = x;
          fill(i + 1);
        }
      };
      fill(0);
    }
    // point permutations (fixing the designated point)
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<std::uint32_t>> perms;
    do {
      if (pointed && p[0] != 0) continue;
      std::vector<std::uint32_t> pm(1u << n);
      for (std::uint32_t m = 0; m < pm.size(); ++m)
        for (std::size_t i = 0; i < n; ++i)
          if (m >> i & 1) pm[m] |= 1u << p[i];
      perms.push_back(std::move(pm));
    } while (std::next_permutation(p.begin(), p.end()));

    auto canonical = [&](const std::vector<std::size_t>& idx) {
      std::vector<std::uint64_t> base;
      for (auto i : idx) base.push_back(code(lits[i], perms[0]));
      std::sort(base.begin(), base.end());
      for (std::size_t q = 1; q < perms.size(); ++q) {
        std::vector<std::uint64_t> c;
        for (auto i : idx) c.push_back(code(lits[i], perms[q]));
        std::sort(c.begin(), c.end());
        if (c < base) return false;
      }
      return true;
    };
    auto run = [&](const std::vector<std::size_t>& idx) {
      if (!canonical(idx)) return;
      OneStepClause cl;
      for (auto i : idx) {
        ClauseAtom at{ops[lits[i].op].proto, lits[i].sign, {}};
        for (auto m : lits[i].masks) {
          PointSet s(n);
          for (std::size_t j = 0; j < n; ++j)
            if (m >> j & 1) s.insert(j);
          at.args.push_back(std::move(s));
        }
        cl.atoms.push_back(std::move(at));
      }
      try {
        check_clause(*e, cl, u, t, true);
      } catch (const ResourceLimit& ex) {
        ++t.clauses;
        if (t.first.empty()) t.first = describe(cl, n) + ": " + ex.what();
      }
    };
    if (std::getenv("COSAT_VERBOSE")) std::fprintf(stderr, "%s: %zu points, %zu literals\n", id.c_str(), n, lits.size());
    // binary operators join three-atom clauses only on small carriers
    const std::size_t wide3 = e->logic().syntax() == Syntax::Cond ? 3 : 2;
    // menus list unary operators first
    const std::size_t L = lits.size();
    const std::size_t L3 = n > wide3 ? static_cast<std::size_t>(
                                           std::find_if(lits.begin(), lits.end(), [&](const Lit& l) {
                                             return ops[l.op].arity > 1;
                                           }) - lits.begin())
                                     : L;
    auto t1 = Clock::now();
    for (std::size_t i = 0; i < L; ++i) {
      run({i});
      for (std::size_t j = i + 1; j < L; ++j) {
        run({i, j});
        if (j < L3)
          for (std::size_t k = j + 1; k < L3; ++k) run({i, j, k});
      }
    }
    if (std::getenv("COSAT_VERBOSE"))
      std::fprintf(stderr, "  %zu clauses so far, %.1f s\n", t.clauses, since(t1));
  }
  return t;
}

// Random clauses over larger carriers, for the bound and visit audits only.
void random_clauses(const std::string& id, OneStepTally& t) {
  auto e = make_engine(parse_logic(id));
  const auto ops = menu(e->logic().syntax());
  std::mt19937_64 rng(77);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = 5 + pick(4);
    Carrier u;
    for (std::size_t i = 0; i < n; ++i) u.classes.push_back(i);
    if (e->caps().copointed) u.designated = pick(n);
    OneStepClause cl;
    const std::size_t atoms = 1 + pick(5);
    for (std::size_t a = 0; a < atoms; ++a) {
      const OpSpec& op = ops[pick(ops.size())];
      ClauseAtom at{op.proto, pick(2) == 0, {}};
      for (int k = 0; k < op.arity; ++k) {
        PointSet s(n);
        for (std::size_t j = 0; j < n; ++j)
          if (pick(2)) s.insert(j);
        at.args.push_back(std::move(s));
      }
      cl.atoms.push_back(std::move(at));
    }
    try {
      check_clause(*e, cl, u, t, false);
    } catch (const ResourceLimit&) {
    }
  }
}

// ---------------------------------------------------------------- 6

Result criterion6(const std::vector<Item>& kt) {
  auto t0 = Clock::now();
  std::vector<Item> items;
  for (const auto& c : axiom_suite()) {
    Formula f = parse(c.formula, parse_logic(c.logic));
    items.push_back({c.logic, c.expect == Expect::Valid || c.expect == Expect::Invalid ? neg(f) : f});
  }
  items.insert(items.end(), kt.begin(), kt.end());
  std::size_t compared = 0, agree = 0;
  std::string bad;
  for (const auto& it : items) {
    if (!make_engine(parse_logic(it.logic))->caps().supports_small) continue;
    ++compared;
    bool a = solver_for(it.logic, StrategyChoice::Small).sat(it.f).sat;
    bool b = solver_for(it.logic, StrategyChoice::Carrier).sat(it.f).sat;
    if (a == b) ++agree;
    else if (bad.size() < 200) bad += " " + it.logic + ":" + render(it.f);
  }
  Result r;
  r.pass = compared == agree;
  r.detail = fmt("%zu/%zu agree, %.1f s", agree, compared, since(t0)) + bad;
  return r;
}

// ---------------------------------------------------------------- 7

Result criterion7(WitnessCheck& wc) {
  auto t0 = Clock::now();
  std::size_t total = 0, agree = 0, sat = 0;
  std::string bad;
  for (const char* id : {"k", "t", "ckid"}) {
    testgen::Shape shape;
    shape.max_rank = 2;
    testgen::FormulaGen gen(std::hash<std::string>{}(id) % 4096 + 700, parse_logic(id), shape);
    const Solver& solver = solver_for(id);
    for (int i = 0; i < 200; ++i) {
      Formula f = gen.next();
      ++total;
      bool s = false;
      solve_checked(id, f, &wc, StrategyChoice::Default, &s);
      bool b = false;
      try {
        auto bm = bounded_model_search(f, solver.engine());
        if (bm) {
          ModelChecker mc(bm->model, solver.engine());
          b = mc.holds(bm->root, f);
        }
      } catch (const ResourceLimit& ex) {
        if (bad.size() < 200) bad += std::string(" resource limit: ") + ex.what();
        continue;
      }
      sat += s;
      if (s == b) ++agree;
      else if (bad.size() < 200) bad += std::string(" ") + id + ":" + render(f);
    }
  }
  double secs = since(t0);
  Result r;
  r.pass = agree == total && secs < 600;
  r.detail = fmt("%zu/%zu agree, %zu sat, %.1f s", agree, total, sat, secs) + bad;
  return r;
}

// ---------------------------------------------------------------- 9

Result criterion9(const WitnessCheck& wc) {
  const Solver& solver = solver_for("agency");
  std::size_t models = 0, ok = 0;
  std::string bad;
  for (const auto& [m, f] : wc.agency) {
    ++models;
    bool good = true;
    SelectionModel sm = to_selection(m, f, solver.engine());
    good = good && selection_violations(sm).empty();
    SelectionChecker sc(sm);
    good = good && sc.holds(m.root, f);
    try {
      Coalgebra orig = as_coalgebra(m);
      Coalgebra back = from_selection(sm);
      ModelChecker before(orig, solver.engine()), after(back, solver.engine());
      std::function<void(const Formula&)> each = [&](const Formula& g) {
        for (std::size_t s = 0; s < m.states.size(); ++s) {
          bool t = before.holds(s, g);
          good = good && t == after.holds(s, g) && t == sc.holds(s, g) && t == sc.holds(s + m.states.size(), g);
        }
        for (const auto& k : g->kids) each(k);
      };
      each(f);
    } catch (const FrameViolation& e) {
      good = false;
      if (bad.empty()) bad = std::string(" ") + e.what();
    }
    if (good) ++ok;
    else if (bad.size() < 200) bad += " " + render(f);
  }
  Result r;
  r.pass = models > 0 && ok == models;
  r.detail = fmt("%zu/%zu agency witnesses round-trip", ok, models) + bad;
  return r;
}

// ---------------------------------------------------------------- 10

std::vector<std::string> produce(const std::vector<Item>& items) {
  std::vector<std::string> out;
  for (const auto& it : items) out.push_back(solve_checked(it.logic, it.f, nullptr));
  return out;
}

Result criterion10(const std::vector<Item>& items, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  auto t0 = Clock::now();
  for (const char* run : {"run1", "run2"}) {
    fs::remove_all(dir / run);
    fs::create_directories(dir / run);
    auto ws = produce(items);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (ws[i].empty()) continue;
      std::ofstream(dir / run / fmt("w%04zu.json", i), std::ios::binary) << ws[i];
    }
  }
  std::size_t files = 0, same = 0;
  for (const auto& entry : fs::directory_iterator(dir / "run1")) {
    ++files;
    auto other = dir / "run2" / entry.path().filename();
    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(in), {});
    };
    if (fs::exists(other) && slurp(entry.path()) == slurp(other)) ++same;
  }
  std::size_t files2 = std::distance(fs::directory_iterator(dir / "run2"), fs::directory_iterator{});
  Result r;
  r.pass = files > 0 && same == files && files2 == files;
  r.detail = fmt("%zu/%zu witness files identical, %.1f s", same, files, since(t0));
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "acceptance_witnesses";
  std::vector<Result> results;
  WitnessCheck wc;

  auto r1 = criterion1(wc);
  report(1, "axiom validity suites", r1);
  results.push_back(r1);

  auto kt = random_kt();
  auto r2 = criterion2(kt, wc);
  report(2, "kripke oracle equivalence", r2);
  results.push_back(r2);

  Result r3, r5, r8;
  {
    auto t0 = Clock::now();
    std::size_t small_checked = 0, small_bad = 0, evals = 0, eval_bad = 0;
    std::string per;
    for (const auto& id : kLogics) {
      if (const char* only = std::getenv("COSAT_LOGICS"); only && std::string(",") + only + "," != "," &&
          (std::string(",") + only + ",").find("," + id + ",") == std::string::npos)
        continue;
      auto t1 = Clock::now();
      OneStepTally t = onestep_suite(id);
      double secs = since(t1);
      bool ok = t.agree == t.clauses && secs < 300;
      r3.pass = r3.pass && ok;
      per += fmt(" %s %zu/%zu %.0fs;", id.c_str(), t.agree, t.clauses, secs);
      if (!ok && !t.first.empty()) per += " [" + t.first + "]";
      random_clauses(id, t);
      small_checked += t.small_checked;
      small_bad += t.small_violations;
      evals += t.evals;
      eval_bad += t.eval_violations;
    }
    r3.detail = fmt("%.0f s:", since(t0)) + per;
    r5.pass = small_bad == 0 && small_checked > 0;
    r5.detail = fmt("%zu small models checked, %zu violations", small_checked, small_bad);
    r8.pass = eval_bad == 0 && evals > 0;
    r8.detail = fmt("%zu weighted evaluations, %zu not single-pass", evals, eval_bad);
  }
  report(3, "one-step oracle equivalence", r3);
  results.push_back(r3);

  auto corpus = witness_corpus();
  for (const auto& it : corpus) {
    if (std::getenv("COSAT_VERBOSE")) std::fprintf(stderr, "%s: %s\n", it.logic.c_str(), render(it.f).c_str());
    try {
      solve_checked(it.logic, it.f, &wc);
    } catch (const ResourceLimit&) {
    }
  }
  auto r7 = criterion7(wc);

  Result r4;
  r4.pass = wc.sat > 0 && wc.ok == wc.sat;
  r4.detail = fmt("%zu/%zu witnesses verified", wc.ok, wc.sat);
  if (!wc.first_failure.empty()) r4.detail += "; first failure: " + wc.first_failure;
  report(4, "witness integrity", r4);
  results.push_back(r4);

  report(5, "small-model bounds", r5);
  results.push_back(r5);

  auto r6 = criterion6(kt);
  report(6, "cross-strategy agreement", r6);
  results.push_back(r6);

  report(7, "bounded-rank agreement", r7);
  results.push_back(r7);

  report(8, "single-pass evaluation", r8);
  results.push_back(r8);

  auto r9 = criterion9(wc);
  report(9, "selection round trip", r9);
  results.push_back(r9);

  std::vector<Item> all = corpus;
  all.insert(all.end(), kt.begin(), kt.end());
  auto r10 = criterion10(all, dir);
  report(10, "determinism", r10);
  results.push_back(r10);

  bool pass = std::all_of(results.begin(), results.end(), [](const Result& r) { return r.pass; });
  std::printf("acceptance: %s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}
