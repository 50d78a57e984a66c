#include "cosat/solver.hpp"

#include <functional>
#include <stdexcept>

#include "cosat/errors.hpp"

namespace cosat {

StrategyChoice parse_strategy(const std::string& s) {
  if (s == "default") return StrategyChoice::Default;
  if (s == "small") return StrategyChoice::Small;
  if (s == "carrier") return StrategyChoice::Carrier;
  if (s == "both") return StrategyChoice::Both;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

std::string strategy_name(StrategyChoice s) {
  switch (s) {
    case StrategyChoice::Default: return "default";
    case StrategyChoice::Small: return "small";
    case StrategyChoice::Carrier: return "carrier";
    case StrategyChoice::Both: return "both";
  }
  return "?";
}

Solver::Solver(const Logic& logic, SolverOptions opt)
    : logic_(logic), opt_(opt), engine_(make_engine(logic, EngineOptions{opt.ilp})) {
  const Capabilities caps = engine_->caps();
  strat_ = opt_.strategy;
  if (strat_ == StrategyChoice::Default)
    strat_ = caps.supports_small ? StrategyChoice::Small : StrategyChoice::Carrier;
  if (strat_ == StrategyChoice::Small && !caps.supports_small)
    throw std::invalid_argument("logic " + logic.name() + " has no small-model strategy");
  if (strat_ == StrategyChoice::Both && !caps.supports_small) strat_ = StrategyChoice::Carrier;
}

namespace {

using Tree = std::shared_ptr<const ShallowModel>;  // nullptr: unsatisfiable

class Query {
 public:
  Query(const Solver& s, int root_rank) : s_(s), e_(s.engine()), caps_(e_.caps()), root_rank_(root_rank) {}

  Tree solve(const Formula& f, int depth) {
    ++stats.sat_calls;
    if (depth > stats.max_depth) stats.max_depth = depth;
    if (depth + rank(f) > root_rank_) throw InternalError("recursion deeper than the formula's rank");
    if (s_.options().cache) {
      auto it = cache_.find(f->key);
      if (it != cache_.end()) {
        ++stats.cache_hits;
        return it->second;
      }
    }
    Tree t = rank(f) == 0 ? propositional(f) : modal(f, depth);
    if (s_.options().cache) cache_.emplace(f->key, t);
    return t;
  }

  SolveStats stats;

 private:
  Tree leaf(std::vector<std::string> vars) const {
    auto m = std::make_shared<ShallowModel>();
    m->logic = s_.logic();
    State st;
    st.vars = std::move(vars);
    st.loop = e_.leaf_loops();
    st.structure = e_.leaf();
    m->states.push_back(std::move(st));
    return m;
  }

  Tree propositional(const Formula& f) {
    const auto vars = variables(f);
    std::unordered_map<std::string, bool> partial;
    std::function<Tree(std::size_t)> go = [&](std::size_t i) -> Tree {
      auto v = skeleton_eval3(f, partial);
      if (v && !*v) return nullptr;
      if (i == vars.size()) {
        std::vector<std::string> on;
        for (const auto& x : vars)
          if (partial.at(x)) on.push_back(x);
        return leaf(std::move(on));
      }
      for (bool sign : {true, false}) {
        partial[vars[i]] = sign;
        if (Tree t = go(i + 1)) return t;
      }
      partial.erase(vars[i]);
      return nullptr;
    };
    return go(0);
  }

  // Per-formula state shared by all its sign maps.
  struct Frame {
    Formula f;
    Analysis an;
    int depth = 0;
    bool have_u = false;
    Carrier u;  // designated unset; filled per sign map
    std::vector<std::vector<PointSet>> args;  // per atom (modal atoms only)
  };

  void admissible(Frame& fr) {
    const std::size_t L = fr.an.alphabet.size();
    if (L > s_.options().max_alphabet)
      throw ResourceLimit("alphabet of " + std::to_string(L) + " letters is too large");
    for (PointClass b = 0; b < (PointClass{1} << L); ++b)
      if (solve(class_theory(fr.an, b), fr.depth + 1)) fr.u.classes.push_back(b);
    fr.args.assign(fr.an.atoms.size(), {});
    for (std::size_t i = 0; i < fr.an.atoms.size(); ++i) {
      const Formula& a = fr.an.atoms[i];
      if (a->kind != Kind::Modal) continue;
      for (const auto& k : a->kids) fr.args[i].push_back(extension(k, fr.an, fr.u));
    }
    fr.have_u = true;
  }

  std::optional<OneStepModel> one_step(const OneStepClause& cl, const Carrier& u) {
    ++stats.engine_calls;
    switch (s_.effective_strategy()) {
      case StrategyChoice::Small: return e_.sat(cl, u, Strategy::Small);
      case StrategyChoice::Carrier: return e_.sat(cl, u, Strategy::Carrier);
      case StrategyChoice::Both: {
        auto small = e_.sat(cl, u, Strategy::Small);
        auto wide = e_.sat(cl, u, Strategy::Carrier);
        if (small.has_value() != wide.has_value())
          throw InternalError("small and carrier strategies disagree on a one-step clause");
        return small;
      }
      case StrategyChoice::Default: break;
    }
    throw InternalError("unresolved strategy");
  }

  Tree try_signs(Frame& fr, const std::vector<bool>& signs) {
    ++stats.sign_maps;
    if (!fr.have_u) admissible(fr);
    const Analysis& an = fr.an;
    Carrier u = fr.u;
    if (caps_.copointed) {
      PointClass theta = 0;
      for (std::size_t j = 0; j < an.alphabet.size(); ++j)
        if (signs[an.atom_index.at(an.alphabet[j]->key)]) theta |= PointClass{1} << j;
      u.designated = u.index_of(theta);
      if (!u.designated) return nullptr;
    }
    OneStepClause cl;
    for (std::size_t i = 0; i < an.atoms.size(); ++i)
      if (an.atoms[i]->kind == Kind::Modal) cl.atoms.push_back({an.atoms[i], signs[i], fr.args[i]});
    auto om = one_step(cl, u);
    if (!om) return nullptr;
    return assemble(fr, signs, *om);
  }

  Tree assemble(const Frame& fr, const std::vector<bool>& signs, const OneStepModel& om) {
    const Carrier& c = om.carrier;
    const LocalCarrier lc = c.local();
    stats.max_carrier = std::max(stats.max_carrier, c.classes.size());
    stats.max_structure = std::max(stats.max_structure, e_.structure_size(om.structure));
    const PointSet needed = e_.needed_points(om.structure, lc);

    auto m = std::make_shared<ShallowModel>();
    m->logic = s_.logic();
    State root;
    for (std::size_t i = 0; i < fr.an.atoms.size(); ++i)
      if (fr.an.atoms[i]->kind == Kind::Var && signs[i]) root.vars.push_back(fr.an.atoms[i]->name);
    std::sort(root.vars.begin(), root.vars.end());
    root.loop = caps_.copointed;
    m->states.push_back(std::move(root));

    std::vector<std::size_t> map(lc.size, npos);
    std::vector<std::size_t> children;
    for (std::size_t i = 0; i < lc.size; ++i) {
      if (caps_.class_point_is_self && lc.designated && i == *lc.designated) continue;
      if (!needed.contains(i)) continue;
      Tree sub = solve(class_theory(fr.an, c.classes[i]), fr.depth + 1);
      if (!sub) throw InternalError("carrier class without a witness");
      map[i] = children.size();
      children.push_back(append(*m, *sub));
    }
    LocalCarrier to{children.size() + (caps_.copointed ? 1 : 0), std::nullopt};
    if (caps_.copointed) to.designated = children.size();
    if (caps_.class_point_is_self && lc.designated) map[*lc.designated] = *to.designated;
    m->states[0].children = children;
    m->states[0].structure = e_.remap(om.structure, map, to);
    return m;
  }

  std::size_t append(ShallowModel& out, const ShallowModel& sub) {
    const std::size_t offset = out.states.size();
    if (offset + sub.states.size() > s_.options().max_states)
      throw ResourceLimit("witness exceeds " + std::to_string(s_.options().max_states) + " states");
    for (const auto& st : sub.states) {
      State copy = st;
      for (auto& ch : copy.children) ch += offset;
      out.states.push_back(std::move(copy));
    }
    return offset + sub.root;
  }

  Tree modal(const Formula& f, int depth) {
    Frame fr{f, analyze(f), depth, false, {}, {}};
    const auto& atoms = fr.an.atoms;
    std::unordered_map<std::string, bool> partial;
    std::vector<bool> signs(atoms.size());
    std::function<Tree(std::size_t)> go = [&](std::size_t i) -> Tree {
      if (i == atoms.size()) return try_signs(fr, signs);
      for (bool sign : {true, false}) {
        partial[atoms[i]->key] = sign;
        signs[i] = sign;
        auto v = skeleton_eval3(f, partial);
        if (v && !*v) continue;
        if (Tree t = go(i + 1)) return t;
      }
      partial.erase(atoms[i]->key);
      return nullptr;
    };
    return go(0);
  }

  const Solver& s_;
  const Engine& e_;
  const Capabilities caps_;
  const int root_rank_;
  std::unordered_map<std::string, Tree> cache_;
};

}  // namespace

Verdict Solver::sat(const Formula& f) const {
  Query q(*this, rank(f));
  Tree t = q.solve(f, 0);
  Verdict v;
  v.sat = t != nullptr;
  if (t) v.model = *t;
  v.stats = q.stats;
  v.stats.states = t ? t->states.size() : 0;
  return v;
}

Verdict Solver::refute(const Formula& f) const { return sat(neg(f)); }

}  // namespace cosat
