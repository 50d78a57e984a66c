// Presburger/graded modalities over finite multisets; one-step satisfiability
// becomes integer feasibility, one system per branch of the negated atoms.
#include "engine_weights.hpp"

namespace cosat::detail {

namespace {

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  return r < 0 ? BigInt(r + m) : r;
}

class CountingEngine final : public Engine {
 public:
  CountingEngine(Logic l, EngineOptions opt) : logic_(std::move(l)), opt_(std::move(opt)) {}

  const Logic& logic() const override { return logic_; }
  bool reflexive() const { return logic_.kind == LogicKind::PresT; }
  bool half() const { return logic_.kind == LogicKind::PresHalf; }

  Capabilities caps() const override { return {false, true, logic_.copointed(), false}; }

  bool check_structure(const Structure& s, const LocalCarrier& c) const override {
    const auto& w = as<CountingStructure>(s);
    if (w.weights.size() != c.size || w.self < 0) return false;
    BigInt total = 0;
    for (const auto& x : w.weights) {
      if (x < 0) return false;
      total += x;
    }
    if (!c.designated) return w.self == 0 && !logic_.copointed();
    if (reflexive()) return w.self >= 1;
    if (half()) return w.self >= total;
    return false;  // plain counting states carry no loop
  }

  bool eval_atom(const Structure& s, const ModalOp& op, const std::vector<PointSet>& args,
                 const LocalCarrier& c) const override {
    if (op.kind != ModalKind::Count) throw InternalError("counting engine got a foreign operator");
    const auto& w = as<CountingStructure>(s);
    std::vector<BigInt> sums(args.size(), 0);
    auto& rec = weight_record();
    rec.visits = 0;
    rec.carrier = c.size;
    ++rec.calls;
    for (std::size_t i = 0; i < c.size; ++i) {
      ++rec.visits;
      const BigInt& x = w.weights[i];
      for (std::size_t k = 0; k < args.size(); ++k)
        if (args[k].contains(i)) sums[k] += x;
    }
    if (c.designated)
      for (std::size_t k = 0; k < args.size(); ++k)
        if (args[k].contains(*c.designated)) sums[k] += w.self;
    BigInt lhs = 0;
    for (std::size_t k = 0; k < args.size(); ++k) lhs += op.count.coeffs[k] * sums[k];
    switch (op.count.rel) {
      case CountRel::Lt: return lhs < op.count.bound;
      case CountRel::Gt: return lhs > op.count.bound;
      case CountRel::Eq: return lhs == op.count.bound;
      case CountRel::Mod: return mod_floor(lhs - op.count.bound, op.count.modulus) == 0;
    }
    return false;
  }

  std::optional<OneStepModel> sat(const OneStepClause& cl, const Carrier& u,
                                  Strategy strategy) const override {
    if (strategy == Strategy::Small)
      throw std::invalid_argument("counting logics support the carrier strategy only");
    const bool pointed = logic_.copointed();
    if (pointed && !u.designated) throw InternalError("copointed counting needs a designated point");
    const std::size_t n = u.classes.size();
    Columns cols = group_columns(cl, n);
    const std::size_t groups = cols.rep.size();
    std::optional<std::size_t> self_var;
    if (pointed) self_var = groups;
    const std::size_t vars = groups + (pointed ? 1 : 0);

    // alternatives per atom; negated = and congruences split
    std::vector<std::vector<LinConstraint>> alts;
    for (const auto& at : cl.atoms) {
      const auto& p = at.op().count;
      LinConstraint base;
      base.coeffs = linear_form(p.coeffs, at.args, cols, u.designated, self_var);
      base.rhs = Rat(p.bound);
      std::vector<LinConstraint> opts;
      auto with = [&](Rel r, std::int64_t rhs, std::int64_t mod = 0) {
        LinConstraint c = base;
        c.rel = r;
        c.rhs = Rat(rhs);
        c.modulus = mod;
        opts.push_back(std::move(c));
      };
      switch (p.rel) {
        case CountRel::Lt:
          with(at.positive ? Rel::Lt : Rel::Ge, p.bound);
          break;
        case CountRel::Gt:
          with(at.positive ? Rel::Gt : Rel::Le, p.bound);
          break;
        case CountRel::Eq:
          if (at.positive) {
            with(Rel::Eq, p.bound);
          } else {
            with(Rel::Lt, p.bound);
            with(Rel::Gt, p.bound);
          }
          break;
        case CountRel::Mod:
          if (at.positive) {
            with(Rel::Mod, p.bound, p.modulus);
          } else {
            for (std::int64_t r = 0; r < p.modulus; ++r)
              if (r != p.bound) with(Rel::Mod, r, p.modulus);
          }
          break;
      }
      if (opts.empty()) return std::nullopt;  // negated congruence mod 1
      alts.push_back(std::move(opts));
    }

    LinSystem base{vars, {}, Domain::NonnegInteger};
    if (reflexive()) {
      LinConstraint c;
      c.coeffs[*self_var] = Rat(1);
      c.rel = Rel::Ge;
      c.rhs = Rat(1);
      base.constraints.push_back(c);
    }
    if (half()) {
      LinConstraint c;
      c.coeffs[*self_var] = Rat(1);
      for (std::size_t g = 0; g < groups; ++g) c.coeffs[g] = Rat(-1);
      c.rel = Rel::Ge;
      c.rhs = Rat(0);
      base.constraints.push_back(c);
    }

    std::vector<std::size_t> pick(alts.size(), 0);
    for (;;) {
      LinSystem sys = base;
      for (std::size_t a = 0; a < alts.size(); ++a) sys.constraints.push_back(alts[a][pick[a]]);
      IlpStats st;
      if (auto x = ilp_feasible(sys, opt_.ilp, &st)) {
        CountingStructure s;
        s.weights.assign(n, 0);
        for (std::size_t g = 0; g < groups; ++g) s.weights[cols.rep[g]] = (*x)[g];
        if (pointed) s.self = (*x)[*self_var];
        for (const auto& v : *x)
          if (bit_length(v) > bit_length(st.box)) throw InternalError("counting weight exceeds size bound");
        return OneStepModel{u, std::move(s)};
      }
      std::size_t a = alts.size();
      while (a-- > 0) {
        if (++pick[a] < alts[a].size()) break;
        pick[a] = 0;
      }
      if (a == npos) return std::nullopt;
    }
  }

  std::size_t structure_size(const Structure& s) const override {
    const auto& w = as<CountingStructure>(s);
    std::size_t k = bit_length(w.self);
    for (const auto& x : w.weights) k += bit_length(x);
    return k;
  }

  std::size_t small_bound(std::size_t) const override { return npos; }

  Structure leaf() const override {
    CountingStructure s;
    if (logic_.copointed()) s.weights.assign(1, 0);
    s.self = reflexive() ? 1 : 0;
    return s;
  }

  PointSet needed_points(const Structure& s, const LocalCarrier& c) const override {
    const auto& w = as<CountingStructure>(s);
    PointSet out(c.size);
    for (std::size_t i = 0; i < c.size; ++i) if (w.weights[i] > 0) out.insert(i);
    return out;
  }

  Structure remap(const Structure& s, const std::vector<std::size_t>& map,
                  const LocalCarrier& to) const override {
    const auto& w = as<CountingStructure>(s);
    CountingStructure out;
    out.weights.assign(to.size, 0);
    for (std::size_t i = 0; i < w.weights.size(); ++i)
      if (map[i] != npos) out.weights[map[i]] += w.weights[i];
    out.self = w.self;
    return out;
  }

 private:
  Logic logic_;
  EngineOptions opt_;
};

}  // namespace

std::shared_ptr<const Engine> counting_engine(const Logic& l, const EngineOptions& opt) {
  return std::make_shared<CountingEngine>(l, opt);
}

}  // namespace cosat::detail
