// Probability: finitely supported distributions, sum a_i l(A_i) >= b atoms,
// optional stationary mass on the current state. One LP per clause.
#include "engine_weights.hpp"

namespace cosat::detail {

namespace {

class ProbEngine final : public Engine {
 public:
  explicit ProbEngine(Logic l) : logic_(std::move(l)) {}

  const Logic& logic() const override { return logic_; }
  bool stationary() const { return logic_.kind == LogicKind::ProbStat; }

  Capabilities caps() const override { return {true, true, stationary(), false}; }

  bool check_structure(const Structure& s, const LocalCarrier& c) const override {
    const auto& p = as<ProbStructure>(s);
    if (p.mass.size() != c.size || p.self.sign() < 0) return false;
    Rat total = p.self;
    for (const auto& x : p.mass) {
      if (x.sign() < 0) return false;
      total += x;
    }
    if (total != Rat(1)) return false;
    if (!c.designated) return p.self.is_zero() && !stationary();
    if (stationary()) return p.self >= logic_.rho;
    return true;
  }

  bool eval_atom(const Structure& s, const ModalOp& op, const std::vector<PointSet>& args,
                 const LocalCarrier& c) const override {
    if (op.kind != ModalKind::Likelihood) throw InternalError("probability engine got a foreign operator");
    const auto& p = as<ProbStructure>(s);
    std::vector<Rat> sums(args.size());
    auto& rec = weight_record();
    rec.visits = 0;
    rec.carrier = c.size;
    ++rec.calls;
    for (std::size_t i = 0; i < c.size; ++i) {
      ++rec.visits;
      const Rat& x = p.mass[i];
      for (std::size_t k = 0; k < args.size(); ++k)
        if (args[k].contains(i)) sums[k] += x;
    }
    if (c.designated)
      for (std::size_t k = 0; k < args.size(); ++k)
        if (args[k].contains(*c.designated)) sums[k] += p.self;
    Rat lhs(0);
    for (std::size_t k = 0; k < args.size(); ++k) lhs += op.lik.coeffs[k] * sums[k];
    return lhs >= op.lik.bound;
  }

  std::optional<OneStepModel> sat(const OneStepClause& cl, const Carrier& u,
                                  Strategy strategy) const override {
    if (stationary() && !u.designated) throw InternalError("prob-stat needs a designated point");
    const std::size_t n = u.classes.size();
    Columns cols = group_columns(cl, n);
    const std::size_t groups = cols.rep.size();
    std::optional<std::size_t> self_var;
    if (stationary()) self_var = groups;
    LinSystem sys{groups + (stationary() ? 1 : 0), {}, Domain::NonnegRational};
    LinConstraint total;
    for (std::size_t v = 0; v < sys.vars; ++v) total.coeffs[v] = Rat(1);
    total.rel = Rel::Eq;
    total.rhs = Rat(1);
    sys.constraints.push_back(total);
    for (const auto& at : cl.atoms) {
      LinConstraint c;
      c.coeffs = linear_form(at.op().lik.coeffs, at.args, cols, u.designated, self_var);
      c.rel = at.positive ? Rel::Ge : Rel::Lt;
      c.rhs = at.op().lik.bound;
      sys.constraints.push_back(std::move(c));
    }
    if (stationary()) {
      LinConstraint c;
      c.coeffs[*self_var] = Rat(1);
      c.rel = Rel::Ge;
      c.rhs = logic_.rho;
      sys.constraints.push_back(std::move(c));
    }
    auto x = lp_feasible(sys);
    if (!x) return std::nullopt;
    if (strategy == Strategy::Small) {
      *x = minimize_support(sys, *x);
      if (support_size(*x) > small_bound(cl.atoms.size()))
        throw InternalError("probability support exceeds its size bound");
    }
    ProbStructure s;
    s.mass.assign(n, Rat(0));
    for (std::size_t g = 0; g < groups; ++g) s.mass[cols.rep[g]] = (*x)[g];
    if (stationary()) s.self = (*x)[*self_var];
    if (strategy == Strategy::Carrier) return OneStepModel{u, std::move(s)};
    PointSet keep(n);
    for (std::size_t i = 0; i < n; ++i) if (!s.mass[i].is_zero()) keep.insert(i);
    auto r = restrict_carrier(u, keep);
    ProbStructure t;
    t.mass.assign(r.carrier.classes.size(), Rat(0));
    for (std::size_t i = 0; i < n; ++i)
      if (r.old_to_new[i] != npos) t.mass[r.old_to_new[i]] = s.mass[i];
    t.self = s.self;
    return OneStepModel{r.carrier, std::move(t)};
  }

  std::size_t structure_size(const Structure& s) const override {
    const auto& p = as<ProbStructure>(s);
    std::size_t k = bit_length(p.self.num()) + bit_length(p.self.den());
    for (const auto& x : p.mass) k += bit_length(x.num()) + bit_length(x.den());
    return k;
  }

  // normalisation and the stationary constraint on top of one row per atom
  std::size_t small_bound(std::size_t atoms) const override { return atoms + 2; }

  Structure leaf() const override {
    ProbStructure s;
    s.mass.assign(1, Rat(0));
    s.self = Rat(1);
    return s;
  }

  bool leaf_loops() const override { return true; }

  PointSet needed_points(const Structure& s, const LocalCarrier& c) const override {
    const auto& p = as<ProbStructure>(s);
    PointSet out(c.size);
    for (std::size_t i = 0; i < c.size; ++i) if (!p.mass[i].is_zero()) out.insert(i);
    return out;
  }

  Structure remap(const Structure& s, const std::vector<std::size_t>& map,
                  const LocalCarrier& to) const override {
    const auto& p = as<ProbStructure>(s);
    ProbStructure out;
    out.mass.assign(to.size, Rat(0));
    for (std::size_t i = 0; i < p.mass.size(); ++i)
      if (map[i] != npos) out.mass[map[i]] += p.mass[i];
    out.self = p.self;
    return out;
  }

 private:
  Logic logic_;
};

}  // namespace

std::shared_ptr<const Engine> prob_engine(const Logic& l) { return std::make_shared<ProbEngine>(l); }

}  // namespace cosat::detail
