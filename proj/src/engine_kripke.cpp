// K and T: the successor set A; []E holds iff A is inside E.
#include "engines.hpp"

namespace cosat::detail {

namespace {

class KripkeEngine final : public Engine {
 public:
  explicit KripkeEngine(Logic l) : logic_(std::move(l)), reflexive_(logic_.kind == LogicKind::T) {}

  const Logic& logic() const override { return logic_; }

  Capabilities caps() const override {
    return {true, true, reflexive_, true};
  }

  bool check_structure(const Structure& s, const LocalCarrier& c) const override {
    const auto& k = as<KripkeStructure>(s);
    if (k.succ.universe() != c.size) return false;
    if (!reflexive_) return true;
    return c.designated && k.succ.contains(*c.designated);
  }

  bool eval_atom(const Structure& s, const ModalOp& op, const std::vector<PointSet>& args,
                 const LocalCarrier&) const override {
    if (op.kind != ModalKind::Box) throw InternalError("kripke engine got a foreign operator");
    return as<KripkeStructure>(s).succ.subset_of(args[0]);
  }

  std::optional<OneStepModel> sat(const OneStepClause& cl, const Carrier& u,
                                  Strategy strategy) const override {
    const std::size_t n = u.classes.size();
    if (reflexive_ && !u.designated) throw InternalError("t needs a designated point");
    PointSet a0 = PointSet::full(n);
    for (const auto& at : cl.atoms)
      if (at.positive) a0 &= at.args[0];
    if (reflexive_ && !a0.contains(*u.designated)) return std::nullopt;
    PointSet wit(n);
    for (const auto& at : cl.atoms) {
      if (at.positive) continue;
      PointSet d = a0 - at.args[0];
      if (d.empty()) return std::nullopt;
      wit.insert(d.first());
    }
    if (strategy == Strategy::Carrier) {
      PointSet succ = a0;
      return OneStepModel{u, KripkeStructure{succ}};
    }
    if (reflexive_) wit.insert(*u.designated);
    auto r = restrict_carrier(u, wit);
    const std::size_t m = r.carrier.classes.size();
    if (m > small_bound(cl.atoms.size()) || m > cl.negatives() + (reflexive_ ? 1 : 0))
      throw InternalError("kripke small model exceeds its size bound");
    return OneStepModel{r.carrier, KripkeStructure{remap_set(wit, r.old_to_new, m)}};
  }

  std::size_t structure_size(const Structure& s) const override {
    return as<KripkeStructure>(s).succ.count();
  }

  std::size_t small_bound(std::size_t atoms) const override { return atoms + (reflexive_ ? 1 : 0); }

  Structure leaf() const override {
    if (!reflexive_) return KripkeStructure{PointSet(0)};
    return KripkeStructure{PointSet::full(1)};
  }

  PointSet needed_points(const Structure& s, const LocalCarrier&) const override {
    return as<KripkeStructure>(s).succ;
  }

  Structure remap(const Structure& s, const std::vector<std::size_t>& map,
                  const LocalCarrier& to) const override {
    return KripkeStructure{remap_set(as<KripkeStructure>(s).succ, map, to.size)};
  }

 private:
  Logic logic_;
  bool reflexive_;
};

}  // namespace

std::shared_ptr<const Engine> kripke_engine(const Logic& l) {
  return std::make_shared<KripkeEngine>(l);
}

}  // namespace cosat::detail
