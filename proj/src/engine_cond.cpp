// CK, CK+ID, CK+MP over partial maps from antecedent sets to value sets.
#include <map>

#include "engines.hpp"

namespace cosat::detail {

namespace {

class ConditionalEngine final : public Engine {
 public:
  explicit ConditionalEngine(Logic l) : logic_(std::move(l)) {}

  const Logic& logic() const override { return logic_; }
  bool id() const { return logic_.kind == LogicKind::CKId; }
  bool mp() const { return logic_.kind == LogicKind::CKMp; }

  Capabilities caps() const override { return {true, true, mp(), true}; }

  // value of antecedent p, with the default for undefined antecedents
  PointSet value(const ConditionalStructure& s, const PointSet& p, const LocalCarrier& c) const {
    for (const auto& [ante, val] : s.entries)
      if (ante == p) return val;
    PointSet v(c.size);
    if (mp() && c.designated && p.contains(*c.designated)) v.insert(*c.designated);
    return v;
  }

  bool check_structure(const Structure& s, const LocalCarrier& c) const override {
    const auto& cs = as<ConditionalStructure>(s);
    if (mp() && !c.designated) return false;
    for (std::size_t i = 0; i < cs.entries.size(); ++i) {
      const auto& [ante, val] = cs.entries[i];
      if (ante.universe() != c.size || val.universe() != c.size) return false;
      for (std::size_t j = 0; j < i; ++j)
        if (cs.entries[j].first == ante) return false;
      if (id() && !val.subset_of(ante)) return false;
      if (mp() && ante.contains(*c.designated) && !val.contains(*c.designated)) return false;
    }
    return true;
  }

  bool eval_atom(const Structure& s, const ModalOp& op, const std::vector<PointSet>& args,
                 const LocalCarrier& c) const override {
    if (op.kind != ModalKind::Cond) throw InternalError("conditional engine got a foreign operator");
    return value(as<ConditionalStructure>(s), args[0], c).subset_of(args[1]);
  }

  std::optional<OneStepModel> sat(const OneStepClause& cl, const Carrier& u,
                                  Strategy strategy) const override {
    const std::size_t n = u.classes.size();
    if (mp() && !u.designated) throw InternalError("ckmp needs a designated point");
    struct Cell {
      PointSet ante, allow, wit;
    };
    std::vector<Cell> cells;
    std::map<PointSet, std::size_t> index;
    auto cell_of = [&](const PointSet& p) -> Cell& {
      auto [it, fresh] = index.emplace(p, cells.size());
      if (fresh) {
        PointSet allow = id() ? p : PointSet::full(n);
        cells.push_back({p, allow, PointSet(n)});
      }
      return cells[it->second];
    };
    for (const auto& at : cl.atoms)
      if (at.positive) cell_of(at.args[0]).allow &= at.args[1];
    for (const auto& at : cl.atoms) {
      if (at.positive) continue;
      Cell& c = cell_of(at.args[0]);
      PointSet d = c.allow - at.args[1];
      if (d.empty()) return std::nullopt;
      c.wit.insert(d.first());
    }
    if (mp()) {
      const std::size_t x = *u.designated;
      for (auto& c : cells) {
        if (!c.ante.contains(x)) continue;
        if (!c.allow.contains(x)) return std::nullopt;
        c.wit.insert(x);
      }
    }
    if (strategy == Strategy::Carrier) {
      ConditionalStructure s;
      for (const auto& c : cells) s.entries.emplace_back(c.ante, c.allow);
      return OneStepModel{u, std::move(s)};
    }
    // witnesses, one separator per pair of distinct cells, the designated point
    PointSet keep(n);
    for (const auto& c : cells) keep |= c.wit;
    for (std::size_t i = 0; i < cells.size(); ++i)
      for (std::size_t j = i + 1; j < cells.size(); ++j)
        keep.insert((cells[i].ante ^ cells[j].ante).first());
    auto r = restrict_carrier(u, keep);
    const std::size_t m = r.carrier.classes.size();
    if (m > small_bound(cl.atoms.size()))
      throw InternalError("conditional small model exceeds its size bound");
    ConditionalStructure s;
    for (const auto& c : cells)
      s.entries.emplace_back(remap_set(c.ante, r.old_to_new, m), remap_set(c.wit, r.old_to_new, m));
    return OneStepModel{r.carrier, std::move(s)};
  }

  std::size_t structure_size(const Structure& s) const override {
    std::size_t k = 0;
    for (const auto& [a, v] : as<ConditionalStructure>(s).entries) k += 1 + a.count() + v.count();
    return k;
  }

  std::size_t small_bound(std::size_t atoms) const override { return atoms * atoms + atoms; }

  Structure leaf() const override { return ConditionalStructure{}; }

  PointSet needed_points(const Structure&, const LocalCarrier& c) const override {
    return PointSet::full(c.size);
  }

  Structure remap(const Structure& s, const std::vector<std::size_t>& map,
                  const LocalCarrier& to) const override {
    ConditionalStructure out;
    for (const auto& [a, v] : as<ConditionalStructure>(s).entries)
      out.entries.emplace_back(remap_set(a, map, to.size), remap_set(v, map, to.size));
    return out;
  }

 private:
  Logic logic_;
};

}  // namespace

std::shared_ptr<const Engine> conditional_engine(const Logic& l) {
  return std::make_shared<ConditionalEngine>(l);
}

}  // namespace cosat::detail
