// Single-agent agency over the three-valued neighbourhood functor. A
// structure is a partial map f0; the total map is read off through the
// superset-intersection criterion in closure_eval.
#include <algorithm>
#include <map>

#include "engines.hpp"

namespace cosat {

Three closure_eval(const AgencyStructure& s, const PointSet& a) {
  for (Three b : {Three::Top, Three::Star}) {
    PointSet meet = PointSet::full(a.universe());
    bool any = false;
    for (const auto& [set, v] : s.entries) {
      if (v < b || !a.subset_of(set)) continue;
      meet &= set;
      any = true;
    }
    if (any && meet == a) return b;
  }
  return Three::Bot;
}

namespace detail {

namespace {

bool frame_ok(const AgencyStructure& s, const LocalCarrier& c) {
  if (!c.designated) return false;
  const PointSet full = PointSet::full(c.size);
  PointSet meet = full;
  bool any = false;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& [set, v] = s.entries[i];
    if (set.universe() != c.size) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (s.entries[j].first == set) return false;
    if (set == full && v != Three::Bot) return false;                      // E1'
    if (v == Three::Top && !set.contains(*c.designated)) return false;     // E3b'
    if (v > Three::Bot) {
      meet &= set;
      any = true;
    }
  }
  return !any || !meet.empty();                                             // E3a'
}

class AgencyEngine final : public Engine {
 public:
  explicit AgencyEngine(Logic l) : logic_(std::move(l)) {}

  const Logic& logic() const override { return logic_; }
  Capabilities caps() const override { return {true, true, true, true}; }

  bool check_structure(const Structure& s, const LocalCarrier& c) const override {
    return frame_ok(as<AgencyStructure>(s), c);
  }

  bool eval_atom(const Structure& s, const ModalOp& op, const std::vector<PointSet>& args,
                 const LocalCarrier&) const override {
    Three v = closure_eval(as<AgencyStructure>(s), args[0]);
    if (op.kind == ModalKind::Effect) return v == Three::Top;
    if (op.kind == ModalKind::Capable) return v != Three::Bot;
    throw InternalError("agency engine got a foreign operator");
  }

  std::optional<OneStepModel> sat(const OneStepClause& cl, const Carrier& u,
                                  Strategy strategy) const override {
    if (!u.designated) throw InternalError("agency needs a designated point");
    const LocalCarrier lc = u.local();
    struct Cell {
      PointSet set;
      Three lo = Three::Bot, hi = Three::Top;
    };
    std::vector<Cell> cells;
    std::map<PointSet, std::size_t> index;
    for (const auto& at : cl.atoms) {
      auto [it, fresh] = index.emplace(at.args[0], cells.size());
      if (fresh) cells.push_back({at.args[0]});
      Cell& c = cells[it->second];
      bool e = at.op().kind == ModalKind::Effect;
      if (e && at.positive) c.lo = std::max(c.lo, Three::Top);
      if (e && !at.positive) c.hi = std::min(c.hi, Three::Star);
      if (!e && at.positive) c.lo = std::max(c.lo, Three::Star);
      if (!e && !at.positive) c.hi = std::min(c.hi, Three::Bot);
    }
    for (const auto& c : cells)
      if (c.lo > c.hi) return std::nullopt;

    // odometer over cell values, each ascending from its lower bound
    std::vector<Three> v(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) v[i] = cells[i].lo;
    for (;;) {
      AgencyStructure s;
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (v[i] > Three::Bot) s.entries.emplace_back(cells[i].set, v[i]);
      bool ok = frame_ok(s, lc);
      for (std::size_t i = 0; ok && i < cells.size(); ++i)
        if (closure_eval(s, cells[i].set) > cells[i].hi) ok = false;
      if (ok) {
        if (strategy == Strategy::Carrier) return OneStepModel{u, std::move(s)};
        std::vector<PointSet> sets;
        for (const auto& c : cells) sets.push_back(c.set);
        return shrink(u, s, sets, cl.atoms.size());
      }
      std::size_t i = 0;
      while (i < cells.size()) {
        if (v[i] < cells[i].hi) {
          v[i] = static_cast<Three>(static_cast<int>(v[i]) + 1);
          break;
        }
        v[i] = cells[i].lo;
        ++i;
      }
      if (i == cells.size()) return std::nullopt;
    }
  }

  // Keeps the designated point, a point of P\Q for each ordered pair of
  // cells, a point outside each entry, one point per cell showing where its
  // closure stops, and a common point of all entries.
  OneStepModel shrink(const Carrier& u, const AgencyStructure& s, const std::vector<PointSet>& sets,
                      std::size_t atoms) const {
    const std::size_t n = u.classes.size();
    const PointSet full = PointSet::full(n);
    PointSet keep(n);
    keep.insert(*u.designated);
    for (const auto& e : s.entries) {
      PointSet out = full - e.first;
      if (!out.empty()) keep.insert(out.first());
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = 0; j < sets.size(); ++j) {
        if (i == j) continue;
        PointSet d = sets[i] - sets[j];
        if (!d.empty()) keep.insert(d.first());
      }
    }
    PointSet meet = full;
    bool any = false;
    for (const auto& set : sets) {
      Three f = closure_eval(s, set);
      if (f < Three::Top) {
        Three b = static_cast<Three>(static_cast<int>(f) + 1);
        PointSet up = full;
        for (const auto& [other, w] : s.entries)
          if (w >= b && set.subset_of(other)) up &= other;
        PointSet z = up - set;
        if (z.empty() && set == full) continue;  // handled by the points outside entries
        if (z.empty()) throw InternalError("agency closure witness missing");
        keep.insert(z.first());
      }
    }
    for (const auto& e : s.entries) {
      meet &= e.first;
      any = true;
    }
    if (any) keep.insert(meet.first());
    auto r = restrict_carrier(u, keep);
    const std::size_t m = r.carrier.classes.size();
    if (m > small_bound(atoms)) throw InternalError("agency small model exceeds its size bound");
    AgencyStructure out;
    for (const auto& [set, val] : s.entries)
      out.entries.emplace_back(remap_set(set, r.old_to_new, m), val);
    return OneStepModel{r.carrier, std::move(out)};
  }

  std::size_t structure_size(const Structure& s) const override {
    std::size_t k = 0;
    for (const auto& e : as<AgencyStructure>(s).entries) k += 1 + e.first.count();
    return k;
  }

  std::size_t small_bound(std::size_t atoms) const override { return atoms * atoms + atoms + 2; }

  Structure leaf() const override { return AgencyStructure{}; }

  PointSet needed_points(const Structure&, const LocalCarrier& c) const override {
    return PointSet::full(c.size);
  }

  Structure remap(const Structure& s, const std::vector<std::size_t>& map,
                  const LocalCarrier& to) const override {
    AgencyStructure out;
    for (const auto& [set, v] : as<AgencyStructure>(s).entries)
      out.entries.emplace_back(remap_set(set, map, to.size), v);
    return out;
  }

 private:
  Logic logic_;
};

}  // namespace

std::shared_ptr<const Engine> agency_engine(const Logic& l) {
  return std::make_shared<AgencyEngine>(l);
}

}  // namespace detail
}  // namespace cosat
