#include "cosat/witness.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cosat/errors.hpp"
#include "json.hpp"

namespace cosat {

using Json = nlohmann::ordered_json;

LocalCarrier local_carrier(const State& s) {
  LocalCarrier c;
  c.size = s.children.size() + (s.loop ? 1 : 0);
  if (s.loop) c.designated = s.children.size();
  return c;
}

Coalgebra as_coalgebra(const ShallowModel& m) {
  Coalgebra c;
  c.logic = m.logic;
  for (std::size_t id = 0; id < m.states.size(); ++id) {
    const State& s = m.states[id];
    CoalgebraState cs;
    cs.vars = s.vars;
    cs.points = s.children;
    if (s.loop) {
      cs.self_index = cs.points.size();
      cs.points.push_back(id);
    }
    cs.structure = s.structure;
    c.states.push_back(std::move(cs));
  }
  return c;
}

const std::vector<bool>& ModelChecker::extension(const Formula& f) {
  auto it = memo_.find(f->key);
  if (it != memo_.end()) return it->second;
  const std::size_t n = c_.states.size();
  std::vector<bool> out(n, false);
  switch (f->kind) {
    case Kind::False: break;
    case Kind::True: out.assign(n, true); break;
    case Kind::Var:
      for (std::size_t x = 0; x < n; ++x) {
        const auto& v = c_.states[x].vars;
        out[x] = std::binary_search(v.begin(), v.end(), f->name);
      }
      break;
    case Kind::Not: {
      const auto a = extension(f->kids[0]);
      for (std::size_t x = 0; x < n; ++x) out[x] = !a[x];
      break;
    }
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      const auto a = extension(f->kids[0]);
      const auto b = extension(f->kids[1]);
      for (std::size_t x = 0; x < n; ++x) {
        switch (f->kind) {
          case Kind::And: out[x] = a[x] && b[x]; break;
          case Kind::Or: out[x] = a[x] || b[x]; break;
          case Kind::Implies: out[x] = !a[x] || b[x]; break;
          default: out[x] = a[x] == b[x]; break;
        }
      }
      break;
    }
    case Kind::Modal: {
      std::vector<std::vector<bool>> args;
      for (const auto& k : f->kids) args.push_back(extension(k));
      for (std::size_t x = 0; x < n; ++x) {
        const auto& st = c_.states[x];
        LocalCarrier lc{st.points.size(), st.self_index};
        std::vector<PointSet> local;
        for (const auto& a : args) {
          PointSet ps(lc.size);
          for (std::size_t j = 0; j < st.points.size(); ++j)
            if (a[st.points[j]]) ps.insert(j);
          local.push_back(std::move(ps));
        }
        out[x] = e_.eval_atom(st.structure, f->op, local, lc);
      }
      break;
    }
  }
  return memo_.emplace(f->key, std::move(out)).first->second;
}

bool model_check(const ShallowModel& m, std::size_t state, const Formula& f, const Engine& e) {
  if (state >= m.states.size()) throw SchemaError("no such state");
  Coalgebra c = as_coalgebra(m);
  ModelChecker mc(c, e);
  return mc.holds(state, f);
}

std::size_t modal_atom_count(const Formula& f) {
  std::unordered_set<std::string> seen;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g->kind == Kind::Modal) seen.insert(g->key);
    for (const auto& k : g->kids) go(k);
  };
  go(f);
  return seen.size();
}

// ---------------------------------------------------------------- verify

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

std::string VerifyReport::str() const {
  std::string s;
  for (const auto& [name, pass] : checks) s += (pass ? "ok   " : "FAIL ") + name + "\n";
  for (const auto& n : notes) s += "  " + n + "\n";
  return s;
}

namespace {

std::size_t universe_of(const Structure& s) {
  struct V {
    std::size_t operator()(const KripkeStructure& k) const { return k.succ.universe(); }
    std::size_t operator()(const ConditionalStructure& c) const {
      return c.entries.empty() ? npos : c.entries[0].first.universe();
    }
    std::size_t operator()(const AgencyStructure& a) const {
      return a.entries.empty() ? npos : a.entries[0].first.universe();
    }
    std::size_t operator()(const CountingStructure& w) const { return w.weights.size(); }
    std::size_t operator()(const ProbStructure& p) const { return p.mass.size(); }
  };
  return std::visit(V{}, s);
}

bool self_weight_clean(const Structure& s, const LocalCarrier& c) {
  if (!c.designated) return true;
  if (auto w = std::get_if<CountingStructure>(&s)) return w->weights[*c.designated] == 0;
  if (auto p = std::get_if<ProbStructure>(&s)) return p->mass[*c.designated].is_zero();
  return true;
}

}  // namespace

VerifyReport verify(const ShallowModel& m, const Formula& f, const Engine& e, const VerifyOptions& opt) {
  VerifyReport r;
  const std::size_t n = m.states.size();
  auto fail = [&](const std::string& what) { r.notes.push_back(what); };

  bool shape = n > 0 && m.root < n;
  std::vector<std::size_t> parents(n, 0);
  for (std::size_t x = 0; shape && x < n; ++x)
    for (auto c : m.states[x].children) {
      if (c >= n || c == x) {
        shape = false;
        fail("state " + std::to_string(x) + " has a bad child " + std::to_string(c));
      } else {
        ++parents[c];
      }
    }
  std::vector<int> depth(n, -1);
  if (shape) {
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t want = x == m.root ? 0 : 1;
      if (parents[x] != want) {
        shape = false;
        fail("state " + std::to_string(x) + " has " + std::to_string(parents[x]) + " parents");
      }
    }
  }
  if (shape) {
    std::vector<std::size_t> stack{m.root};
    depth[m.root] = 0;
    std::size_t seen = 0;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      ++seen;
      for (auto c : m.states[x].children) {
        depth[c] = depth[x] + 1;
        stack.push_back(c);
      }
    }
    if (seen != n) {
      shape = false;
      fail("states unreachable from the root");
    }
  }
  r.checks.emplace_back("tree after loop removal", shape);

  bool local = true;
  for (std::size_t x = 0; x < n; ++x) {
    auto lc = local_carrier(m.states[x]);
    std::size_t u = universe_of(m.states[x].structure);
    if ((u != npos && u != lc.size) || !self_weight_clean(m.states[x].structure, lc)) {
      local = false;
      fail("state " + std::to_string(x) + " structure does not live over its children");
    }
  }
  r.checks.emplace_back("structure over children", local);

  bool frame = local;
  for (std::size_t x = 0; frame && x < n; ++x) {
    bool ok = false;
    try {
      ok = e.check_structure(m.states[x].structure, local_carrier(m.states[x]));
    } catch (const InternalError&) {
      ok = false;
    }
    if (!ok) {
      frame = false;
      fail("state " + std::to_string(x) + " violates the frame conditions");
    }
  }
  r.checks.emplace_back("frame conditions", frame);

  bool loops = true;
  const bool pointed = e.caps().copointed;
  for (std::size_t x = 0; x < n; ++x) {
    const State& s = m.states[x];
    bool want = pointed || (e.leaf_loops() && s.children.empty());
    if (s.loop != want) {
      loops = false;
      fail("state " + std::to_string(x) + (s.loop ? " has an unexpected loop" : " lacks its loop"));
    }
  }
  r.checks.emplace_back("loop policy", loops);

  bool deep = shape;
  if (shape) {
    int d = *std::max_element(depth.begin(), depth.end());
    if (d > rank(f)) {
      deep = false;
      fail("depth " + std::to_string(d) + " exceeds rank " + std::to_string(rank(f)));
    }
  }
  r.checks.emplace_back("depth within rank", deep);

  if (opt.small) {
    bool small = true;
    std::size_t bound = e.small_bound(modal_atom_count(f));
    for (std::size_t x = 0; x < n; ++x)
      if (bound != npos && m.states[x].children.size() > bound) {
        small = false;
        fail("state " + std::to_string(x) + " branches beyond " + std::to_string(bound));
      }
    r.checks.emplace_back("small-model branching", small);
  }

  bool truth = false;
  if (shape && local) {
    try {
      truth = model_check(m, m.root, f, e);
    } catch (const std::exception& ex) {
      fail(std::string("model check failed: ") + ex.what());
    }
  }
  r.checks.emplace_back("root satisfies formula", truth);
  return r;
}

// ---------------------------------------------------------------- JSON

namespace {

Json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

BigInt big_from(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    Rat r = Rat::parse(j.get<std::string>());
    if (!r.is_integer()) throw SchemaError("weight must be an integer");
    return r.num();
  }
  throw SchemaError("weight must be an integer");
}

Json ids(const PointSet& s, const std::vector<std::size_t>& points) {
  Json a = Json::array();
  for (std::size_t i = 0; i < s.universe(); ++i)
    if (s.contains(i)) a.push_back(points[i]);
  return a;
}

Json structure_json(const Structure& st, const std::vector<std::size_t>& points, std::size_t nchildren) {
  Json j;
  if (auto k = std::get_if<KripkeStructure>(&st)) {
    j["kind"] = "kripke";
    j["succ"] = ids(k->succ, points);
  } else if (auto c = std::get_if<ConditionalStructure>(&st)) {
    j["kind"] = "cond";
    j["entries"] = Json::array();
    for (const auto& [a, v] : c->entries) j["entries"].push_back(Json::array({ids(a, points), ids(v, points)}));
  } else if (auto a = std::get_if<AgencyStructure>(&st)) {
    j["kind"] = "agency";
    j["entries"] = Json::array();
    for (const auto& [s, v] : a->entries) j["entries"].push_back(Json::array({ids(s, points), three_name(v)}));
  } else if (auto w = std::get_if<CountingStructure>(&st)) {
    j["kind"] = "count";
    j["weights"] = Json::array();
    for (std::size_t i = 0; i < nchildren; ++i)
      j["weights"].push_back(Json::array({points[i], big(w->weights[i])}));
    j["self"] = big(w->self);
  } else if (auto p = std::get_if<ProbStructure>(&st)) {
    j["kind"] = "prob";
    j["mass"] = Json::array();
    for (std::size_t i = 0; i < nchildren; ++i)
      j["mass"].push_back(Json::array({points[i], p->mass[i].str()}));
    j["self"] = p->self.str();
  }
  return j;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw SchemaError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::size_t id_of(const Json& j) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw SchemaError("state id must be a natural number");
  return static_cast<std::size_t>(j.get<std::int64_t>());
}

PointSet set_from(const Json& j, const std::unordered_map<std::size_t, std::size_t>& local, std::size_t n) {
  if (!j.is_array()) throw SchemaError("expected an array of state ids");
  PointSet s(n);
  for (const auto& e : j) {
    auto it = local.find(id_of(e));
    if (it == local.end()) throw SchemaError("structure mentions a state outside the local carrier");
    s.insert(it->second);
  }
  return s;
}

Three three_from(const Json& j) {
  if (j == "top") return Three::Top;
  if (j == "star") return Three::Star;
  if (j == "bot") return Three::Bot;
  throw SchemaError("agency value must be top, star or bot");
}

Rat rat_from(const Json& j) {
  if (!j.is_string()) throw SchemaError("mass must be a string p/q");
  try {
    return Rat::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace

std::string serialize(const ShallowModel& m) {
  Json j;
  j["v"] = 1;
  j["logic"] = m.logic.name();
  j["root"] = m.root;
  j["states"] = Json::array();
  for (std::size_t id = 0; id < m.states.size(); ++id) {
    const State& s = m.states[id];
    std::vector<std::size_t> points = s.children;
    if (s.loop) points.push_back(id);
    Json st;
    st["id"] = id;
    st["vars"] = s.vars;
    st["children"] = s.children;
    st["loop"] = s.loop;
    st["structure"] = structure_json(s.structure, points, s.children.size());
    j["states"].push_back(std::move(st));
  }
  return j.dump() + "\n";
}

ShallowModel deserialize(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  try {
    if (field(j, "v") != 1) throw SchemaError("unsupported schema version");
    ShallowModel m;
    try {
      m.logic = parse_logic(field(j, "logic").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
    m.root = id_of(field(j, "root"));
    const Json& states = field(j, "states");
    if (!states.is_array()) throw SchemaError("states must be an array");
    for (std::size_t id = 0; id < states.size(); ++id) {
      const Json& sj = states[id];
      if (id_of(field(sj, "id")) != id) throw SchemaError("state ids must be 0..n-1 in order");
      State s;
      for (const auto& v : field(sj, "vars")) s.vars.push_back(v.get<std::string>());
      if (!std::is_sorted(s.vars.begin(), s.vars.end())) throw SchemaError("vars must be sorted");
      for (const auto& c : field(sj, "children")) s.children.push_back(id_of(c));
      s.loop = field(sj, "loop").get<bool>();
      std::unordered_map<std::size_t, std::size_t> local;
      for (std::size_t i = 0; i < s.children.size(); ++i)
        if (!local.emplace(s.children[i], i).second) throw SchemaError("duplicate child");
      if (s.loop && !local.emplace(id, s.children.size()).second) throw SchemaError("state is its own child");
      const std::size_t n = local.size();
      const Json& st = field(sj, "structure");
      const std::string kind = field(st, "kind").get<std::string>();
      if (kind == "kripke") {
        s.structure = KripkeStructure{set_from(field(st, "succ"), local, n)};
      } else if (kind == "cond") {
        ConditionalStructure c;
        for (const auto& e : field(st, "entries")) {
          if (!e.is_array() || e.size() != 2) throw SchemaError("cond entry must be [ante, value]");
          c.entries.emplace_back(set_from(e[0], local, n), set_from(e[1], local, n));
        }
        s.structure = std::move(c);
      } else if (kind == "agency") {
        AgencyStructure a;
        for (const auto& e : field(st, "entries")) {
          if (!e.is_array() || e.size() != 2) throw SchemaError("agency entry must be [set, value]");
          a.entries.emplace_back(set_from(e[0], local, n), three_from(e[1]));
        }
        s.structure = std::move(a);
      } else if (kind == "count") {
        CountingStructure w;
        w.weights.assign(n, 0);
        for (const auto& e : field(st, "weights")) {
          if (!e.is_array() || e.size() != 2) throw SchemaError("weight entry must be [id, w]");
          auto it = local.find(id_of(e[0]));
          if (it == local.end() || (s.loop && it->second == s.children.size()))
            throw SchemaError("weight on a state that is not a child");
          w.weights[it->second] = big_from(e[1]);
        }
        w.self = big_from(field(st, "self"));
        s.structure = std::move(w);
      } else if (kind == "prob") {
        ProbStructure p;
        p.mass.assign(n, Rat(0));
        for (const auto& e : field(st, "mass")) {
          if (!e.is_array() || e.size() != 2) throw SchemaError("mass entry must be [id, p/q]");
          auto it = local.find(id_of(e[0]));
          if (it == local.end() || (s.loop && it->second == s.children.size()))
            throw SchemaError("mass on a state that is not a child");
          p.mass[it->second] = rat_from(e[1]);
        }
        p.self = rat_from(field(st, "self"));
        s.structure = std::move(p);
      } else {
        throw SchemaError("unknown structure kind '" + kind + "'");
      }
      m.states.push_back(std::move(s));
    }
    if (m.root >= m.states.size()) throw SchemaError("root out of range");
    for (const auto& s : m.states)
      for (auto c : s.children)
        if (c >= m.states.size()) throw SchemaError("child out of range");
    return m;
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("bad witness: ") + e.what());
  }
}

}  // namespace cosat
