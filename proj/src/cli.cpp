#include "cosat/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "cosat/errors.hpp"
#include "cosat/formula.hpp"
#include "cosat/logic.hpp"
#include "cosat/solver.hpp"
#include "cosat/suites.hpp"
#include "cosat/witness.hpp"

namespace cosat::cli {

namespace {

struct Flags {
  std::string logic;
  std::string strategy = "default";
  std::string max_box;
  bool stats = false;
  std::string model_path;
  bool verify = false;
  bool validity = false;  // batch: ask validity instead of satisfiability
  int jobs = 1;
};

SolverOptions solver_options(const Flags& fl) {
  SolverOptions o;
  o.strategy = parse_strategy(fl.strategy);
  if (!fl.max_box.empty()) {
    BigInt cap;
    try {
      cap = BigInt(fl.max_box);
    } catch (const std::exception&) {
      throw std::invalid_argument("--max-ilp-box expects a positive integer");
    }
    if (cap < 1) throw std::invalid_argument("--max-ilp-box expects a positive integer");
    o.ilp.value_cap = cap;
  }
  return o;
}

// Failure of a single query mapped to an exit code.
struct Failure {
  int code;
  std::string tag;
  std::string message;
};

Failure classify(std::exception_ptr p) {
  try {
    std::rethrow_exception(p);
  } catch (const ParseError& e) {
    return {kInput, "parse error", e.what()};
  } catch (const SchemaError& e) {
    return {kInput, "schema error", e.what()};
  } catch (const std::invalid_argument& e) {
    return {kInput, "input error", e.what()};
  } catch (const ResourceLimit& e) {
    return {kResource, "resource limit", e.what()};
  } catch (const InternalError& e) {
    return {kInternal, "internal error", e.what()};
  } catch (const std::exception& e) {
    return {kInternal, "internal error", e.what()};
  }
}

// Worst code first: an internal error outranks a failed verification, which
// outranks running out of resources, which outranks bad input.
int worse(int a, int b) {
  auto sev = [](int c) {
    switch (c) {
      case kInternal: return 4;
      case kVerifyFailed: return 3;
      case kResource: return 2;
      case kInput: return 1;
      default: return 0;
    }
  };
  return sev(b) > sev(a) ? b : a;
}

struct Outcome {
  RunEntry entry;
  std::optional<ShallowModel> model;
  bool sat = false;
  bool verified = true;
};

Outcome decide(const Solver& s, const std::string& text, bool validity, bool check) {
  Outcome o;
  o.entry.formula = text;
  Formula f = parse(text, s.logic());
  o.entry.rank = rank(f);
  auto t0 = std::chrono::steady_clock::now();
  Verdict v = validity ? s.refute(f) : s.sat(f);
  o.entry.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.sat = v.sat;
  o.entry.verdict = validity ? (v.sat ? "INVALID" : "VALID") : (v.sat ? "SAT" : "UNSAT");
  o.entry.depth = v.stats.max_depth;
  o.entry.max_carrier = v.stats.max_carrier;
  o.entry.max_structure = v.stats.max_structure;
  o.entry.states = v.model ? v.model->states.size() : 0;
  o.entry.strategy = strategy_name(s.effective_strategy());
  o.entry.verification = "-";
  if (check) {
    std::string why;
    if (o.entry.depth > o.entry.rank) why = "depth exceeds rank";
    if (why.empty() && v.model) {
      VerifyOptions vo;
      vo.small = s.effective_strategy() == StrategyChoice::Small;
      VerifyReport r = verify(*v.model, validity ? neg(f) : f, s.engine(), vo);
      if (!r.ok()) why = r.str();
      else if (deserialize(serialize(*v.model)).states.size() != v.model->states.size())
        why = "witness does not survive serialization";
    }
    o.verified = why.empty();
    o.entry.verification = why.empty() ? "ok" : "failed: " + why;
  }
  o.model = std::move(v.model);
  return o;
}

void write_model(const std::string& path, const ShallowModel& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot write " + path);
  os << serialize(m) << '\n';
  if (!os) throw std::invalid_argument("cannot write " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Logic need_logic(const std::string& id) {
  if (id.empty()) throw std::invalid_argument("--logic is required");
  return parse_logic(id);
}

int cmd_single(const Flags& fl, const std::string& text, bool validity, std::ostream& out,
               std::ostream& err) {
  try {
    Solver s(need_logic(fl.logic), solver_options(fl));
    Outcome o = decide(s, text, validity, fl.verify);
    out << o.entry.verdict << '\n';
    if (fl.stats) out << format_entry(o.entry) << '\n';
    if (!fl.model_path.empty()) {
      if (o.model) write_model(fl.model_path, *o.model);
      else err << "no witness: nothing written to " << fl.model_path << '\n';
    }
    if (!o.verified) {
      err << "verification failed: " << o.entry.verification << '\n';
      return kVerifyFailed;
    }
    if (validity) return o.sat ? kNo : kOk;
    return o.sat ? kSat : kUnsat;
  } catch (...) {
    Failure f = classify(std::current_exception());
    err << f.tag << ": " << f.message << '\n';
    return f.code;
  }
}

struct Item {
  std::string logic;
  std::string text;
  std::size_t line = 0;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// '#' starts a comment line unless it opens a counting term '#{'.
std::vector<Item> read_corpus(const std::string& text, const std::string& logic) {
  std::vector<Item> items;
  std::string cur = logic;
  std::istringstream is(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(is, line)) {
    ++no;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#' && (t.size() == 1 || t[1] != '{')) continue;
    if (t.rfind("@logic:", 0) == 0) {
      cur = trim(t.substr(7));
      continue;
    }
    items.push_back({cur, t, no});
  }
  return items;
}

int cmd_batch(const Flags& fl, const std::string& path, std::ostream& out, std::ostream& err) {
  std::vector<Item> items;
  SolverOptions so;
  try {
    items = read_corpus(read_file(path), fl.logic);
    so = solver_options(fl);
  } catch (...) {
    Failure f = classify(std::current_exception());
    err << f.tag << ": " << f.message << '\n';
    return f.code;
  }
  struct Slot {
    std::optional<Outcome> done;
    std::optional<Failure> failed;
  };
  std::vector<Slot> slots(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::map<std::string, std::unique_ptr<Solver>> solvers;
    for (std::size_t i; (i = next++) < items.size();) {
      try {
        auto& s = solvers[items[i].logic];
        if (!s) s = std::make_unique<Solver>(need_logic(items[i].logic), so);
        slots[i].done = decide(*s, items[i].text, fl.validity, fl.verify);
      } catch (...) {
        slots[i].failed = classify(std::current_exception());
      }
    }
  };
  const int jobs = std::max(1, fl.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  int code = kOk;
  out << "1.." << items.size() << '\n';
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Slot& s = slots[i];
    if (s.failed) {
      out << "not ok " << i + 1 << " - " << s.failed->tag << " (line " << items[i].line
          << "): " << s.failed->message << '\n';
      code = worse(code, s.failed->code);
      continue;
    }
    const Outcome& o = *s.done;
    out << (o.verified ? "ok " : "not ok ") << i + 1 << " - " << o.entry.verdict << '\n';
    if (fl.stats) out << format_entry(o.entry) << '\n';
    if (!o.verified) code = worse(code, kVerifyFailed);
  }
  return code;
}

int cmd_check_model(const std::string& model_path, const std::string& text, std::ostream& out,
                    std::ostream& err) {
  try {
    ShallowModel m = deserialize(read_file(model_path));
    auto e = make_engine(m.logic);
    for (std::size_t i = 0; i < m.states.size(); ++i)
      if (!e->check_structure(m.states[i].structure, local_carrier(m.states[i])))
        throw SchemaError("state " + std::to_string(i) + " violates the frame conditions of " +
                          m.logic.name());
    Formula f = parse(text, m.logic);
    bool holds = model_check(m, m.root, f, *e);
    out << (holds ? "HOLDS" : "FAILS") << '\n';
    return holds ? kOk : kNo;
  } catch (...) {
    Failure f = classify(std::current_exception());
    err << f.tag << ": " << f.message << '\n';
    return f.code;
  }
}

int cmd_selftest(const Flags& fl, std::ostream& out, std::ostream& err) {
  const auto& suite = axiom_suite();
  int code = kOk;
  out << "1.." << suite.size() << '\n';
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const AxiomCase& c = suite[i];
    std::string label = c.logic + " " + c.formula;
    try {
      Solver s(parse_logic(c.logic), solver_options(fl));
      bool validity = c.expect == Expect::Valid || c.expect == Expect::Invalid;
      Outcome o = decide(s, c.formula, validity, true);
      bool want_sat = c.expect == Expect::Invalid || c.expect == Expect::Sat;
      bool ok = o.sat == want_sat && o.verified;
      out << (ok ? "ok " : "not ok ") << i + 1 << " - " << label << ": " << o.entry.verdict << '\n';
      if (fl.stats) out << format_entry(o.entry) << '\n';
      if (!ok) code = worse(code == kOk ? kNo : code, o.verified ? kNo : kVerifyFailed);
    } catch (...) {
      Failure f = classify(std::current_exception());
      out << "not ok " << i + 1 << " - " << label << ": " << f.tag << '\n';
      err << f.tag << ": " << f.message << '\n';
      code = worse(code == kOk ? kNo : code, f.code);
    }
  }
  return code;
}

void solver_flags(CLI::App* sub, Flags& fl, bool with_model) {
  sub->add_option("--logic,-l", fl.logic, "k, t, ck, ckid, ckmp, agency, presburger, presburger-t, "
                                          "presburger-half, prob, prob-stat:<rat>");
  sub->add_option("--strategy", fl.strategy, "small, carrier or both")
      ->check(CLI::IsMember({"default", "small", "carrier", "both"}));
  sub->add_option("--max-ilp-box", fl.max_box, "largest integer the counting engine may assign");
  sub->add_flag("--stats", fl.stats, "print depth, carrier and structure sizes");
  sub->add_flag("--verify", fl.verify, "re-check every witness");
  if (with_model) sub->add_option("--model", fl.model_path, "write the witness JSON here");
}

}  // namespace

std::string format_entry(const RunEntry& e) {
  char time[32];
  std::snprintf(time, sizeof time, "%.6f", e.seconds);
  std::ostringstream os;
  os << "# rank=" << e.rank << " depth=" << e.depth << " carrier=" << e.max_carrier
     << " structure=" << e.max_structure << " states=" << e.states << " strategy=" << e.strategy
     << " time=" << time << "s verify=" << e.verification;
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Satisfiability and validity for coalgebraic modal logics", "cosat"};
  app.require_subcommand(1);
  Flags fl;
  std::string formula, file, model;

  auto* solve = app.add_subcommand("solve", "decide satisfiability (exit 10 SAT, 20 UNSAT)");
  solver_flags(solve, fl, true);
  solve->add_option("formula", formula)->required();

  auto* valid = app.add_subcommand("valid", "decide validity (exit 0 VALID, 1 INVALID)");
  solver_flags(valid, fl, true);
  valid->add_option("formula", formula)->required();

  auto* batch = app.add_subcommand("batch", "one formula per line, TAP output");
  solver_flags(batch, fl, false);
  batch->add_flag("--valid", fl.validity, "decide validity instead of satisfiability");
  batch->add_option("--jobs,-j", fl.jobs, "worker threads")->check(CLI::PositiveNumber);
  batch->add_option("file", file)->required();

  auto* check = app.add_subcommand("check-model", "evaluate a formula at the root of a witness");
  check->add_option("model", model)->required();
  check->add_option("formula", formula)->required();

  auto* self = app.add_subcommand("selftest", "run the built-in axiom suite");
  self->add_option("--strategy", fl.strategy, "small, carrier or both")
      ->check(CLI::IsMember({"default", "small", "carrier", "both"}));
  self->add_flag("--stats", fl.stats, "print per-case statistics");

  std::vector<const char*> argv{"cosat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInput;
  }

  if (solve->parsed()) return cmd_single(fl, formula, false, out, err);
  if (valid->parsed()) return cmd_single(fl, formula, true, out, err);
  if (batch->parsed()) return cmd_batch(fl, file, out, err);
  if (check->parsed()) return cmd_check_model(model, formula, out, err);
  return cmd_selftest(fl, out, err);
}

}  // namespace cosat::cli
