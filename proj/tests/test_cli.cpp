#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cosat/cli.hpp"
#include "cosat/witness.hpp"

using namespace cosat;
namespace fs = std::filesystem;

namespace {

struct Ran {
  int code;
  std::string out, err;
};

Ran cosat_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / "cosat_cli_tests";
  fs::create_directories(d);
  return d / name;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  os << text;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("cli: documented examples") {
  auto r = cosat_run({"valid", "--logic", "t", "[]p -> p"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "VALID\n");

  r = cosat_run({"valid", "--logic", "agency", "E p -> C p"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "VALID\n");

  auto w = scratch("w.json");
  fs::remove(w);
  r = cosat_run({"solve", "--logic", "presburger", "~(p -> <0>p)", "--model", w.string(), "--verify"});
  CHECK(r.code == cli::kSat);
  CHECK(r.out == "SAT\n");
  REQUIRE(fs::exists(w));
  std::ifstream is(w);
  std::stringstream ss;
  ss << is.rdbuf();
  ShallowModel m = deserialize(ss.str());
  CHECK(m.logic.name() == "presburger");

  r = cosat_run({"check-model", w.string(), "p & ~<0>p"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "HOLDS\n");
  r = cosat_run({"check-model", w.string(), "~p"});
  CHECK(r.code == cli::kNo);
  CHECK(r.out == "FAILS\n");
}

TEST_CASE("cli: verdict exit codes") {
  CHECK(cosat_run({"solve", "--logic", "k", "<>p & []~p"}).code == cli::kUnsat);
  CHECK(cosat_run({"solve", "--logic", "k", "<>p"}).code == cli::kSat);
  CHECK(cosat_run({"valid", "--logic", "k", "[]p -> p"}).code == cli::kNo);
  auto r = cosat_run({"valid", "--logic", "ck", "(p => p)", "--stats", "--verify"});
  CHECK(r.code == cli::kNo);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "INVALID");
  CHECK(ls[1].rfind("# rank=1 depth=", 0) == 0);
  CHECK(ls[1].find("verify=ok") != std::string::npos);
}

TEST_CASE("cli: error exit codes") {
  CHECK(cosat_run({"solve", "--logic", "k", "[]p &"}).code == cli::kInput);
  CHECK(cosat_run({"solve", "--logic", "nope", "p"}).code == cli::kInput);
  CHECK(cosat_run({"solve", "p"}).code == cli::kInput);            // no logic
  CHECK(cosat_run({"frobnicate"}).code == cli::kInput);
  CHECK(cosat_run({}).code == cli::kInput);
  CHECK(cosat_run({"solve", "--logic", "k", "--strategy", "fast", "p"}).code == cli::kInput);
  // no small-model construction for counting
  CHECK(cosat_run({"solve", "--logic", "presburger", "--strategy", "small", "p"}).code == cli::kInput);
  // a weight of 6 is needed, the box allows 1
  auto r = cosat_run({"solve", "--logic", "presburger", "--max-ilp-box", "1", "#{1*(p) > 5}"});
  CHECK(r.code == cli::kResource);
  CHECK(r.err.find("resource limit") != std::string::npos);
  CHECK(cosat_run({"solve", "--logic", "presburger", "#{1*(p) > 5}"}).code == cli::kSat);
  CHECK(cosat_run({"check-model", scratch("missing.json").string(), "p"}).code == cli::kInput);
  auto bad = scratch("bad.json");
  write(bad, R"({"v":1,"logic":"k","root":0,"states":[{"id":0,"vars":[],"children":[],"loop":false,"structure":{"kind":"weird"}}]})");
  CHECK(cosat_run({"check-model", bad.string(), "p"}).code == cli::kInput);
}

TEST_CASE("cli: help is not an error") {
  auto r = cosat_run({"--help"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("solve") != std::string::npos);
}

TEST_CASE("cli: strategies") {
  CHECK(cosat_run({"valid", "--logic", "t", "--strategy", "both", "[]p -> p"}).code == cli::kOk);
  CHECK(cosat_run({"valid", "--logic", "ckid", "--strategy", "carrier", "(p => p)"}).code == cli::kOk);
  auto r = cosat_run({"solve", "--logic", "k", "--strategy", "small", "--stats", "<>p & <>~p"});
  CHECK(r.code == cli::kSat);
  CHECK(r.out.find("strategy=small") != std::string::npos);
}

TEST_CASE("cli: no witness for UNSAT") {
  auto w = scratch("none.json");
  fs::remove(w);
  auto r = cosat_run({"solve", "--logic", "k", "--model", w.string(), "p & ~p"});
  CHECK(r.code == cli::kUnsat);
  CHECK_FALSE(fs::exists(w));
}

TEST_CASE("cli: batch is TAP") {
  auto f = scratch("corpus.txt");
  write(f,
        "# comment line\n"
        "@logic: k\n"
        "[]p -> p\n"
        "\n"
        "<>p & []~p\n"
        "@logic: presburger\n"
        "#{1*(p) > 1} & ~<1>p\n"
        "#{1*(p) > 1\n"
        "@logic: t\n"
        "[]p & ~p\n");
  auto r = cosat_run({"batch", f.string()});
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "1..5");
  CHECK(ls[1] == "ok 1 - SAT");
  CHECK(ls[2] == "ok 2 - UNSAT");
  CHECK(ls[3] == "ok 3 - UNSAT");
  CHECK(ls[4].rfind("not ok 4 - parse error (line 8)", 0) == 0);
  CHECK(ls[5] == "ok 5 - UNSAT");
  CHECK(r.code == cli::kInput);

  auto v = cosat_run({"batch", "--valid", "--logic", "t", f.string(), "--jobs", "3"});
  auto lv = lines(v.out);
  REQUIRE(lv.size() == 6);
  CHECK(lv[1] == "ok 1 - INVALID");  // the header overrides --logic
  CHECK(lv[2] == "ok 2 - INVALID");  // unsatisfiable, so certainly not valid
}

TEST_CASE("cli: batch sharding does not change output") {
  auto f = scratch("shard.txt");
  std::string text = "@logic: t\n";
  const char* fs_[] = {"[]p -> p", "<>p", "[](p & q) -> []p", "<>p & []~p", "[][]p -> []p",
                       "~[]p | p", "[]<>p", "<>(p & ~p)"};
  for (int rep = 0; rep < 4; ++rep)
    for (auto s : fs_) text += std::string(s) + "\n";
  write(f, text);
  auto one = cosat_run({"batch", "--verify", f.string()});
  auto four = cosat_run({"batch", "--verify", "--jobs", "4", f.string()});
  CHECK(one.code == cli::kOk);
  CHECK(one.out == four.out);
  CHECK(lines(one.out).size() == 33);
}

TEST_CASE("cli: selftest") {
  auto r = cosat_run({"selftest"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("not ok") == std::string::npos);
  CHECK(cosat_run({"selftest", "--strategy", "carrier"}).code == cli::kOk);
}
