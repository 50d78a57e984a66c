#ifndef COSAT_CLI_HPP_
#define COSAT_CLI_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace cosat::cli {

// Process exit codes.
enum Exit : int {
  kOk = 0,          // valid / model check holds / all batch lines answered
  kNo = 1,          // invalid / model check fails / selftest mismatch
  kInput = 2,       // usage, formula parse, logic id or witness schema error
  kResource = 3,    // a search bound was hit; no verdict
  kInternal = 4,    // strategies disagree or an internal invariant broke
  kSat = 10,
  kUnsat = 20,
  kVerifyFailed = 30,
};

struct RunEntry {
  std::string formula;
  std::string verdict;       // SAT, UNSAT, VALID, INVALID, or an error tag
  double seconds = 0;
  int rank = 0;
  int depth = 0;             // recursion depth reached
  std::size_t max_carrier = 0;
  std::size_t max_structure = 0;
  std::size_t states = 0;    // witness states, 0 without a witness
  std::string strategy;
  std::string verification;  // "ok", "failed: ...", or "-" when not requested
};

std::string format_entry(const RunEntry& e);

// argv without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cosat::cli

#endif  // COSAT_CLI_HPP_
