#ifndef COSAT_FORMULA_HPP_
#define COSAT_FORMULA_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cosat/logic.hpp"
#include "cosat/rat.hpp"

namespace cosat {

enum class Kind { False, True, Var, Not, And, Or, Implies, Iff, Modal };
enum class ModalKind { Box, Cond, Effect, Capable, Count, Likelihood };
enum class CountRel { Lt, Gt, Eq, Mod };

// sum coeffs[i] * #(args[i])  rel  bound.  For Mod, bound is the residue.
struct CountParams {
  std::vector<std::int64_t> coeffs;
  CountRel rel = CountRel::Gt;
  std::int64_t bound = 0;
  std::int64_t modulus = 0;  // Mod only
  friend bool operator==(const CountParams&, const CountParams&) = default;
};

// sum coeffs[i] * l(args[i]) >= bound
struct LikelihoodParams {
  std::vector<Rat> coeffs;
  Rat bound;
  friend bool operator==(const LikelihoodParams&, const LikelihoodParams&) = default;
};

struct ModalOp {
  ModalKind kind = ModalKind::Box;
  CountParams count;
  LikelihoodParams lik;
  std::size_t arity() const;
  friend bool operator==(const ModalOp&, const ModalOp&) = default;
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::string name;              // Var
  ModalOp op;                    // Modal
  std::vector<Formula> kids;     // Not: 1, binary: 2, Modal: arity
  std::string key;               // canonical rendering
  int rank = 0;
  int level = 5;                 // binding strength for printing
};

Formula f_false();
Formula f_true();
Formula var(std::string name);
Formula neg(Formula a);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula modal(ModalOp op, std::vector<Formula> args);
Formula box(Formula a);
Formula diamond(Formula a);  // ~[]~a
Formula cond(Formula a, Formula b);
Formula effect(Formula a);
Formula capable(Formula a);
Formula count(CountParams p, std::vector<Formula> args);
Formula likelihood(LikelihoodParams p, std::vector<Formula> args);
Formula conj_all(const std::vector<Formula>& fs);  // true for empty

Formula parse(std::string_view text, const Logic& logic);
const std::string& render(const Formula& f);
int rank(const Formula& f);
std::size_t size(const Formula& f);
// Compares the trees node by node, not the cached keys.
bool structural_equal(const Formula& a, const Formula& b);
bool is_atom(const Formula& f);  // Var or Modal

struct Analysis {
  std::vector<Formula> atoms;       // pre-order, deduplicated
  std::vector<Formula> alphabet;    // atoms under some modal operator
  std::unordered_map<std::string, std::size_t> letter;  // key -> alphabet index
  std::unordered_map<std::string, std::size_t> atom_index;

  const Formula& sigma(std::size_t i) const { return alphabet[i]; }
};

Analysis analyze(const Formula& f);

using SignMap = std::map<std::string, bool>;  // atom key -> sign

// Throws std::out_of_range on an atom missing from s.
bool skeleton_entails(const SignMap& s, const Formula& f);

// Three-valued evaluation under a partial sign map; nullopt = undetermined.
std::optional<bool> skeleton_eval3(const Formula& f,
                                   const std::unordered_map<std::string, bool>& partial);

// Th(B)sigma: conjunction of alphabet letters in mask, negated letters outside.
Formula class_theory(const Analysis& an, std::uint64_t mask);

// Variables occurring in f, sorted.
std::vector<std::string> variables(const Formula& f);

}  // namespace cosat

#endif  // COSAT_FORMULA_HPP_
