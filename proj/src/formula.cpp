#include "cosat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "cosat/errors.hpp"

namespace cosat {

std::size_t ModalOp::arity() const {
  switch (kind) {
    case ModalKind::Box:
    case ModalKind::Effect:
    case ModalKind::Capable: return 1;
    case ModalKind::Cond: return 2;
    case ModalKind::Count: return count.coeffs.size();
    case ModalKind::Likelihood: return lik.coeffs.size();
  }
  return 0;
}

namespace {

std::string wrap(const Formula& f, int lvl) {
  return f->level < lvl ? "(" + f->key + ")" : f->key;
}

std::string render_terms(const std::vector<std::string>& coeffs, const std::vector<bool>& negative,
                         const std::vector<Formula>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i == 0) {
      s += (negative[i] ? "-" : "") + coeffs[i];
    } else {
      s += negative[i] ? "-" : "+";
      s += coeffs[i];
    }
    s += "*(" + args[i]->key + ")";
  }
  return s;
}

std::string modal_key(const ModalOp& op, const std::vector<Formula>& a) {
  switch (op.kind) {
    case ModalKind::Box: return "[]" + wrap(a[0], 5);
    case ModalKind::Effect: return "E" + wrap(a[0], 5);
    case ModalKind::Capable: return "C" + wrap(a[0], 5);
    case ModalKind::Cond: return "(" + a[0]->key + "=>" + a[1]->key + ")";
    case ModalKind::Count: {
      std::vector<std::string> cs;
      std::vector<bool> neg;
      for (auto c : op.count.coeffs) {
        neg.push_back(c < 0);
        cs.push_back((c < 0 ? -BigInt(c) : BigInt(c)).str());
      }
      std::string s = "#{" + render_terms(cs, neg, a);
      switch (op.count.rel) {
        case CountRel::Lt: s += "<" + std::to_string(op.count.bound); break;
        case CountRel::Gt: s += ">" + std::to_string(op.count.bound); break;
        case CountRel::Eq: s += "=" + std::to_string(op.count.bound); break;
        case CountRel::Mod:
          s += " mod " + std::to_string(op.count.modulus) + "=" + std::to_string(op.count.bound);
          break;
      }
      return s + "}";
    }
    case ModalKind::Likelihood: {
      std::vector<std::string> cs;
      std::vector<bool> neg;
      for (const auto& c : op.lik.coeffs) {
        neg.push_back(c.sign() < 0);
        cs.push_back(c.abs().str());
      }
      return "L{" + render_terms(cs, neg, a) + ">=" + op.lik.bound.str() + "}";
    }
  }
  return "?";
}

Formula make(Kind k, std::vector<Formula> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids = std::move(kids);
  const auto& c = n->kids;
  switch (k) {
    case Kind::Not:
      n->key = "~" + wrap(c[0], 5);
      n->rank = c[0]->rank;
      n->level = 5;
      break;
    case Kind::And:
      n->key = wrap(c[0], 4) + "&" + wrap(c[1], 5);
      n->level = 4;
      break;
    case Kind::Or:
      n->key = wrap(c[0], 3) + "|" + wrap(c[1], 4);
      n->level = 3;
      break;
    case Kind::Implies:
      n->key = wrap(c[0], 3) + "->" + wrap(c[1], 2);
      n->level = 2;
      break;
    case Kind::Iff:
      n->key = wrap(c[0], 1) + "<->" + wrap(c[1], 2);
      n->level = 1;
      break;
    default:
      throw InternalError("make: not a connective");
  }
  if (k != Kind::Not) n->rank = std::max(c[0]->rank, c[1]->rank);
  return n;
}

Formula make_const(bool v) {
  auto n = std::make_shared<Node>();
  n->kind = v ? Kind::True : Kind::False;
  n->key = v ? "true" : "false";
  return n;
}

}  // namespace

Formula f_false() { static const Formula f = make_const(false); return f; }
Formula f_true() { static const Formula f = make_const(true); return f; }

Formula var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->key = name;
  n->name = std::move(name);
  return n;
}

Formula neg(Formula a) { return make(Kind::Not, {std::move(a)}); }
Formula conj(Formula a, Formula b) { return make(Kind::And, {std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return make(Kind::Or, {std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) { return make(Kind::Implies, {std::move(a), std::move(b)}); }
Formula iff(Formula a, Formula b) { return make(Kind::Iff, {std::move(a), std::move(b)}); }

Formula modal(ModalOp op, std::vector<Formula> args) {
  if (args.size() != op.arity() || args.empty())
    throw std::invalid_argument("modal operator arity mismatch");
  if (op.kind == ModalKind::Count && op.count.rel == CountRel::Mod &&
      (op.count.modulus < 1 || op.count.bound < 0 || op.count.bound >= op.count.modulus))
    throw std::invalid_argument("congruence needs k >= 1 and 0 <= r < k");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Modal;
  n->key = modal_key(op, args);
  int r = 0;
  for (const auto& a : args) r = std::max(r, a->rank);
  n->rank = r + 1;
  n->op = std::move(op);
  n->kids = std::move(args);
  return n;
}

Formula box(Formula a) { return modal(ModalOp{ModalKind::Box, {}, {}}, {std::move(a)}); }
Formula diamond(Formula a) { return neg(box(neg(std::move(a)))); }
Formula cond(Formula a, Formula b) {
  return modal(ModalOp{ModalKind::Cond, {}, {}}, {std::move(a), std::move(b)});
}
Formula effect(Formula a) { return modal(ModalOp{ModalKind::Effect, {}, {}}, {std::move(a)}); }
Formula capable(Formula a) { return modal(ModalOp{ModalKind::Capable, {}, {}}, {std::move(a)}); }
Formula count(CountParams p, std::vector<Formula> args) {
  ModalOp op;
  op.kind = ModalKind::Count;
  op.count = std::move(p);
  return modal(std::move(op), std::move(args));
}
Formula likelihood(LikelihoodParams p, std::vector<Formula> args) {
  ModalOp op;
  op.kind = ModalKind::Likelihood;
  op.lik = std::move(p);
  return modal(std::move(op), std::move(args));
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_true();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

const std::string& render(const Formula& f) { return f->key; }
int rank(const Formula& f) { return f->rank; }
bool is_atom(const Formula& f) { return f->kind == Kind::Var || f->kind == Kind::Modal; }

std::size_t size(const Formula& f) {
  auto digits = [](const BigInt& n) { return std::max<std::size_t>(1, bit_length(n)); };
  std::size_t s = 1;
  for (const auto& k : f->kids) s += size(k);
  if (f->kind == Kind::Modal) {
    const auto& op = f->op;
    if (op.kind == ModalKind::Count) {
      for (auto c : op.count.coeffs) s += digits(BigInt(c));
      s += digits(BigInt(op.count.bound));
      if (op.count.rel == CountRel::Mod) s += digits(BigInt(op.count.modulus));
    } else if (op.kind == ModalKind::Likelihood) {
      for (const auto& c : op.lik.coeffs) s += digits(c.num()) + digits(c.den());
      s += digits(op.lik.bound.num()) + digits(op.lik.bound.den());
    }
  }
  return s;
}

bool structural_equal(const Formula& a, const Formula& b) {
  if (a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
  if (a->kind == Kind::Var && a->name != b->name) return false;
  if (a->kind == Kind::Modal && !(a->op == b->op)) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!structural_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { Ident, Num, Sym, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  static const char* kSyms[] = {"<->", "<>", "[]", "=>", "->", ">=", "#{", "L{",
                                "<",   ">",  "[",  "]",  "(",  ")",  "{",  "}",
                                "~",   "&",  "|",  "*",  "+",  "-",  "/",  "=",
                                "E",   "C"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char ch = static_cast<unsigned char>(s[i]);
    if (std::isspace(ch)) { ++i; continue; }
    if (ch >= 'a' && ch <= 'z') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::islower(static_cast<unsigned char>(s[j])) ||
                              std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(ch)) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Num, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool hit = false;
    for (const char* sym : kSyms) {
      std::string_view v(sym);
      if (s.substr(i, v.size()) == v) {
        out.push_back({Tok::Sym, std::string(v), i});
        i += v.size();
        hit = true;
        break;
      }
    }
    if (!hit) throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Logic& logic) : toks_(lex(text)), logic_(logic) {}

  Formula run() {
    Formula f = formula();
    if (cur().type != Tok::End) fail("trailing input '" + cur().text + "'");
    return f;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  bool is(std::string_view sym) const { return cur().type == Tok::Sym && cur().text == sym; }
  bool accept(std::string_view sym) {
    if (!is(sym)) return false;
    ++i_;
    return true;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) fail("expected '" + std::string(sym) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur().pos); }

  void require(Syntax s, const char* what) const {
    if (logic_.syntax() != s)
      fail(std::string("operator '") + what + "' not available in logic " + logic_.name());
  }

  Formula formula() {
    Formula f = impl();
    while (accept("<->")) f = iff(f, impl());
    return f;
  }
  Formula impl() {
    Formula f = disjunction();
    if (accept("->")) return implies(f, impl());
    return f;
  }
  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = disj(f, conjunction());
    return f;
  }
  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = conj(f, unary());
    return f;
  }

  Formula unary() {
    const Token t = cur();
    if (accept("~")) return neg(unary());
    if (t.type == Tok::Ident) {
      ++i_;
      if (t.text == "true") return f_true();
      if (t.text == "false") return f_false();
      if (t.text == "mod") { --i_; fail("unexpected keyword 'mod'"); }
      return var(t.text);
    }
    if (accept("(")) {
      Formula a = formula();
      if (is("=>")) {
        require(Syntax::Cond, "=>");
        ++i_;
        Formula b = formula();
        expect(")");
        return cond(a, b);
      }
      expect(")");
      return a;
    }
    if (is("[]")) { require(Syntax::Box, "[]"); ++i_; return box(unary()); }
    if (is("<>")) { require(Syntax::Box, "<>"); ++i_; return diamond(unary()); }
    if (is("E")) { require(Syntax::Agency, "E"); ++i_; return effect(unary()); }
    if (is("C")) { require(Syntax::Agency, "C"); ++i_; return capable(unary()); }
    if (is("<")) {
      require(Syntax::Count, "<n>");
      ++i_;
      std::int64_t n = nat();
      expect(">");
      return count(CountParams{{1}, CountRel::Gt, n, 0}, {unary()});
    }
    if (is("[")) {
      require(Syntax::Count, "[n]");
      ++i_;
      std::int64_t n = nat();
      expect("]");
      return neg(count(CountParams{{1}, CountRel::Gt, n, 0}, {neg(unary())}));
    }
    if (is("#{")) { require(Syntax::Count, "#{"); ++i_; return counting(); }
    if (is("L{")) { require(Syntax::Prob, "L{"); ++i_; return lik(); }
    if (t.type == Tok::End) fail("unexpected end of input");
    fail("unexpected token '" + t.text + "'");
  }

  BigInt natural() {
    if (cur().type != Tok::Num) fail("expected number");
    BigInt v(cur().text);
    ++i_;
    return v;
  }
  static std::int64_t narrow(const BigInt& v, const Parser& p) {
    if (v > std::numeric_limits<std::int64_t>::max() / 4 ||
        v < std::numeric_limits<std::int64_t>::min() / 4)
      p.fail("integer out of range");
    return static_cast<std::int64_t>(v);
  }
  std::int64_t nat() { return narrow(natural(), *this); }
  std::int64_t integer() {
    bool minus = accept("-");
    BigInt v = natural();
    return narrow(minus ? BigInt(-v) : v, *this);
  }
  Rat unsigned_rat() {
    BigInt n = natural();
    if (accept("/")) {
      std::size_t at = cur().pos;
      BigInt d = natural();
      if (d == 0) throw ParseError("zero denominator", at);
      return Rat(n, d);
    }
    return Rat(n);
  }
  Rat rat() {
    bool minus = accept("-");
    Rat r = unsigned_rat();
    return minus ? -r : r;
  }

  Formula term_arg() {
    expect("*");
    expect("(");
    Formula f = formula();
    expect(")");
    return f;
  }

  Formula counting() {
    CountParams p;
    std::vector<Formula> args;
    p.coeffs.push_back(integer());
    args.push_back(term_arg());
    while (is("+") || is("-")) {
      bool minus = is("-");
      ++i_;
      std::int64_t c = nat();
      p.coeffs.push_back(minus ? -c : c);
      args.push_back(term_arg());
    }
    if (accept("<")) {
      p.rel = CountRel::Lt;
      p.bound = integer();
    } else if (accept(">")) {
      p.rel = CountRel::Gt;
      p.bound = integer();
    } else if (accept("=")) {
      p.rel = CountRel::Eq;
      p.bound = integer();
    } else if (cur().type == Tok::Ident && cur().text == "mod") {
      ++i_;
      std::size_t at = cur().pos;
      p.rel = CountRel::Mod;
      p.modulus = nat();
      expect("=");
      p.bound = nat();
      if (p.modulus < 1 || p.bound >= p.modulus)
        throw ParseError("congruence needs k >= 1 and 0 <= r < k", at);
    } else {
      fail("expected '<', '>', '=' or 'mod'");
    }
    expect("}");
    return count(std::move(p), std::move(args));
  }

  Formula lik() {
    LikelihoodParams p;
    std::vector<Formula> args;
    p.coeffs.push_back(rat());
    args.push_back(term_arg());
    while (is("+") || is("-")) {
      bool minus = is("-");
      ++i_;
      Rat c = unsigned_rat();
      p.coeffs.push_back(minus ? -c : c);
      args.push_back(term_arg());
    }
    expect(">=");
    p.bound = rat();
    expect("}");
    return likelihood(std::move(p), std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Logic logic_;
};

}  // namespace

Formula parse(std::string_view text, const Logic& logic) { return Parser(text, logic).run(); }

// ---------------------------------------------------------------- analysis

Analysis analyze(const Formula& f) {
  Analysis an;
  std::unordered_set<std::string> seen_any, seen_scope;
  std::function<void(const Formula&, bool)> go = [&](const Formula& g, bool in_scope) {
    auto& seen = in_scope ? seen_scope : seen_any;
    if (!seen.insert(g->key).second) return;
    if (is_atom(g)) {
      if (an.atom_index.emplace(g->key, an.atoms.size()).second) an.atoms.push_back(g);
      if (in_scope && an.letter.emplace(g->key, an.alphabet.size()).second)
        an.alphabet.push_back(g);
    }
    bool below = in_scope || g->kind == Kind::Modal;
    for (const auto& k : g->kids) go(k, below);
  };
  go(f, false);
  return an;
}

namespace {

template <class Lookup>
std::optional<bool> eval3(const Formula& f, const Lookup& look) {
  switch (f->kind) {
    case Kind::False: return false;
    case Kind::True: return true;
    case Kind::Var:
    case Kind::Modal: return look(f);
    case Kind::Not: {
      auto v = eval3(f->kids[0], look);
      if (!v) return std::nullopt;
      return !*v;
    }
    case Kind::And: {
      auto a = eval3(f->kids[0], look);
      if (a && !*a) return false;
      auto b = eval3(f->kids[1], look);
      if (b && !*b) return false;
      if (a && b) return true;
      return std::nullopt;
    }
    case Kind::Or: {
      auto a = eval3(f->kids[0], look);
      if (a && *a) return true;
      auto b = eval3(f->kids[1], look);
      if (b && *b) return true;
      if (a && b) return false;
      return std::nullopt;
    }
    case Kind::Implies: {
      auto a = eval3(f->kids[0], look);
      if (a && !*a) return true;
      auto b = eval3(f->kids[1], look);
      if (b && *b) return true;
      if (a && b) return false;
      return std::nullopt;
    }
    case Kind::Iff: {
      auto a = eval3(f->kids[0], look);
      if (!a) return std::nullopt;
      auto b = eval3(f->kids[1], look);
      if (!b) return std::nullopt;
      return *a == *b;
    }
  }
  return std::nullopt;
}

}  // namespace

bool skeleton_entails(const SignMap& s, const Formula& f) {
  auto v = eval3(f, [&](const Formula& a) -> std::optional<bool> {
    auto it = s.find(a->key);
    if (it == s.end()) throw std::out_of_range("sign map misses atom " + a->key);
    return it->second;
  });
  return *v;
}

std::optional<bool> skeleton_eval3(const Formula& f,
                                   const std::unordered_map<std::string, bool>& partial) {
  return eval3(f, [&](const Formula& a) -> std::optional<bool> {
    auto it = partial.find(a->key);
    if (it == partial.end()) return std::nullopt;
    return it->second;
  });
}

Formula class_theory(const Analysis& an, std::uint64_t mask) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < an.alphabet.size(); ++i)
    lits.push_back((mask >> i) & 1u ? an.alphabet[i] : neg(an.alphabet[i]));
  return conj_all(lits);
}

std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g->kind == Kind::Var) out.insert(g->name);
    for (const auto& k : g->kids) go(k);
  };
  go(f);
  return {out.begin(), out.end()};
}

}  // namespace cosat
