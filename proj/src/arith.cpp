#include "cosat/arith.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <type_traits>

#include <boost/dynamic_bitset.hpp>

#include "cosat/errors.hpp"

namespace cosat {

namespace {

// Rows are a.x (<=|<|=) b over a dense coefficient vector.
enum class R3 { Le, Lt, Eq };

struct Row {
  std::vector<Rat> a;
  Rat b;
  R3 rel = R3::Le;
};

BigInt to_int(const Rat& r) {
  if (!r.is_integer()) throw InternalError("non-integral value in integer system");
  return r.num();
}

BigInt babs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

// Integer rows (Le / Eq) plus congruences, coefficients scaled to integers.
struct IntSystem {
  std::size_t n = 0;
  std::vector<Row> rows;  // integral coefficients
  struct Cong {
    std::vector<BigInt> a;
    BigInt r, m;
  };
  std::vector<Cong> congs;
};

IntSystem integerize(const LinSystem& sys) {
  IntSystem out;
  out.n = sys.vars;
  for (const auto& c : sys.constraints) {
    BigInt l = c.rhs.den();
    for (const auto& [v, q] : c.coeffs) {
      if (v >= sys.vars) throw std::invalid_argument("constraint mentions undeclared variable");
      l = lcm(l, q.den());
    }
    Rat s(l);
    if (c.rel == Rel::Mod) {
      if (c.modulus < 1) throw std::invalid_argument("congruence modulus must be >= 1");
      if (l != 1) throw std::invalid_argument("congruence with fractional coefficients");
      IntSystem::Cong g;
      g.a.assign(sys.vars, 0);
      for (const auto& [v, q] : c.coeffs) g.a[v] += to_int(q);
      g.m = c.modulus;
      g.r = mod_floor(to_int(c.rhs), g.m);
      out.congs.push_back(std::move(g));
      continue;
    }
    Row r;
    r.a.assign(sys.vars, Rat(0));
    for (const auto& [v, q] : c.coeffs) r.a[v] += q * s;
    Rat b = c.rhs * s;
    bool flip = c.rel == Rel::Ge || c.rel == Rel::Gt;
    if (flip) {
      for (auto& q : r.a) q = -q;
      b = -b;
    }
    switch (c.rel) {
      case Rel::Eq: r.rel = R3::Eq; r.b = b; break;
      case Rel::Le:
      case Rel::Ge: r.rel = R3::Le; r.b = b; break;
      case Rel::Lt:
      case Rel::Gt: r.rel = R3::Le; r.b = Rat(b.num() - 1); break;  // b integral here
      case Rel::Mod: break;
    }
    out.rows.push_back(std::move(r));
  }
  return out;
}

// 64-bit integer that throws Overflow instead of wrapping. The elimination
// runs on it first and falls back to BigInt when a value outgrows it.
struct Overflow {};

class Small {
 public:
  Small(long long v = 0) : v_(v) {}  // NOLINT(google-explicit-constructor)
  long long get() const { return v_; }

  friend Small operator+(Small a, Small b) {
    long long r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Small operator-(Small a, Small b) {
    long long r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Small operator*(Small a, Small b) {
    long long r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend Small operator/(Small a, Small b) {
    if (b.v_ == -1) return -a;
    return a.v_ / b.v_;
  }
  friend Small operator%(Small a, Small b) {
    if (b.v_ == -1) return 0;
    return a.v_ % b.v_;
  }
  Small operator-() const {
    if (v_ == LLONG_MIN) throw Overflow{};
    return -v_;
  }
  Small& operator+=(Small o) { return *this = *this + o; }
  Small& operator-=(Small o) { return *this = *this - o; }
  Small& operator*=(Small o) { return *this = *this * o; }
  Small& operator/=(Small o) { return *this = *this / o; }
  Small& operator++() { return *this += 1; }
  Small& operator--() { return *this -= 1; }
  friend auto operator<=>(Small, Small) = default;
  friend bool operator==(Small, Small) = default;

 private:
  long long v_;
};

Small babs(Small v) { return v < 0 ? -v : v; }
Small gcd(Small a, Small b) {
  a = babs(a);
  b = babs(b);
  return std::gcd(a.get(), b.get());
}
Small mod_floor(Small a, Small m) {
  Small r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt to_big(Small v) { return BigInt(v.get()); }
const BigInt& to_big(const BigInt& v) { return v; }

template <class Int>
Int narrow(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    if (v > LLONG_MAX || v < LLONG_MIN + 1) throw Overflow{};
    return static_cast<long long>(v);
  }
}

// Exact integer feasibility by variable elimination: equalities are solved
// (with the symmetric-residue trick when no unit coefficient exists),
// inequalities go through real and dark shadows, splintering when the two
// disagree. Constraints read  a.x + c >= 0  or  a.x + c == 0.
template <class Int>
struct OCons {
  std::vector<Int> a;
  Int c;
  bool eq = false;
  boost::dynamic_bitset<> hist;  // rows of the last fresh system this one combines
  bool rounded = false;          // it or an ancestor was rounded since then
};

template <class Int>
Int floor_div(const Int& a, const Int& b) {  // b > 0
  Int q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

// a mod^ m, residue in (-m/2, m/2]
template <class Int>
Int mod_hat(const Int& a, const Int& m) {
  Int r = mod_floor(a, m);
  if (2 * r > m) r -= m;
  return r;
}

// r + d*delta for a positive infinitesimal delta; strict bounds use it.
struct DRat {
  Rat r, d;
  DRat(Rat r_ = Rat(0), Rat d_ = Rat(0)) : r(std::move(r_)), d(std::move(d_)) {}  // NOLINT
  friend DRat operator+(const DRat& x, const DRat& y) { return {x.r + y.r, x.d + y.d}; }
  friend DRat operator-(const DRat& x, const DRat& y) { return {x.r - y.r, x.d - y.d}; }
  friend DRat operator*(const Rat& q, const DRat& x) { return {q * x.r, q * x.d}; }
  friend DRat operator/(const DRat& x, const Rat& q) { return {x.r / q, x.d / q}; }
  DRat& operator+=(const DRat& y) { return *this = *this + y; }
  friend bool operator==(const DRat& x, const DRat& y) { return x.r == y.r && x.d == y.d; }
  friend bool operator<(const DRat& x, const DRat& y) { return x.r < y.r || (x.r == y.r && x.d < y.d); }
  friend bool operator>(const DRat& x, const DRat& y) { return y < x; }
};

// General simplex over exact rationals: slack s_i = a_i.x for every row,
// bounds on any variable, variables 0..nx-1 are the x. Bland's rule
// throughout. V is Rat, or DRat when strict bounds occur.
template <class V>
class Simplex {
 public:
  Simplex(const std::vector<std::vector<Rat>>& rows, std::size_t nx) : nx_(nx) {
    std::size_t nr = rows.size();
    nonbasic_.resize(nx_);
    std::iota(nonbasic_.begin(), nonbasic_.end(), 0);
    basic_.resize(nr);
    t_ = rows;
    lo_.resize(nx_ + nr);
    hi_.resize(nx_ + nr);
    val_.assign(nx_ + nr, V());
    where_.assign(nx_ + nr, -1);
    for (std::size_t i = 0; i < nr; ++i) {
      basic_[i] = nx_ + i;
      where_[nx_ + i] = static_cast<long>(i);
    }
  }

  std::size_t slack(std::size_t row) const { return nx_ + row; }
  const V& value(std::size_t v) const { return val_[v]; }
  const std::optional<V>& lower(std::size_t v) const { return lo_[v]; }
  const std::optional<V>& upper(std::size_t v) const { return hi_[v]; }
  std::size_t size() const { return val_.size(); }

  void set_bounds(std::size_t v, std::optional<V> lo, std::optional<V> hi) {
    lo_[v] = std::move(lo);
    hi_[v] = std::move(hi);
    if (where_[v] >= 0) return;
    if (lo_[v] && val_[v] < *lo_[v]) shift(v, *lo_[v]);
    else if (hi_[v] && val_[v] > *hi_[v]) shift(v, *hi_[v]);
  }

  bool check() {
    for (;;) {
      std::size_t r = basic_.size(), b = 0;
      for (std::size_t i = 0; i < basic_.size(); ++i) {
        std::size_t v = basic_[i];
        if ((lo_[v] && val_[v] < *lo_[v]) || (hi_[v] && val_[v] > *hi_[v]))
          if (r == basic_.size() || v < b) {
            r = i;
            b = v;
          }
      }
      if (r == basic_.size()) return true;
      bool up = lo_[b] && val_[b] < *lo_[b];
      std::size_t c = nx_, nb = 0;
      for (std::size_t j = 0; j < nx_; ++j) {
        const Rat& q = t_[r][j];
        if (q == 0) continue;
        std::size_t v = nonbasic_[j];
        bool grow = (q > 0) == up;  // move v up?
        bool ok = grow ? (!hi_[v] || val_[v] < *hi_[v]) : (!lo_[v] || val_[v] > *lo_[v]);
        if (ok && (c == nx_ || v < nb)) {
          c = j;
          nb = v;
        }
      }
      if (c == nx_) return false;
      V target = up ? *lo_[b] : *hi_[b];
      V theta = (target - val_[b]) / t_[r][c];
      val_[nb] += theta;
      for (std::size_t i = 0; i < basic_.size(); ++i)
        if (t_[i][c] != 0) val_[basic_[i]] += t_[i][c] * theta;
      pivot(r, c);
    }
  }

 private:
  // move nonbasic v to x, dragging the basics along
  void shift(std::size_t v, const V& x) {
    std::size_t c = 0;
    while (nonbasic_[c] != v) ++c;
    V d = x - val_[v];
    val_[v] = x;
    for (std::size_t i = 0; i < basic_.size(); ++i)
      if (t_[i][c] != 0) val_[basic_[i]] += t_[i][c] * d;
  }

  void pivot(std::size_t r, std::size_t c) {
    std::vector<Rat>& row = t_[r];
    Rat inv = Rat(1) / row[c];
    for (std::size_t j = 0; j < nx_; ++j) row[j] = j == c ? inv : Rat(-row[j] * inv);
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rat f = t_[i][c];
      for (std::size_t j = 0; j < nx_; ++j) {
        if (j == c) t_[i][j] = f * row[c];
        else if (row[j] != 0) t_[i][j] += f * row[j];
      }
    }
    std::size_t b = basic_[r], v = nonbasic_[c];
    basic_[r] = v;
    nonbasic_[c] = b;
    where_[v] = static_cast<long>(r);
    where_[b] = -1;
  }

  std::size_t nx_;
  std::vector<std::size_t> nonbasic_, basic_;
  std::vector<std::vector<Rat>> t_;
  std::vector<std::optional<V>> lo_, hi_;
  std::vector<V> val_;
  std::vector<long> where_;
};

template <class Int>
class Omega {
 public:
  explicit Omega(std::uint64_t node_cap) : cap_(node_cap) {}
  std::uint64_t nodes() const { return nodes_; }

  // elim counts the Fourier-Motzkin steps since histories were last reset.
  // After k such steps a row built from more than k+1 originals is implied
  // by the rest over the reals (Kohler's rule), so over the integers too.
  bool sat(std::vector<OCons<Int>> cs, bool fresh = true, std::size_t elim = 0) {
    if (++nodes_ > cap_) throw ResourceLimit("integer search node cap exceeded");
    for (;;) {
      if (!normalize(cs)) return false;
      // the equality with the smallest coefficient goes first
      std::size_t e = cs.size();
      Int emin = 0;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i].eq) continue;
        for (const auto& v : cs[i].a)
          if (v != 0 && (e == cs.size() || babs(v) < emin)) {
            e = i;
            emin = babs(v);
          }
      }
      if (e != cs.size()) {
        solve_eq(cs, e);
        fresh = true;
        continue;
      }
      if (cs.empty()) return true;
      if (drop_unbounded(cs)) {
        ++elim;
        continue;
      }
      break;
    }
    if (cs.size() > kRowCap) throw ResourceLimit("integer elimination grew too large");
    if (cs.size() > kPruneAt && cs.size() > 3 * cs[0].a.size() && !prune(cs)) return false;
    if (fresh) {
      for (std::size_t i = 0; i < cs.size(); ++i) {
        cs[i].hist.clear();
        cs[i].hist.resize(cs.size());
        cs[i].hist.set(i);
        cs[i].rounded = false;
      }
      elim = 0;
    }
    std::size_t nv = cs[0].a.size();
    // pick the variable: least growth in rows, exact eliminations on ties
    std::size_t best = nv;
    bool best_exact = false;
    long best_growth = 0;
    for (std::size_t k = 0; k < nv; ++k) {
      long lo = 0, hi = 0;
      bool lo_unit = true, hi_unit = true;
      for (const auto& r : cs) {
        if (r.a[k] > 0) { ++lo; lo_unit = lo_unit && r.a[k] == 1; }
        else if (r.a[k] < 0) { ++hi; hi_unit = hi_unit && r.a[k] == -1; }
      }
      if (lo == 0 && hi == 0) continue;
      bool exact = lo_unit || hi_unit;
      long growth = lo * hi - lo - hi;
      if (best == nv || growth < best_growth || (growth == best_growth && exact && !best_exact)) {
        best = k;
        best_exact = exact;
        best_growth = growth;
      }
    }
    std::size_t k = best;
    if (best_exact) return sat(shadow(cs, k, false, elim + 1), false, elim + 1);
    if (!sat(shadow(cs, k, false, elim + 1), false, elim + 1)) return false;
    if (sat(shadow(cs, k, true, 0))) return true;
    Int bmax = 0;
    for (const auto& r : cs) if (r.a[k] < 0) bmax = std::max<Int>(bmax, -r.a[k]);
    for (const auto& r : cs) {
      if (r.a[k] <= 0) continue;
      const Int& a = r.a[k];
      Int top = floor_div<Int>(a * bmax - a - bmax, bmax);
      for (Int i = 0; i <= top; ++i) {
        auto next = cs;
        OCons<Int> e = r;
        e.c -= i;
        e.eq = true;
        next.push_back(std::move(e));
        if (sat(std::move(next))) return true;
      }
    }
    return false;
  }

 private:
  // Drops every row that holds at all integer points of the rows kept so
  // far: a row is integral, so its negation is  a.x + c <= -1, and a real
  // refutation of that is enough. False when the rows have no real solution.
  static bool prune(std::vector<OCons<Int>>& cs) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& r : cs) {
      std::vector<Rat> q;
      for (const auto& v : r.a) q.emplace_back(to_big(v));
      rows.push_back(std::move(q));
    }
    Simplex<Rat> lp(rows, cs[0].a.size());
    for (std::size_t i = 0; i < cs.size(); ++i) lp.set_bounds(lp.slack(i), -Rat(to_big(cs[i].c)), std::nullopt);
    if (!lp.check()) return false;
    std::vector<std::size_t> order(cs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return cs[x].hist.count() > cs[y].hist.count();
    });
    std::vector<bool> gone(cs.size(), false);
    for (auto i : order) {
      std::size_t s = lp.slack(i);
      lp.set_bounds(s, std::nullopt, -Rat(to_big(cs[i].c)) - 1);
      if (!lp.check()) {
        gone[i] = true;
        lp.set_bounds(s, std::nullopt, std::nullopt);
      } else {
        lp.set_bounds(s, -Rat(to_big(cs[i].c)), std::nullopt);
      }
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (gone[i]) continue;
      if (w != i) cs[w] = std::move(cs[i]);
      ++w;
    }
    cs.resize(w);
    return true;
  }

  static bool normalize(std::vector<OCons<Int>>& cs) {
    std::map<std::vector<Int>, std::size_t> seen;  // ineq rows by coefficients
    std::map<std::vector<Int>, Int> eqs;
    std::vector<OCons<Int>> out;
    for (auto& r : cs) {
      Int g = 0;
      for (const auto& v : r.a) if (v != 0) g = gcd(g, v);
      if (g == 0) {
        if (r.eq ? r.c != 0 : r.c < 0) return false;
        continue;
      }
      g = babs(g);
      if (r.eq) {
        if (r.c % g != 0) return false;
        for (auto& v : r.a) v /= g;
        r.c /= g;
        auto lead = std::find_if(r.a.begin(), r.a.end(), [](const Int& v) { return v != 0; });
        if (*lead < 0) {
          for (auto& v : r.a) v = -v;
          r.c = -r.c;
        }
        auto it = eqs.find(r.a);
        if (it != eqs.end()) {
          if (it->second != r.c) return false;
          continue;
        }
        eqs.emplace(r.a, r.c);
        out.push_back(std::move(r));
        continue;
      }
      for (auto& v : r.a) v /= g;
      if (r.c % g != 0) r.rounded = true;
      r.c = floor_div<Int>(r.c, g);
      auto it = seen.find(r.a);
      if (it != seen.end()) {
        OCons<Int>& o = out[it->second];
        if (r.c < o.c || (r.c == o.c && r.hist.count() < o.hist.count())) {
          o.c = r.c;
          o.hist = std::move(r.hist);
          o.rounded = r.rounded;
        }
        continue;
      }
      seen.emplace(r.a, out.size());
      out.push_back(std::move(r));
    }
    // opposite pairs: a.x + c1 >= 0 and -a.x + c2 >= 0
    std::vector<bool> gone(out.size(), false);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].eq || gone[i]) continue;
      std::vector<Int> neg = out[i].a;
      for (auto& v : neg) v = -v;
      auto it = seen.find(neg);
      if (it == seen.end() || it->second <= i || gone[it->second]) continue;
      Int s = out[i].c + out[it->second].c;
      if (s < 0) return false;
      if (s == 0) {
        out[i].eq = true;
        gone[it->second] = true;
      }
    }
    cs.clear();
    for (std::size_t i = 0; i < out.size(); ++i) if (!gone[i]) cs.push_back(std::move(out[i]));
    return true;
  }

  // substitute x_k := (expr) / coef where row is  coef*x_k + rest == 0, coef = +-1
  static void substitute(std::vector<OCons<Int>>& cs, const OCons<Int>& row, std::size_t k) {
    Int s = row.a[k];  // +-1
    for (auto& r : cs) {
      if (r.a[k] == 0) continue;
      Int f = r.a[k] * s;  // x_k = -s * rest
      for (std::size_t j = 0; j < r.a.size(); ++j) r.a[j] -= f * row.a[j];
      r.c -= f * row.c;
      r.a[k] = 0;
    }
  }

  static void solve_eq(std::vector<OCons<Int>>& cs, std::size_t idx) {
    OCons<Int> row = cs[idx];
    cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(idx));
    std::size_t nv = row.a.size();
    std::size_t k = nv;
    for (std::size_t j = 0; j < nv; ++j)
      if (row.a[j] != 0 && (k == nv || babs(row.a[j]) < babs(row.a[k]))) k = j;
    if (babs(row.a[k]) == 1) {
      substitute(cs, row, k);
      return;
    }
    // no unit coefficient: introduce sigma with
    //   m*sigma = sum (a_j mod^ m) x_j + (c mod^ m),  m = |a_k| + 1
    // whose x_k coefficient is -sign(a_k), then eliminate x_k through it.
    if (row.a[k] < 0) {
      for (auto& v : row.a) v = -v;
      row.c = -row.c;
    }
    Int m = row.a[k] + 1;
    for (auto& r : cs) r.a.push_back(0);
    row.a.push_back(0);
    OCons<Int> aux;
    aux.eq = true;
    aux.a.assign(nv + 1, 0);
    for (std::size_t j = 0; j < nv; ++j) aux.a[j] = mod_hat<Int>(row.a[j], m);
    aux.c = mod_hat<Int>(row.c, m);
    aux.a[nv] = -m;
    // aux.a[k] == -1 here
    cs.insert(cs.begin(), row);
    substitute(cs, aux, k);
  }

  // a variable bounded on one side only can always be chosen to satisfy
  // every constraint it appears in
  static bool drop_unbounded(std::vector<OCons<Int>>& cs) {
    std::size_t nv = cs[0].a.size();
    for (std::size_t k = 0; k < nv; ++k) {
      bool lo = false, hi = false;
      for (const auto& r : cs) {
        if (r.a[k] > 0) lo = true;
        if (r.a[k] < 0) hi = true;
      }
      if (lo != hi) {
        std::erase_if(cs, [k](const OCons<Int>& r) { return r.a[k] != 0; });
        return true;
      }
    }
    return false;
  }

  // steps > 0 applies the history filter; dark shadows start over
  static std::vector<OCons<Int>> shadow(const std::vector<OCons<Int>>& cs, std::size_t k, bool dark,
                                   std::size_t steps) {
    std::vector<OCons<Int>> out;
    for (const auto& r : cs) if (r.a[k] == 0) out.push_back(r);
    for (const auto& l : cs) {
      if (l.a[k] <= 0) continue;
      for (const auto& u : cs) {
        if (u.a[k] >= 0) continue;
        // a rounded row is tighter than its plain combination, which is
        // all the rule speaks about, so it has to stay
        boost::dynamic_bitset<> h;
        bool rounded = l.rounded || u.rounded;
        if (steps > 0) {
          h = l.hist | u.hist;
          if (!rounded && h.count() > steps + 1) continue;
        }
        Int a = l.a[k], b = -u.a[k];
        OCons<Int> r;
        r.a.resize(l.a.size());
        for (std::size_t j = 0; j < l.a.size(); ++j) r.a[j] = a * u.a[j] + b * l.a[j];
        r.a[k] = 0;
        r.c = a * u.c + b * l.c;
        if (dark) r.c -= (a - 1) * (b - 1);
        r.hist = std::move(h);
        r.rounded = rounded;
        out.push_back(std::move(r));
        if (out.size() > kRowCap) throw ResourceLimit("integer elimination grew too large");
      }
    }
    return out;
  }

  static constexpr std::size_t kRowCap = 50000;
  static constexpr std::size_t kPruneAt = 24;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
};

// base constraints over x (nonneg) plus one free quotient per congruence
std::vector<OCons<BigInt>> omega_rows(const IntSystem& s) {
  std::size_t nv = s.n + s.congs.size();
  std::vector<OCons<BigInt>> cs;
  for (const auto& r : s.rows) {
    OCons<BigInt> o;
    o.a.assign(nv, 0);
    for (std::size_t k = 0; k < s.n; ++k) o.a[k] = -to_int(r.a[k]);
    o.c = to_int(r.b);
    if (r.rel == R3::Eq) {
      o.eq = true;
    } else if (r.rel == R3::Lt) {
      o.c -= 1;
    }
    cs.push_back(std::move(o));
  }
  for (std::size_t i = 0; i < s.congs.size(); ++i) {
    const auto& g = s.congs[i];
    OCons<BigInt> o;
    o.eq = true;
    o.a.assign(nv, 0);
    for (std::size_t k = 0; k < s.n; ++k) o.a[k] = g.a[k];
    o.a[s.n + i] = -g.m;
    o.c = -g.r;
    cs.push_back(std::move(o));
  }
  for (std::size_t k = 0; k < s.n; ++k) {
    OCons<BigInt> o;
    o.a.assign(nv, 0);
    o.a[k] = 1;
    cs.push_back(std::move(o));
  }
  return cs;
}

template <class Int>
OCons<Int> var_le(std::size_t nv, std::size_t k, const Int& t) {
  OCons<Int> o;
  o.a.assign(nv, 0);
  o.a[k] = -1;
  o.c = t;
  return o;
}

}  // namespace

bool satisfies(const LinSystem& sys, const std::vector<Rat>& x) {
  if (x.size() != sys.vars) return false;
  for (const auto& v : x) if (v.sign() < 0) return false;
  for (const auto& c : sys.constraints) {
    Rat lhs(0);
    for (const auto& [v, q] : c.coeffs) lhs += q * x[v];
    switch (c.rel) {
      case Rel::Lt: if (!(lhs < c.rhs)) return false; break;
      case Rel::Le: if (!(lhs <= c.rhs)) return false; break;
      case Rel::Eq: if (!(lhs == c.rhs)) return false; break;
      case Rel::Ge: if (!(lhs >= c.rhs)) return false; break;
      case Rel::Gt: if (!(lhs > c.rhs)) return false; break;
      case Rel::Mod: {
        if (!lhs.is_integer() || !c.rhs.is_integer()) return false;
        if (mod_floor(lhs.num() - c.rhs.num(), c.modulus) != 0) return false;
        break;
      }
    }
  }
  return true;
}

std::optional<std::vector<Rat>> lp_feasible(const LinSystem& sys) {
  const std::size_t n = sys.vars;
  std::vector<std::vector<Rat>> rows;
  std::vector<std::pair<std::optional<DRat>, std::optional<DRat>>> bounds;
  for (const auto& c : sys.constraints) {
    if (c.rel == Rel::Mod) throw std::invalid_argument("congruence in a rational system");
    std::vector<Rat> a(n, Rat(0));
    bool constant = true;
    for (const auto& [v, q] : c.coeffs) {
      if (v >= n) throw std::invalid_argument("constraint mentions undeclared variable");
      a[v] += q;
    }
    for (const auto& q : a) constant = constant && q.is_zero();
    if (constant) {
      const Rat zero(0);
      bool ok = false;
      switch (c.rel) {
        case Rel::Lt: ok = zero < c.rhs; break;
        case Rel::Le: ok = zero <= c.rhs; break;
        case Rel::Eq: ok = zero == c.rhs; break;
        case Rel::Ge: ok = zero >= c.rhs; break;
        case Rel::Gt: ok = zero > c.rhs; break;
        case Rel::Mod: break;
      }
      if (!ok) return std::nullopt;
      continue;
    }
    rows.push_back(std::move(a));
    switch (c.rel) {
      case Rel::Le: bounds.push_back({std::nullopt, DRat(c.rhs)}); break;
      case Rel::Lt: bounds.push_back({std::nullopt, DRat(c.rhs, Rat(-1))}); break;
      case Rel::Eq: bounds.push_back({DRat(c.rhs), DRat(c.rhs)}); break;
      case Rel::Ge: bounds.push_back({DRat(c.rhs), std::nullopt}); break;
      case Rel::Gt: bounds.push_back({DRat(c.rhs, Rat(1)), std::nullopt}); break;
      case Rel::Mod: break;
    }
  }
  Simplex<DRat> lp(rows, n);
  for (std::size_t j = 0; j < n; ++j) lp.set_bounds(j, DRat(), std::nullopt);
  for (std::size_t i = 0; i < rows.size(); ++i) lp.set_bounds(lp.slack(i), bounds[i].first, bounds[i].second);
  if (!lp.check()) return std::nullopt;
  // the largest delta up to 1 that keeps every bound
  Rat delta(1);
  for (std::size_t v = 0; v < lp.size(); ++v) {
    const DRat& x = lp.value(v);
    if (const auto& l = lp.lower(v); l && x.d < l->d) delta = std::min(delta, (x.r - l->r) / (l->d - x.d));
    if (const auto& h = lp.upper(v); h && x.d > h->d) delta = std::min(delta, (h->r - x.r) / (x.d - h->d));
  }
  std::optional<std::vector<Rat>> x(std::in_place);
  for (std::size_t j = 0; j < n; ++j) x->push_back(lp.value(j).r + lp.value(j).d * delta);
  if (x && !satisfies(sys, *x)) throw InternalError("lp_feasible produced a non-solution");
  return x;
}

BigInt ilp_solution_bound(const LinSystem& sys) {
  // Standard form Ax = b, x >= 0: a slack per inequality, two variables per
  // congruence. A feasible system then has a solution bounded by n(ma)^(2m+1).
  IntSystem s = integerize(sys);
  BigInt n = s.n, m = 0, a = 1;
  for (const auto& r : s.rows) {
    ++m;
    if (r.rel != R3::Eq) n += 1;
    for (const auto& q : r.a) a = std::max(a, babs(to_int(q)));
    a = std::max(a, babs(to_int(r.b)));
  }
  for (const auto& c : s.congs) {
    ++m;
    n += 2;
    for (const auto& q : c.a) a = std::max(a, babs(q));
    a = std::max(a, c.m);
    a = std::max(a, c.r);
  }
  if (m == 0) return 0;
  BigInt base = m * a, p = 1;
  for (BigInt e = 0; e < 2 * m + 1; ++e) p *= base;
  return n * p;
}

namespace {

// Variables whose columns agree in every constraint are interchangeable: only
// their sum matters. Groups are listed by their last member.
struct Merge {
  LinSystem sys;
  std::vector<std::size_t> last;  // group -> original variable carrying the sum
};

Merge merge_columns(const LinSystem& sys) {
  std::vector<std::vector<Rat>> col(sys.vars, std::vector<Rat>(sys.constraints.size(), Rat(0)));
  for (std::size_t c = 0; c < sys.constraints.size(); ++c)
    for (const auto& [v, q] : sys.constraints[c].coeffs) {
      if (v >= sys.vars) throw std::invalid_argument("constraint mentions undeclared variable");
      col[v][c] = q;
    }
  std::map<std::vector<Rat>, std::size_t> seen;
  std::vector<std::size_t> rep(sys.vars);
  std::vector<std::size_t> last_of;
  for (std::size_t v = 0; v < sys.vars; ++v) {
    auto [it, fresh] = seen.try_emplace(col[v], last_of.size());
    if (fresh) last_of.push_back(v);
    else last_of[it->second] = v;
    rep[v] = it->second;
  }
  // order groups by the member that carries the value
  std::vector<std::size_t> order(last_of.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return last_of[a] < last_of[b]; });
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  Merge m;
  m.sys.vars = order.size();
  m.sys.domain = sys.domain;
  for (const auto& c : sys.constraints) {
    LinConstraint d = c;
    d.coeffs.clear();
    for (const auto& [v, q] : c.coeffs) d.coeffs[pos[rep[v]]] = q;
    m.sys.constraints.push_back(std::move(d));
  }
  for (auto g : order) m.last.push_back(last_of[g]);
  return m;
}

std::optional<std::vector<BigInt>> ilp_core(const LinSystem& sys, const IlpOptions& opt,
                                            IlpStats* stats);

}  // namespace

std::optional<std::vector<BigInt>> ilp_feasible(const LinSystem& sys, const IlpOptions& opt,
                                                IlpStats* stats) {
  Merge m = merge_columns(sys);
  auto y = ilp_core(m.sys, opt, stats);
  if (stats) stats->bound = ilp_solution_bound(sys);
  if (!y) return std::nullopt;
  std::vector<BigInt> x(sys.vars, 0);
  for (std::size_t g = 0; g < m.last.size(); ++g) x[m.last[g]] = (*y)[g];
  std::vector<Rat> xr;
  for (const auto& v : x) xr.emplace_back(v);
  if (!satisfies(sys, xr)) throw InternalError("ilp_feasible produced a non-solution");
  return x;
}

namespace {

// Least point of the system inside [0, box]^n, n leading variables.
template <class Int>
std::optional<std::vector<BigInt>> lexmin(const std::vector<OCons<BigInt>>& rows, std::size_t n,
                                          const BigInt& bound, const BigInt& cap, Omega<Int>& om) {
  std::vector<OCons<Int>> cs;
  for (const auto& r : rows) {
    OCons<Int> o;
    for (const auto& v : r.a) o.a.push_back(narrow<Int>(v));
    o.c = narrow<Int>(r.c);
    o.eq = r.eq;
    cs.push_back(std::move(o));
  }
  const std::size_t nv = cs.empty() ? n : cs[0].a.size();
  const Int box = narrow<Int>(std::min(bound, cap));
  auto bounded = cs;
  for (std::size_t k = 0; k < n; ++k) bounded.push_back(var_le(nv, k, box));
  if (!om.sat(bounded)) {
    // nothing in the box: either nothing at all, or only points past the cap
    if (!om.sat(cs)) return std::nullopt;
    if (bound > cap) throw ResourceLimit("integer search box " + bound.str() + " exceeds cap " + cap.str());
    throw InternalError("integer system has no solution within its size bound");
  }
  cs = std::move(bounded);
  std::vector<BigInt> x(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    // x_k = least t with the system still feasible; probe 0, 1, 3, 7, ... then bisect
    Int lo = 0, hi = 0;
    for (;;) {
      auto t = cs;
      t.push_back(var_le(nv, k, hi));
      if (om.sat(std::move(t))) break;
      lo = hi + 1;
      hi = std::min<Int>(2 * hi + 1, box);
    }
    while (lo < hi) {
      Int mid = (lo + hi) / 2;
      auto t = cs;
      t.push_back(var_le(nv, k, mid));
      if (om.sat(std::move(t))) hi = mid;
      else lo = mid + 1;
    }
    x[k] = to_big(lo);
    OCons<Int> fix = var_le(nv, k, lo);
    fix.eq = true;
    cs.push_back(std::move(fix));
  }
  return x;
}

std::optional<std::vector<BigInt>> ilp_core(const LinSystem& sys, const IlpOptions& opt,
                                            IlpStats* stats) {
  IntSystem s = integerize(sys);
  BigInt bound = ilp_solution_bound(sys);
  std::vector<OCons<BigInt>> rows = omega_rows(s);
  Omega<Small> fast(opt.node_cap);
  Omega<BigInt> slow(opt.node_cap);
  auto done = [&] {
    if (stats) {
      stats->bound = bound;
      stats->box = std::min(bound, opt.value_cap);
      stats->nodes = fast.nodes() + slow.nodes();
    }
  };
  try {
    std::optional<std::vector<BigInt>> x;
    try {
      x = lexmin(rows, s.n, bound, opt.value_cap, fast);
    } catch (const Overflow&) {
      x = lexmin(rows, s.n, bound, opt.value_cap, slow);
    }
    done();
    return x;
  } catch (...) {
    done();
    throw;
  }
}

}  // namespace

std::size_t support_size(const std::vector<Rat>& x) {
  std::size_t n = 0;
  for (const auto& v : x) if (!v.is_zero()) ++n;
  return n;
}

std::vector<Rat> minimize_support(const LinSystem& sys, const std::vector<Rat>& p) {
  if (!satisfies(sys, p)) throw std::invalid_argument("minimize_support: point is not feasible");
  // zeroed variables are erased from the constraints rather than pinned
  auto without = [](LinSystem s, std::size_t v) {
    for (auto& c : s.constraints) c.coeffs.erase(v);
    return s;
  };
  LinSystem work = sys;
  std::vector<Rat> best = p;
  for (std::size_t i = 0; i < sys.vars; ++i) {
    if (best[i].is_zero()) {
      work = without(std::move(work), i);
      continue;
    }
    LinSystem trial = without(work, i);
    if (auto q = lp_feasible(trial)) {
      (*q)[i] = Rat(0);
      best = *q;
      work = std::move(trial);
    }
  }
  if (!satisfies(sys, best)) throw InternalError("minimize_support produced a non-solution");
  return best;
}

}  // namespace cosat
