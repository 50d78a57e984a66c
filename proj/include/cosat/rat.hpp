#ifndef COSAT_RAT_HPP_
#define COSAT_RAT_HPP_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cosat {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, always reduced with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Rat(const BigInt& n) : v_(n) {}
  Rat(const BigInt& num, const BigInt& den);

  // Accepts "n" or "n/d" with optional leading '-'. Throws std::invalid_argument.
  static Rat parse(std::string_view text);

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return den() == 1; }
  int sign() const { return v_.sign(); }

  BigInt floor() const;
  BigInt ceil() const;
  Rat abs() const { return v_ < 0 ? -*this : *this; }

  std::string str() const;

  Rat operator-() const { return Rat(Raw{}, -v_); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  using Raw_t = boost::multiprecision::cpp_rational;
  struct Raw {};
  Rat(Raw, Raw_t v) : v_(std::move(v)) {}

  Raw_t v_;
};

// Number of binary digits of |n| (0 for n = 0).
std::size_t bit_length(const BigInt& n);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace cosat

#endif  // COSAT_RAT_HPP_
