#include "cosat/rat.hpp"

#include <stdexcept>

namespace cosat {

Rat::Rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  v_ = Raw_t(num, den);
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.v_ == 0) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

BigInt parse_int(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && s.front() == '-') {
    neg = true;
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("malformed rational: " + std::string(whole));
  BigInt v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed rational: " + std::string(whole));
    v = v * 10 + (c - '0');
  }
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text, text));
  const BigInt n = parse_int(text.substr(0, slash), text);
  const BigInt d = parse_int(text.substr(slash + 1), text);
  if (d <= 0) throw std::invalid_argument("denominator must be positive: " + std::string(text));
  return Rat(n, d);
}

BigInt Rat::floor() const {
  BigInt n = num(), d = den();
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

BigInt Rat::ceil() const {
  BigInt n = num(), d = den();
  BigInt q = n / d;
  if (n > 0 && q * d != n) q += 1;
  return q;
}

std::string Rat::str() const {
  if (den() == 1) return num().str();
  return num().str() + "/" + den().str();
}

std::size_t bit_length(const BigInt& n) {
  if (n == 0) return 0;
  BigInt a = n < 0 ? BigInt(-n) : n;
  return boost::multiprecision::msb(a) + 1;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt g = gcd(a, b);
  BigInt r = a / g * b;
  return r < 0 ? BigInt(-r) : r;
}

}  // namespace cosat
