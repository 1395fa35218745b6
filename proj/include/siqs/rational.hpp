#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace siqs {

// Arbitrary-precision rational, always stored canonically (gcd-reduced,
// positive denominator, zero is 0/1). Thin value wrapper around mpq_class.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "n", "-n", or "n/d". Floats are rejected.
  static Rational parse(const std::string& s);

  const mpq_class& raw() const { return v_; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  // Integer power; negative exponents invert (throws on 0^-k).
  Rational pow_int(long e) const;

  bool is_integer() const { return v_.get_den() == 1; }
  // Valid only when the value fits in a long and is integral.
  long to_long() const;

  double to_double() const { return v_.get_d(); }
  std::string str() const;

 private:
  mpq_class v_;
};

inline Rational gcd(const Rational& a, const Rational& b) {
  // gcd of rationals: gcd(num)/lcm(den); used for content extraction.
  mpz_class gn, ld;
  mpz_gcd(gn.get_mpz_t(), a.raw().get_num().get_mpz_t(), b.raw().get_num().get_mpz_t());
  mpz_lcm(ld.get_mpz_t(), a.raw().get_den().get_mpz_t(), b.raw().get_den().get_mpz_t());
  return Rational(mpq_class(gn, ld));
}

}  // namespace siqs
