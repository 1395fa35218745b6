#pragma once

#include "siqs/multipoly.hpp"

namespace siqs {

// Quotient of two MultiPoly values. Kept reduced by rational/monomial content;
// full gcd reduction is available (and used after operator compositions) in a
// single designated variable via a primitive pseudo-remainder sequence.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rational(1)) {}
  RatFunc(const MultiPoly& n) : num_(n), den_(Rational(1)) { normalize(); }
  RatFunc(const Rational& r) : num_(r), den_(Rational(1)) {}
  RatFunc(long n) : num_(Rational(n)), den_(Rational(1)) {}
  RatFunc(const MultiPoly& n, const MultiPoly& d);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  MultiPoly as_polynomial() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
  RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
  RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }

  // Exact value equality by cross-multiplication.
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // Cancels the gcd of num and den taken as polynomials in var.
  RatFunc reduced(Symbol var) const;

  RatFunc derivative(Symbol var) const;
  RatFunc rename(Symbol from, Symbol to) const;
  RatFunc substitute(Symbol s, const MultiPoly& value) const;

  double eval_double(const std::array<double, kNumSymbols>& vals) const;
  Rational eval(const std::vector<std::pair<Symbol, Rational>>& bindings) const;

  int degree(Symbol var) const { return num_.degree(var) - den_.degree(var); }
  bool depends_on(Symbol var) const { return num_.depends_on(var) || den_.depends_on(var); }

  std::string str() const;

 private:
  void normalize();
  MultiPoly num_, den_;
};

// Polynomial gcd in one variable over the parameter ring, by primitive
// pseudo-remainder sequence; result is primitive up to parameter content.
MultiPoly gcd_univariate(const MultiPoly& a, const MultiPoly& b, Symbol var);

// Pseudo-remainder of a by b in var.
MultiPoly pseudo_rem(const MultiPoly& a, const MultiPoly& b, Symbol var);

}  // namespace siqs
