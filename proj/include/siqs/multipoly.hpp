#pragma once

#include <map>
#include <optional>
#include <vector>

#include "siqs/rational.hpp"
#include "siqs/symbol.hpp"

namespace siqs {

// Exponent vector, one (possibly negative) exponent per table symbol.
using ExpVec = std::array<int16_t, kNumSymbols>;

inline constexpr ExpVec kZeroExp{};

// Sparse multivariate Laurent polynomial with exact rational coefficients.
// Negative exponents cover the parameter denominators that appear throughout
// (powers of alpha, omega, hbar); genuine rational functions of a coordinate
// live in RatFunc instead. No zero coefficient is ever stored.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(const Rational& r) {
    if (!r.is_zero()) terms_[kZeroExp] = r;
  }
  MultiPoly(long n) : MultiPoly(Rational(n)) {}

  static MultiPoly constant(const Rational& r) { return MultiPoly(r); }
  static MultiPoly var(Symbol s, int e = 1);
  static MultiPoly monomial(const Rational& coeff, const ExpVec& e);

  const std::map<ExpVec, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == kZeroExp);
  }
  // For constant polynomials only.
  Rational constant_value() const;

  size_t term_count() const { return terms_.size(); }

  // Max/min exponent of s over all terms (0 for the zero polynomial).
  int degree(Symbol s) const;
  int min_degree(Symbol s) const;
  bool depends_on(Symbol s) const { return degree(s) != 0 || min_degree(s) != 0; }

  // True if the polynomial is a single term.
  bool is_monomial() const { return terms_.size() == 1; }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }
  MultiPoly operator*(const Rational& r) const;
  MultiPoly operator/(const Rational& r) const { return *this * (Rational(1) / r); }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(int e) const;

  // Simultaneous substitution: each term maps to coeff * prod binding(s)^e_s,
  // where unbound symbols stand for themselves. A symbol occurring with a
  // negative exponent needs an invertible (monomial) binding.
  MultiPoly substitute(const std::vector<std::pair<Symbol, MultiPoly>>& bindings) const;
  MultiPoly substitute(Symbol s, const MultiPoly& value) const { return substitute({{s, value}}); }

  // Renames a symbol (target must not occur).
  MultiPoly rename(Symbol from, Symbol to) const;

  // Exact evaluation; every symbol appearing must be bound.
  Rational eval(const std::vector<std::pair<Symbol, Rational>>& bindings) const;
  double eval_double(const std::array<double, kNumSymbols>& vals) const;

  MultiPoly derivative(Symbol s) const;

  // Coefficients of powers of s: p = sum_k collect(s)[k] * s^k.
  std::map<int, MultiPoly> collect(Symbol s) const;
  MultiPoly coeff_of(Symbol s, int k) const;

  // Content (gcd of coefficients, sign of leading term) and the common
  // monomial factor; used to keep rational functions reduced.
  Rational rational_content() const;
  ExpVec monomial_gcd() const;
  MultiPoly divide_by_monomial(const ExpVec& m) const;

  // Exact multivariate division; nullopt if b does not divide a.
  static std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b);

  std::string str() const;
  // Parses sums of terms like "-3/16*hbar^2*alpha^-1*E^2".
  static MultiPoly parse(const std::string& s);

 private:
  void add_term(const ExpVec& e, const Rational& r);
  std::map<ExpVec, Rational> terms_;
  friend class RatFunc;
};

inline MultiPoly operator*(const Rational& r, const MultiPoly& p) { return p * r; }

}  // namespace siqs
