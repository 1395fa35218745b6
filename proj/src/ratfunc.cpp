#include "siqs/ratfunc.hpp"

namespace siqs {

namespace {

// Strips rational content and the common monomial factor.
MultiPoly primitive_part(const MultiPoly& p) {
  if (p.is_zero()) return p;
  MultiPoly q = p.divide_by_monomial(p.monomial_gcd());
  Rational c = q.rational_content();
  return q / c;
}

}  // namespace

RatFunc::RatFunc(const MultiPoly& n, const MultiPoly& d) : num_(n), den_(d) {
  if (d.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = MultiPoly(Rational(1));
    return;
  }
  // Pull monomial factors out of both and cancel.
  ExpVec mn = num_.monomial_gcd(), md = den_.monomial_gcd();
  ExpVec common;
  for (size_t i = 0; i < kNumSymbols; ++i) common[i] = std::min(mn[i], md[i]);
  bool nontrivial = false;
  for (size_t i = 0; i < kNumSymbols; ++i) nontrivial |= common[i] != 0;
  if (nontrivial) {
    num_ = num_.divide_by_monomial(common);
    den_ = den_.divide_by_monomial(common);
  }
  Rational cd = den_.rational_content();
  if (!cd.is_one()) {
    den_ = den_ / cd;
    num_ = num_ / cd;
  }
  if (den_.is_constant() && !den_.constant_value().is_one()) {
    num_ = num_ / den_.constant_value();
    den_ = MultiPoly(Rational(1));
  }
}

MultiPoly RatFunc::as_polynomial() const {
  if (!is_polynomial()) {
    // Allow monomial denominators: fold into Laurent exponents.
    if (den_.is_monomial()) return num_ * den_.pow(-1);
    throw std::domain_error("RatFunc::as_polynomial: denominator " + den_.str());
  }
  return num_ / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

MultiPoly pseudo_rem(const MultiPoly& a, const MultiPoly& b, Symbol var) {
  int db = b.degree(var);
  MultiPoly lb = b.coeff_of(var, db);
  MultiPoly r = a;
  int dr = r.degree(var);
  while (!r.is_zero() && dr >= db) {
    MultiPoly lr = r.coeff_of(var, dr);
    // lb * r - lr * x^(dr-db) * b kills the leading term.
    r = lb * r - lr * MultiPoly::var(var, dr - db) * b;
    int nd = r.degree(var);
    if (nd == dr && !r.coeff_of(var, dr).is_zero())
      throw std::logic_error("pseudo_rem: degree did not drop");
    dr = r.is_zero() ? -1 : r.degree(var);
    while (!r.is_zero() && r.coeff_of(var, dr).is_zero()) --dr;
  }
  return r;
}

MultiPoly gcd_univariate(const MultiPoly& a0, const MultiPoly& b0, Symbol var) {
  MultiPoly a = primitive_part(a0), b = primitive_part(b0);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree(var) < b.degree(var)) std::swap(a, b);
  while (!b.is_zero() && b.degree(var) > 0) {
    MultiPoly r = pseudo_rem(a, b, var);
    a = b;
    b = r.is_zero() ? r : primitive_part(r);
    if (!b.is_zero() && a.degree(var) < b.degree(var)) std::swap(a, b);
  }
  if (!b.is_zero()) return MultiPoly(Rational(1));  // degree-0 remainder: coprime in var
  return a;
}

RatFunc RatFunc::reduced(Symbol var) const {
  if (num_.is_zero() || den_.is_constant()) return *this;
  if (!num_.depends_on(var) || !den_.depends_on(var)) return *this;
  // Clear negative powers of var so both sides are polynomial in it.
  int shift = std::min(num_.min_degree(var), den_.min_degree(var));
  MultiPoly n = num_, d = den_;
  if (shift < 0) {
    n = n * MultiPoly::var(var, -shift);
    d = d * MultiPoly::var(var, -shift);
  }
  MultiPoly g = gcd_univariate(n, d, var);
  if (g.is_constant() || g.degree(var) == 0) return RatFunc(n, d);
  auto qn = MultiPoly::exact_divide(n, g);
  auto qd = MultiPoly::exact_divide(d, g);
  if (!qn || !qd) return RatFunc(n, d);  // content mismatch: leave as-is, still exact
  return RatFunc(*qn, *qd);
}

RatFunc RatFunc::derivative(Symbol var) const {
  MultiPoly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
  RatFunc r(n, den_ * den_);
  return r.reduced(var);
}

RatFunc RatFunc::rename(Symbol from, Symbol to) const {
  return RatFunc(num_.rename(from, to), den_.rename(from, to));
}

RatFunc RatFunc::substitute(Symbol s, const MultiPoly& value) const {
  return RatFunc(num_.substitute(s, value), den_.substitute(s, value));
}

double RatFunc::eval_double(const std::array<double, kNumSymbols>& vals) const {
  return num_.eval_double(vals) / den_.eval_double(vals);
}

Rational RatFunc::eval(const std::vector<std::pair<Symbol, Rational>>& bindings) const {
  Rational d = den_.eval(bindings);
  if (d.is_zero()) throw std::domain_error("RatFunc::eval: denominator vanishes");
  return num_.eval(bindings) / d;
}

std::string RatFunc::str() const {
  if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace siqs
