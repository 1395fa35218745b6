#pragma once

#include "siqs/ratfunc.hpp"

namespace siqs {

// One-dimensional linear differential operator sum_k r_k(var) D^k with
// rational-function coefficients. Composition follows the Leibniz rule
// exactly; coefficients are gcd-reduced in var after every composition.
class DiffOp {
 public:
  DiffOp() : var_(sym::x) {}
  explicit DiffOp(Symbol var) : var_(var) {}

  static DiffOp identity(Symbol var) { return mul_op(var, RatFunc(Rational(1))); }
  // Multiplication by a rational function.
  static DiffOp mul_op(Symbol var, const RatFunc& r);
  // c * D^k.
  static DiffOp d_op(Symbol var, int k = 1, const RatFunc& c = RatFunc(Rational(1)));

  Symbol var() const { return var_; }
  const std::map<int, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int order() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  RatFunc coeff(int k) const;

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  DiffOp scaled(const RatFunc& c) const;

  friend bool operator==(const DiffOp& a, const DiffOp& b);
  friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

  DiffOp rename(Symbol to) const;

 private:
  void add_term(int k, const RatFunc& c);
  Symbol var_;
  std::map<int, RatFunc> terms_;
  friend DiffOp compose(const DiffOp& f, const DiffOp& g);
};

// Operator product f∘g (apply g first).
DiffOp compose(const DiffOp& f, const DiffOp& g);
// f∘g - g∘f.
DiffOp commutator(const DiffOp& f, const DiffOp& g);
// Formal adjoint under the L2 pairing: (r D^k)† = (-D)^k ∘ r.
DiffOp adjoint(const DiffOp& f);
// q(h) for univariate q in energy_sym, via Horner in operator composition.
DiffOp poly_of_operator(const MultiPoly& q, Symbol energy_sym, const DiffOp& h);

// Writes op as a polynomial in h (h of order >= 1); nullopt if impossible.
std::optional<MultiPoly> operator_as_polynomial_in(const DiffOp& op, const DiffOp& h,
                                                   Symbol energy_sym);

struct NotALadder : std::runtime_error {
  explicit NotALadder(const std::string& what) : std::runtime_error(what) {}
};
struct QMismatch : std::runtime_error {
  QMismatch(const std::string& what, DiffOp residual_op)
      : std::runtime_error(what), residual(std::move(residual_op)) {}
  DiffOp residual;
};

// Certificate that aplus is a ladder for h: [h, aplus] = lambda * aplus and,
// with a = adjoint(aplus), the products close on a polynomial
// aplus∘a = Q(h), a∘aplus = Q(h + lambda).
struct LadderCert {
  MultiPoly lambda;
  MultiPoly Q;  // univariate in the given energy symbol
  bool verified = false;
};

// Derives lambda from [h, aplus] and Q from adjoint(aplus)∘aplus; throws
// NotALadder / QMismatch. expected_Q, when given, is checked for equality.
LadderCert verify_ladder(const DiffOp& h, const DiffOp& aplus, Symbol energy_sym,
                         const std::optional<MultiPoly>& expected_Q = std::nullopt);

// Checks [H, Ax+^m Ay^n] = (m*lx - n*ly) Ax+^m Ay^n factor-wise and returns
// true iff m*lx == n*ly (the resonance condition making the pair integrals).
bool verify_tensor_integral(const DiffOp& hx, const DiffOp& hy, const DiffOp& axp,
                            const DiffOp& ayp, int m, int n, Symbol energy_sym);

}  // namespace siqs
