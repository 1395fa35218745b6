#include "siqs/diffop.hpp"

namespace siqs {

namespace {

Rational binomial(int n, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
  return r;
}

// Converts a var-free rational function into a (Laurent) polynomial in the
// parameters; requires the denominator to divide the numerator exactly.
MultiPoly param_poly_of(const RatFunc& rf, Symbol var) {
  RatFunc r = rf.reduced(var);
  if (r.num().depends_on(var) || r.den().depends_on(var))
    throw NotALadder("coefficient ratio depends on " + std::string(var.name()) + ": " + rf.str());
  if (r.den().is_monomial()) return r.num() * r.den().pow(-1);
  auto q = MultiPoly::exact_divide(r.num(), r.den());
  if (!q) throw NotALadder("coefficient ratio is not polynomial: " + rf.str());
  return *q;
}

}  // namespace

DiffOp DiffOp::mul_op(Symbol var, const RatFunc& r) {
  DiffOp op(var);
  op.add_term(0, r);
  return op;
}

DiffOp DiffOp::d_op(Symbol var, int k, const RatFunc& c) {
  DiffOp op(var);
  op.add_term(k, c);
  return op;
}

RatFunc DiffOp::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? RatFunc() : it->second;
}

void DiffOp::add_term(int k, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp DiffOp::operator-() const {
  DiffOp r(var_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  if (o.var_ != var_ && !o.is_zero() && !is_zero())
    throw std::domain_error("DiffOp: mixed variables");
  if (is_zero()) var_ = o.var_;
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  if (o.var_ != var_ && !o.is_zero() && !is_zero())
    throw std::domain_error("DiffOp: mixed variables");
  if (is_zero()) var_ = o.var_;
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

DiffOp DiffOp::scaled(const RatFunc& c) const {
  DiffOp r(var_);
  if (c.is_zero()) return r;
  for (const auto& [k, rc] : terms_) r.terms_.emplace(k, rc * c);
  return r;
}

bool operator==(const DiffOp& a, const DiffOp& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.var() != b.var()) return false;
  for (const auto& [k, c] : a.terms())
    if (b.coeff(k) != c) return false;
  for (const auto& [k, c] : b.terms())
    if (a.coeff(k) != c) return false;
  return true;
}

DiffOp DiffOp::rename(Symbol to) const {
  DiffOp r(to);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c.rename(var_, to));
  return r;
}

DiffOp compose(const DiffOp& f, const DiffOp& g) {
  if (f.is_zero() || g.is_zero()) return DiffOp(f.is_zero() ? g.var() : f.var());
  if (f.var() != g.var()) throw std::domain_error("compose: mixed variables");
  Symbol var = f.var();
  DiffOp out(var);
  for (const auto& [k, r] : f.terms()) {
    for (const auto& [j, s] : g.terms()) {
      // (r D^k)(s D^j) = r * sum_i C(k,i) (D^i s) D^(k-i+j)
      RatFunc ds = s;
      for (int i = 0; i <= k; ++i) {
        if (!ds.is_zero()) out.add_term(k - i + j, r * ds * RatFunc(binomial(k, i)));
        if (i < k) ds = ds.derivative(var);
      }
    }
  }
  // Coefficient blow-up control.
  DiffOp reduced(var);
  for (const auto& [k, c] : out.terms()) reduced.add_term(k, c.reduced(var));
  return reduced;
}

DiffOp commutator(const DiffOp& f, const DiffOp& g) { return compose(f, g) - compose(g, f); }

DiffOp adjoint(const DiffOp& f) {
  DiffOp out(f.var());
  for (const auto& [k, c] : f.terms()) {
    // (c D^k)† = (-1)^k D^k ∘ c
    DiffOp dk = DiffOp::d_op(f.var(), k, RatFunc(Rational(k % 2 == 0 ? 1 : -1)));
    out += compose(dk, DiffOp::mul_op(f.var(), c));
  }
  return out;
}

DiffOp poly_of_operator(const MultiPoly& q, Symbol energy_sym, const DiffOp& h) {
  auto coeffs = q.collect(energy_sym);
  int deg = q.degree(energy_sym);
  if (q.min_degree(energy_sym) < 0)
    throw std::domain_error("poly_of_operator: negative powers of energy symbol");
  DiffOp acc(h.var());
  for (int k = deg; k >= 0; --k) {
    if (k < deg) acc = compose(acc, h);
    auto it = coeffs.find(k);
    if (it != coeffs.end()) acc += DiffOp::mul_op(h.var(), RatFunc(it->second));
  }
  return acc;
}

std::optional<MultiPoly> operator_as_polynomial_in(const DiffOp& op, const DiffOp& h,
                                                   Symbol energy_sym) {
  const int hord = h.order();
  if (hord < 1) return std::nullopt;
  DiffOp rem = op;
  MultiPoly q;
  std::map<int, DiffOp> hpow;  // cached powers
  hpow[0] = DiffOp::identity(h.var());
  auto hpow_get = [&](int k) {
    for (int i = 1; i <= k; ++i)
      if (!hpow.count(i)) hpow[i] = compose(hpow[i - 1], h);
    return hpow[k];
  };
  while (!rem.is_zero()) {
    int d = rem.order();
    if (d == 0) {
      RatFunc c0 = rem.coeff(0).reduced(h.var());
      if (c0.depends_on(h.var())) return std::nullopt;
      q += param_poly_of(c0, h.var());
      break;
    }
    if (d % hord != 0) return std::nullopt;
    int k = d / hord;
    RatFunc lead_h = h.coeff(hord);
    RatFunc lead_ratio = rem.coeff(d);
    for (int i = 0; i < k; ++i) lead_ratio = lead_ratio / lead_h;
    MultiPoly qk;
    try {
      qk = param_poly_of(lead_ratio, h.var());
    } catch (const NotALadder&) {
      return std::nullopt;
    }
    q += qk * MultiPoly::var(energy_sym, k);
    rem -= hpow_get(k).scaled(RatFunc(qk));
    if (!rem.is_zero() && rem.order() >= d) return std::nullopt;
  }
  return q;
}

LadderCert verify_ladder(const DiffOp& h, const DiffOp& aplus, Symbol energy_sym,
                         const std::optional<MultiPoly>& expected_Q) {
  if (aplus.is_zero()) throw NotALadder("ladder operator is zero");
  DiffOp comm = commutator(h, aplus);
  if (comm.is_zero()) throw NotALadder("[h, a+] vanishes; lambda would be zero");
  int k0 = aplus.order();
  if (comm.order() > k0) throw NotALadder("[h, a+] has higher order than a+");
  RatFunc lam_rf = comm.coeff(k0) / aplus.coeff(k0);
  if (comm != aplus.scaled(lam_rf))
    throw NotALadder("[h, a+] is not proportional to a+");
  MultiPoly lambda = param_poly_of(lam_rf, h.var());
  if (lambda.is_zero()) throw NotALadder("lambda vanishes");

  DiffOp a = adjoint(aplus);
  // a+∘a = Q(h) and a∘a+ = Q(h + lambda).
  DiffOp prod_num = compose(aplus, a);
  DiffOp prod_inv = compose(a, aplus);
  auto Qh = operator_as_polynomial_in(prod_num, h, energy_sym);
  if (!Qh) throw QMismatch("a+∘a is not a polynomial in h", prod_num);
  MultiPoly Q = *Qh;
  MultiPoly Q_shift = Q.substitute(energy_sym, MultiPoly::var(energy_sym) + lambda);
  DiffOp expect_up = poly_of_operator(Q_shift, energy_sym, h);
  if (prod_inv != expect_up)
    throw QMismatch("a∘a+ does not equal Q(h+lambda)", prod_inv - expect_up);
  if (expected_Q && *expected_Q != Q)
    throw QMismatch("derived Q differs from catalogued Q", prod_num);
  LadderCert cert;
  cert.lambda = lambda;
  cert.Q = Q;
  cert.verified = true;
  return cert;
}

bool verify_tensor_integral(const DiffOp& hx, const DiffOp& hy, const DiffOp& axp,
                            const DiffOp& ayp, int m, int n, Symbol energy_sym) {
  if (m <= 0 || n <= 0) throw std::invalid_argument("verify_tensor_integral: m, n must be positive");
  LadderCert cx = verify_ladder(hx, axp, energy_sym);
  LadderCert cy = verify_ladder(hy, ayp, energy_sym);
  // Power certificates: [hx, (a+)^m] = m*lambda_x (a+)^m, and similarly in y.
  DiffOp axm = DiffOp::identity(axp.var());
  for (int i = 0; i < m; ++i) axm = compose(axm, axp);
  DiffOp lhs = commutator(hx, axm);
  if (lhs != axm.scaled(RatFunc(cx.lambda * Rational(m))))
    throw NotALadder("[hx, ax+^m] != m lambda_x ax+^m");
  DiffOp ayn = DiffOp::identity(ayp.var());
  for (int i = 0; i < n; ++i) ayn = compose(ayn, ayp);
  DiffOp lhy = commutator(hy, ayn);
  if (lhy != ayn.scaled(RatFunc(cy.lambda * Rational(n))))
    throw NotALadder("[hy, ay+^n] != n lambda_y ay+^n");
  return cx.lambda * Rational(m) == cy.lambda * Rational(n);
}

}  // namespace siqs
