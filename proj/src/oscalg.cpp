#include "siqs/oscalg.hpp"

namespace siqs {

namespace {

Rational binom(int n, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
  return r;
}

const MultiPoly kN = MultiPoly::var(sym::N);
const MultiPoly kU = MultiPoly::var(sym::u);
const MultiPoly kT = MultiPoly::var(sym::x);  // evaluation point of phi
const MultiPoly kS = MultiPoly::var(sym::sqrt_delta);

}  // namespace

MultiPoly OscAlgebra::reduce(const MultiPoly& f) const { return reduce_sqrt_delta(f, delta_); }

OscAlgebra::Element OscAlgebra::mul(const Element& a, const Element& b) const {
  Element out;
  for (const auto& [k1, f1] : a) {
    const auto [p1, q1] = k1;
    for (const auto& [k2, f2] : b) {
      const auto [p2, q2] = k2;
      MultiPoly coeff = f2.substitute(sym::N, kN + MultiPoly(Rational(q1 - p1)));
      coeff = f1 * coeff;
      // b^q1 (b+)^p2 in the middle, then shift left through (b+)^p1.
      int mc = std::min(q1, p2);
      for (int t = 0; t < mc; ++t)
        coeff *= phi_.substitute(sym::N, kN + MultiPoly(Rational(q1 - t - p1)));
      int p = p1 + p2 - mc, q = q1 + q2 - mc;
      // Balanced pairs contract: (b+)^p b^q -> Phi(N - (p-1)) (b+)^(p-1) b^(q-1).
      while (p > 0 && q > 0) {
        coeff *= phi_.substitute(sym::N, kN - MultiPoly(Rational(p - 1)));
        --p;
        --q;
      }
      coeff = reduce(coeff);
      if (coeff.is_zero()) continue;
      Key key{p, q};
      auto it = out.find(key);
      if (it == out.end()) {
        out.emplace(key, coeff);
      } else {
        it->second += coeff;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

OscAlgebra::Element OscAlgebra::commutator(const Element& a, const Element& b) const {
  Element ab = mul(a, b);
  Element ba = mul(b, a);
  for (auto& [k, f] : ba) f = -f;
  return add(std::move(ab), ba);
}

OscAlgebra::Element OscAlgebra::add(Element a, const Element& b) {
  for (const auto& [k, f] : b) {
    auto it = a.find(k);
    if (it == a.end()) {
      a.emplace(k, f);
    } else {
      it->second += f;
      if (it->second.is_zero()) a.erase(it);
    }
  }
  return a;
}

OscAlgebra::Element OscAlgebra::scale(const Element& a, const MultiPoly& f) {
  Element out;
  if (f.is_zero()) return out;
  for (const auto& [k, g] : a) out.emplace(k, g * f);
  return out;
}

OscAlgebra::Element OscAlgebra::coefficient(const MultiPoly& f) {
  Element e;
  if (!f.is_zero()) e.emplace(Key{0, 0}, f);
  return e;
}

OscAlgebra::Element OscAlgebra::ladder_up() { return {{Key{1, 0}, MultiPoly(Rational(1))}}; }
OscAlgebra::Element OscAlgebra::ladder_down() { return {{Key{0, 1}, MultiPoly(Rational(1))}}; }

bool OscAlgebra::is_zero(const Element& e) const {
  for (const auto& [k, f] : e)
    if (!reduce_sqrt_delta(f, delta_).is_zero()) return false;
  return true;
}

StructureFn derive_phi(const AlgebraSpec& spec, const MultiPoly& K) {
  const MultiPoly& delta = spec.delta;
  // R(t) = (1/2) sum_k c_k s^(k-1) t^k  (the forward difference of Phi).
  MultiPoly R;
  for (int k = 0; k <= 7; ++k) {
    const MultiPoly& ck = spec.c[static_cast<size_t>(k)];
    if (ck.is_zero()) continue;
    R += ck * kS.pow(k - 1) * kT.pow(k) * Rational(1, 2);
  }
  R = reduce_sqrt_delta(R, delta);
  const int degR = R.degree(sym::x);
  // Antidifference, coefficients solved top-down; constant slot left at 0.
  std::vector<MultiPoly> phi(static_cast<size_t>(degR) + 2);
  for (int i = degR; i >= 0; --i) {
    MultiPoly rhs = R.coeff_of(sym::x, i);
    for (int j = i + 2; j <= degR + 1; ++j)
      rhs -= phi[static_cast<size_t>(j)] * binom(j, i);
    phi[static_cast<size_t>(i + 1)] = rhs / Rational(i + 1);
  }
  MultiPoly phi_tilde;
  for (int j = 1; j <= degR + 1; ++j) phi_tilde += phi[static_cast<size_t>(j)] * kT.pow(j);

  // Pin the constant with the Casimir relation
  // Phi(t) + Phi(t+1) = (P_A(t) - K) / (2 delta).
  std::array<MultiPoly, 9> d = casimir_coeffs(spec);
  MultiPoly pa;
  for (int j = 1; j <= 8; ++j)
    if (!d[static_cast<size_t>(j)].is_zero()) pa += d[static_cast<size_t>(j)] * kS.pow(j) * kT.pow(j);
  MultiPoly target = reduce_sqrt_delta((pa - K) * delta.pow(-1) * Rational(1, 2), delta);
  MultiPoly sum_tilde = phi_tilde + phi_tilde.substitute(sym::x, kT + MultiPoly(Rational(1)));
  MultiPoly G = reduce_sqrt_delta(target - sum_tilde, delta);
  MultiPoly g0 = G.coeff_of(sym::x, 0);
  if (G != g0) throw Inconsistent("structure-function sum rule is not t-independent", G - g0);
  StructureFn out;
  out.phi_t = reduce_sqrt_delta(phi_tilde + g0 * Rational(1, 2), delta);
  return out;
}

MultiPoly reduce_casimir(const AlgebraSpec& spec, const StructureFn& phi) {
  std::array<MultiPoly, 9> d = casimir_coeffs(spec);
  MultiPoly pa;
  for (int j = 1; j <= 8; ++j)
    if (!d[static_cast<size_t>(j)].is_zero()) pa += d[static_cast<size_t>(j)] * kS.pow(j) * kT.pow(j);
  MultiPoly sum = phi.phi_t + phi.phi_t.substitute(sym::x, kT + MultiPoly(Rational(1)));
  MultiPoly k_real = reduce_sqrt_delta(Rational(-2) * spec.delta * sum + pa, spec.delta);
  MultiPoly k0 = k_real.coeff_of(sym::x, 0);
  if (k_real != k0)
    throw NotCentral("realized Casimir keeps t-dependence", k_real - k0);
  if (k0.degree(sym::sqrt_delta) != 0 || k0.min_degree(sym::sqrt_delta) != 0)
    throw NotCentral("realized Casimir keeps sqrt_delta", k0);
  return k0;
}

RelationReport check_relations(const AlgebraSpec& spec, const StructureFn& phi) {
  MultiPoly phiN = phi.phi_t.substitute(sym::x, kN + kU);
  OscAlgebra alg(phiN, spec.delta);
  OscAlgebra::Element A = OscAlgebra::coefficient(kS * (kN + kU));
  OscAlgebra::Element B = OscAlgebra::add(OscAlgebra::ladder_up(), OscAlgebra::ladder_down());
  OscAlgebra::Element C = OscAlgebra::add(
      OscAlgebra::scale(OscAlgebra::ladder_up(), kS),
      OscAlgebra::scale(OscAlgebra::ladder_down(), -kS));
  RelationReport rep;
  auto expect_zero = [&](const OscAlgebra::Element& e, int which, const std::string& what) {
    if (!alg.is_zero(e)) throw RelationFailed(which, what + " fails");
  };
  expect_zero(OscAlgebra::add(alg.commutator(A, B), OscAlgebra::scale(C, MultiPoly(Rational(-1)))),
              1, "[A,B] = C");
  expect_zero(OscAlgebra::add(alg.commutator(A, C), OscAlgebra::scale(B, -spec.delta)), 2,
              "[A,C] = delta B");
  MultiPoly rhs;
  for (int k = 0; k <= 7; ++k) {
    const MultiPoly& ck = spec.c[static_cast<size_t>(k)];
    if (!ck.is_zero()) rhs += ck * (kS * (kN + kU)).pow(k);
  }
  rhs = reduce_sqrt_delta(rhs, spec.delta);
  expect_zero(OscAlgebra::add(alg.commutator(B, C), OscAlgebra::coefficient(-rhs)), 3,
              "[B,C] = sum c_k A^k");
  rep.ok = true;
  rep.detail = "all three defining relations hold";
  return rep;
}

MultiPoly phi_closed_form_reference(const AlgebraSpec& spec, const MultiPoly& K) {
  const MultiPoly &m = spec.c[7], &n = spec.c[6], &mu = spec.c[5], &nu = spec.c[4],
                  &al = spec.c[3], &be = spec.c[2], &ga = spec.c[1], &ep = spec.c[0];
  const MultiPoly& dl = spec.delta;
  auto sp = [&](int halves) { return kS.pow(halves); };  // delta^(halves/2)
  MultiPoly t = kT;
  MultiPoly out =
      m * sp(6) * Rational(1, 16) * t.pow(8) +
      (n * sp(5) / Rational(14) - m * sp(6) / Rational(4)) * t.pow(7) +
      (mu * sp(4) / Rational(12) + m * sp(6) * Rational(7, 24) - n * sp(5) / Rational(4)) * t.pow(6) +
      (nu * sp(3) / Rational(10) - mu * sp(4) / Rational(4) + n * sp(5) / Rational(4)) * t.pow(5) +
      (al * sp(2) / Rational(8) + mu * sp(4) * Rational(5, 24) - nu * sp(3) / Rational(4) -
       m * sp(6) * Rational(7, 48)) *
          t.pow(4) +
      (be * sp(1) / Rational(6) + nu * sp(3) / Rational(6) - al * sp(2) / Rational(4) -
       n * sp(5) / Rational(12)) *
          t.pow(3) +
      (al * sp(2) / Rational(8) - mu * sp(4) / Rational(24) + ga / Rational(4) -
       be * sp(1) / Rational(4) + m * sp(6) / Rational(24)) *
          t.pow(2) +
      (ep * sp(-1) / Rational(2) + be * sp(1) / Rational(12) - ga / Rational(4) -
       n * sp(5) / Rational(84) - nu * sp(3) / Rational(60)) *
          t -
      ep * sp(-1) / Rational(4) - K * dl.pow(-1) / Rational(4);
  return reduce_sqrt_delta(out, dl);
}

}  // namespace siqs
