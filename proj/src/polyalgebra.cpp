#include "siqs/polyalgebra.hpp"

namespace siqs {

namespace {

const MultiPoly kH = MultiPoly::var(sym::H);
const MultiPoly kA = MultiPoly::var(sym::A);
const MultiPoly kN = MultiPoly::var(sym::N);
const MultiPoly kS = MultiPoly::var(sym::sqrt_delta);

MultiPoly hx_expr() { return kH * Rational(1, 2) + kA * Rational(1, 4); }
MultiPoly hy_expr() { return kH * Rational(1, 2) - kA * Rational(1, 4); }

}  // namespace

MultiPoly reduce_sqrt_delta(const MultiPoly& poly, const MultiPoly& delta) {
  MultiPoly out;
  for (const auto& [e, coeff] : poly.terms()) {
    int a = e[static_cast<size_t>(sym::sqrt_delta.id())];
    int q = (a >= 0) ? a / 2 : -((-a + 1) / 2);
    int r = a - 2 * q;  // 0 or 1
    ExpVec ne = e;
    ne[static_cast<size_t>(sym::sqrt_delta.id())] = static_cast<int16_t>(r);
    out += MultiPoly::monomial(coeff, ne) * delta.pow(q);
  }
  return out;
}

LadderAlgebra::LadderAlgebra(MultiPoly Q, MultiPoly S, MultiPoly lambda_x, MultiPoly lambda_y)
    : Q_(std::move(Q)), S_(std::move(S)), lx_(std::move(lambda_x)), ly_(std::move(lambda_y)) {}

LadderAlgebra LadderAlgebra::for_potential(const PotentialSpec& spec) {
  return LadderAlgebra(spec.x_axis.Q, spec.y_axis.Q, spec.x_axis.lambda, spec.y_axis.lambda);
}

MultiPoly LadderAlgebra::q_at(const MultiPoly& arg) const { return Q_.substitute(sym::E, arg); }
MultiPoly LadderAlgebra::s_at(const MultiPoly& arg) const { return S_.substitute(sym::E, arg); }

MultiPoly LadderAlgebra::shift_coeff(const MultiPoly& f, const Word& w) const {
  MultiPoly dhx = lx_ * Rational(w.ax - w.cx);
  MultiPoly dhy = ly_ * Rational(w.ay - w.cy);
  if (dhx.is_zero() && dhy.is_zero()) return f;
  return f.substitute({{sym::H, kH + dhx + dhy},
                       {sym::A, kA + Rational(2) * dhx - Rational(2) * dhy}});
}

LadderAlgebra::Element LadderAlgebra::mul(const Element& a, const Element& b) const {
  Element out;
  for (const auto& [w1, f1] : a) {
    for (const auto& [w2, f2] : b) {
      MultiPoly coeff = f1 * shift_coeff(f2, w1);
      // x contraction: ax^j axd^k in the middle, then move left past axd^c1.
      int j = w1.ax, k = w2.cx, mcx = std::min(j, k);
      for (int t = 0; t < mcx; ++t)
        coeff *= q_at(hx_expr() + lx_ * Rational(j - t - w1.cx));
      int jy = w1.ay, ky = w2.cy, mcy = std::min(jy, ky);
      for (int t = 0; t < mcy; ++t)
        coeff *= s_at(hy_expr() + ly_ * Rational(jy - t - w1.cy));
      if (coeff.is_zero()) continue;
      Word w;
      w.cx = w1.cx + k - mcx;
      w.ax = w2.ax + j - mcx;
      w.cy = w1.cy + ky - mcy;
      w.ay = w2.ay + jy - mcy;
      // Balanced pairs contract: axd^c ax^a = Q(Hx - (c-1) lx) axd^(c-1) ax^(a-1).
      while (w.cx > 0 && w.ax > 0) {
        coeff *= q_at(hx_expr() - lx_ * Rational(w.cx - 1));
        --w.cx;
        --w.ax;
      }
      while (w.cy > 0 && w.ay > 0) {
        coeff *= s_at(hy_expr() - ly_ * Rational(w.cy - 1));
        --w.cy;
        --w.ay;
      }
      if (coeff.is_zero()) continue;
      auto it = out.find(w);
      if (it == out.end()) {
        out.emplace(w, coeff);
      } else {
        it->second += coeff;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

LadderAlgebra::Element LadderAlgebra::commutator(const Element& a, const Element& b) const {
  Element ab = mul(a, b);
  Element ba = mul(b, a);
  for (auto& [w, f] : ba) f = -f;
  return add(std::move(ab), ba);
}

LadderAlgebra::Element LadderAlgebra::add(Element a, const Element& b) {
  for (const auto& [w, f] : b) {
    auto it = a.find(w);
    if (it == a.end()) {
      a.emplace(w, f);
    } else {
      it->second += f;
      if (it->second.is_zero()) a.erase(it);
    }
  }
  return a;
}

LadderAlgebra::Element LadderAlgebra::scale(const Element& a, const MultiPoly& f) {
  Element out;
  if (f.is_zero()) return out;
  for (const auto& [w, g] : a) out.emplace(w, g * f);
  return out;
}

LadderAlgebra::Element LadderAlgebra::coefficient(const MultiPoly& f) {
  Element e;
  if (!f.is_zero()) e.emplace(Word{}, f);
  return e;
}

bool LadderAlgebra::is_zero(const Element& e) { return e.empty(); }

MultiPoly LadderAlgebra::scalar_part(const Element& e) {
  MultiPoly out;
  for (const auto& [w, f] : e) {
    if (w == Word{}) {
      out = f;
    } else {
      throw NotCentral("element has residual ladder words", f);
    }
  }
  return out;
}

IntegralTriple build_integrals(const PotentialSpec& spec) {
  const int m = spec.res_m, n = spec.res_n;
  if (!((m == 1 && n == 1) || (m == 2 && n == 1)))
    throw UnsupportedResonance("resonance (" + std::to_string(m) + "," + std::to_string(n) +
                               ") builds plain product integrals only");
  LadderAlgebra alg = LadderAlgebra::for_potential(spec);
  IntegralTriple t;
  t.m = m;
  t.n = n;
  t.sigma_squared = spec.sigma_squared();
  t.A_elt = LadderAlgebra::coefficient(kA);
  LadderAlgebra::Word f1w, f2w;
  f1w.cx = m;
  f1w.ay = n;
  f2w.ax = m;
  f2w.cy = n;
  LadderAlgebra::Element f1{{f1w, MultiPoly(Rational(1))}};
  LadderAlgebra::Element f2{{f2w, MultiPoly(Rational(1))}};
  MultiPoly lam = spec.resonance_lambda();
  t.I1 = LadderAlgebra::add(f1, LadderAlgebra::scale(f2, MultiPoly(Rational(-1))));
  t.I2 = LadderAlgebra::scale(LadderAlgebra::add(f1, f2), Rational(4) * lam);
  // [A, I1] = I2 and [A, I2] = 16 lambda^2 I1, certified in the word algebra.
  LadderAlgebra::Element c1 = alg.commutator(t.A_elt, t.I1);
  if (!LadderAlgebra::is_zero(LadderAlgebra::add(c1, LadderAlgebra::scale(t.I2, MultiPoly(Rational(-1))))))
    throw UnsupportedResonance("[A, I1] != I2 for " + spec.name);
  t.delta = Rational(16) * lam * lam;
  LadderAlgebra::Element c2 = alg.commutator(t.A_elt, t.I2);
  if (!LadderAlgebra::is_zero(LadderAlgebra::add(c2, LadderAlgebra::scale(t.I1, -t.delta))))
    throw UnsupportedResonance("[A, I2] != 16 lambda^2 I1 for " + spec.name);
  return t;
}

MultiPoly commutator_rhs(const PotentialSpec& spec) {
  const int m = spec.res_m, n = spec.res_n;
  const MultiPoly& Q = spec.x_axis.Q;
  const MultiPoly& S = spec.y_axis.Q;
  MultiPoly lam = spec.resonance_lambda();
  MultiPoly z = hx_expr(), w = hy_expr();
  auto q_at = [&](const MultiPoly& arg) { return Q.substitute(sym::E, arg); };
  auto s_at = [&](const MultiPoly& arg) { return S.substitute(sym::E, arg); };
  MultiPoly bracket;
  if (m == 1 && n == 1) {
    bracket = q_at(z) * s_at(w + lam) - q_at(z + lam) * s_at(w);
  } else if (m == 2 && n == 1) {
    MultiPoly lx = spec.x_axis.lambda;
    bracket = q_at(z - lx) * q_at(z) * s_at(w + lam) -
              q_at(z + Rational(2) * lx) * q_at(z + lx) * s_at(w);
  } else {
    throw UnsupportedResonance("no closed bracket for this resonance");
  }
  return spec.sigma_squared() * Rational(8) * lam * bracket;
}

MultiPoly commutator_rhs_from_words(const PotentialSpec& spec) {
  LadderAlgebra alg = LadderAlgebra::for_potential(spec);
  IntegralTriple t = build_integrals(spec);
  LadderAlgebra::Element br = alg.commutator(t.I1, t.I2);
  return t.sigma_squared * LadderAlgebra::scalar_part(br);
}

AlgebraSpec to_algebra_spec(const MultiPoly& rhs, const MultiPoly& delta) {
  AlgebraSpec spec;
  spec.delta = delta;
  auto byA = rhs.collect(sym::A);
  for (const auto& [k, coeff] : byA) {
    if (k < 0 || k > 7) throw DegreeTooHigh("A-degree " + std::to_string(k) + " outside 0..7");
    spec.c[static_cast<size_t>(k)] = coeff.rename(sym::H, sym::E);
  }
  return spec;
}

std::array<MultiPoly, 9> casimir_coeffs(const AlgebraSpec& spec) {
  // Solve sum_j d_j s^j [(t+1)^j - t^j] = sum_k c_k s^(k+1) [(t+1)^k + t^k]
  // for d_8..d_1, top down; s^2 reduces to delta. The solution is unique and
  // comes out free of sqrt_delta.
  const MultiPoly t = kN;
  const MultiPoly t1 = kN + MultiPoly(Rational(1));
  MultiPoly rhs;
  for (int k = 0; k <= 7; ++k) {
    const MultiPoly& ck = spec.c[static_cast<size_t>(k)];
    if (ck.is_zero()) continue;
    rhs += ck * kS.pow(k + 1) * (t1.pow(k) + t.pow(k));
  }
  std::array<MultiPoly, 9> d{};
  MultiPoly acc = reduce_sqrt_delta(rhs, spec.delta);  // rhs minus contributions of solved d's
  for (int j = 8; j >= 1; --j) {
    MultiPoly coeff = acc.coeff_of(sym::N, j - 1);
    if (coeff.is_zero()) continue;
    // d_j = coeff / (j * s^j)
    MultiPoly dj = reduce_sqrt_delta(coeff * kS.pow(-j), spec.delta) / Rational(j);
    if (dj.degree(sym::sqrt_delta) != 0 || dj.min_degree(sym::sqrt_delta) != 0)
      throw NotCentral("casimir coefficient d" + std::to_string(j) + " is not sqrt_delta-free", dj);
    d[static_cast<size_t>(j)] = dj;
    acc = reduce_sqrt_delta(acc - dj * kS.pow(j) * (t1.pow(j) - t.pow(j)), spec.delta);
  }
  // The constant slot must close exactly.
  if (!acc.is_zero()) {
    MultiPoly c0 = acc.coeff_of(sym::N, 0);
    if (acc != c0 || !c0.is_zero())
      throw NotCentral("centrality recurrence has nonzero residual", acc);
  }
  return d;
}

MultiPoly casimir_value(const PotentialSpec& spec) {
  LadderAlgebra alg = LadderAlgebra::for_potential(spec);
  IntegralTriple t = build_integrals(spec);
  AlgebraSpec aspec = to_algebra_spec(commutator_rhs_from_words(spec), t.delta);
  std::array<MultiPoly, 9> d = casimir_coeffs(aspec);

  LadderAlgebra::Element k_elt = alg.mul(t.I2, t.I2);
  LadderAlgebra::Element b2 = alg.mul(t.I1, t.I1);
  k_elt = LadderAlgebra::add(std::move(k_elt), LadderAlgebra::scale(b2, -t.delta));
  k_elt = LadderAlgebra::scale(k_elt, t.sigma_squared);
  MultiPoly poly_part;
  for (int k = 1; k <= 8; ++k)
    if (!d[static_cast<size_t>(k)].is_zero())
      poly_part += d[static_cast<size_t>(k)].rename(sym::E, sym::H) * kA.pow(k);
  k_elt = LadderAlgebra::add(std::move(k_elt), LadderAlgebra::coefficient(poly_part));

  MultiPoly scalar = LadderAlgebra::scalar_part(k_elt);
  auto byA = scalar.collect(sym::A);
  for (const auto& [k, coeff] : byA)
    if (k != 0)
      throw NotCentral("Casimir retains A-dependence", scalar);
  return scalar.rename(sym::H, sym::E);
}

}  // namespace siqs
