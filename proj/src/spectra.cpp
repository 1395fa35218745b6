#include "siqs/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace siqs {

namespace {

const MultiPoly kT = MultiPoly::var(sym::x);
const MultiPoly kE = MultiPoly::var(sym::E);

// ---- univariate rational-coefficient helpers (ascending order) ------------

void strip(std::vector<Rational>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Rational eval_poly(const std::vector<Rational>& p, const Rational& v) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * v + *it;
  return acc;
}

std::vector<Rational> poly_derivative(const std::vector<Rational>& p) {
  std::vector<Rational> d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  strip(d);
  return d;
}

// Remainder of a / b over the rationals.
std::vector<Rational> poly_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
  strip(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational q = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
    strip(a);
  }
  return a;
}

// Exact quotient (remainder known to vanish).
std::vector<Rational> poly_quot(std::vector<Rational> a, const std::vector<Rational>& b) {
  strip(a);
  std::vector<Rational> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
    strip(a);
  }
  return q;
}

int sign_variations(const std::vector<std::vector<Rational>>& chain, const Rational& v) {
  int var = 0, prev = 0;
  for (const auto& p : chain) {
    int s = eval_poly(p, v).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

int count_real_roots(const std::vector<Rational>& poly_in, const Rational& lo, const Rational& hi) {
  std::vector<Rational> p = poly_in;
  strip(p);
  while (p.size() > 1) {
    // Reduce to the square-free part: p / gcd(p, p').
    std::vector<Rational> a = p, b = poly_derivative(p);
    while (!b.empty() && b.size() > 1) {
      auto r = poly_rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!b.empty()) break;       // gcd is a constant: already square-free
    if (a.size() <= 1) break;    // degenerate
    p = poly_quot(p, a);
    strip(p);
  }
  if (p.size() <= 1) return 0;
  std::vector<std::vector<Rational>> chain{p, poly_derivative(p)};
  while (chain.back().size() > 1) {
    auto r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;  // cannot occur for square-free input
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  int n = sign_variations(chain, lo) - sign_variations(chain, hi);
  if (eval_poly(p, hi).is_zero()) --n;  // open interval
  return n;
}

PhysicalRealization physical_realization(const PotentialSpec& spec) {
  PhysicalRealization out;
  IntegralTriple triple = build_integrals(spec);
  out.algebra = to_algebra_spec(commutator_rhs(spec), triple.delta);
  out.casimir = casimir_value(spec);
  out.twisted = (spec.scaling_i_parity % 2 == 0);
  out.realized = out.algebra;
  out.realized_K = out.casimir;
  if (out.twisted) {
    for (auto& ck : out.realized.c) ck = -ck;
    out.realized_K = -out.realized_K;
  }
  StructureFn phi = derive_phi(out.realized, out.realized_K);
  out.s_expr = Rational(4) * spec.resonance_lambda();
  if (out.s_expr * out.s_expr != triple.delta)
    throw Inconsistent("sqrt_delta branch does not square to delta", out.s_expr);
  out.phi.phi_t = phi.phi_t.substitute(sym::sqrt_delta, out.s_expr);
  return out;
}

namespace {

// Best rational approximation with bounded denominator (continued fractions).
std::optional<Rational> rationalize(double v, long max_den = 1 << 14, double tol = 1e-7) {
  if (!std::isfinite(v)) return std::nullopt;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(x);
    if (fl > 1e17 || fl < -1e17) break;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double num = static_cast<double>(p1), den = static_cast<double>(q1);
    if (std::abs(v - num / den) < tol) return Rational(p1, q1);
    double frac = x - fl;
    if (std::abs(frac) < 1e-15) break;
    x = 1.0 / frac;
  }
  if (q1 != 0 && std::abs(v - static_cast<double>(p1) / static_cast<double>(q1)) < tol)
    return Rational(p1, q1);
  return std::nullopt;
}

std::vector<double> numeric_roots(const std::vector<Rational>& poly) {
  std::vector<Rational> p = poly;
  strip(p);
  const int d = static_cast<int>(p.size()) - 1;
  std::vector<double> out;
  if (d < 1) return out;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i)
    comp(i, d - 1) = -(p[static_cast<size_t>(i)] / p.back()).to_double();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  for (int i = 0; i < d; ++i) {
    auto ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) < 1e-6 * (1.0 + std::abs(ev.real()))) out.push_back(ev.real());
  }
  return out;
}

// All rational roots (with multiplicity) of a rational-coefficient poly;
// nullopt when the polynomial does not split over the rationals.
std::optional<std::vector<Rational>> rational_roots(std::vector<Rational> p) {
  strip(p);
  std::vector<Rational> roots;
  if (p.size() <= 1) return roots;
  std::vector<double> numeric = numeric_roots(p);
  std::vector<Rational> candidates;
  for (double v : numeric) {
    if (auto r = rationalize(v)) candidates.push_back(*r);
  }
  for (const Rational& cand : candidates) {
    while (p.size() > 1 && eval_poly(p, cand).is_zero()) {
      // synthetic division by (x - cand)
      std::vector<Rational> q(p.size() - 1);
      Rational carry(0);
      for (size_t i = p.size(); i-- > 1;) {
        q[i - 1] = p[i] + carry;
        carry = q[i - 1] * cand;
      }
      roots.push_back(cand);
      p = std::move(q);
      strip(p);
    }
  }
  if (p.size() > 1) return std::nullopt;
  return roots;
}

std::vector<Rational> coeffs_in_x(const MultiPoly& bivar, const Rational& e_val) {
  auto byx = bivar.collect(sym::x);
  int deg = bivar.degree(sym::x);
  std::vector<Rational> out(static_cast<size_t>(deg) + 1, Rational(0));
  for (const auto& [k, coeff] : byx)
    out[static_cast<size_t>(k)] = coeff.eval({{sym::E, e_val}});
  strip(out);
  return out;
}

}  // namespace

RootList factor_phi(const StructureFn& phi) {
  if (phi.phi_t.degree(sym::sqrt_delta) != 0 || phi.phi_t.min_degree(sym::sqrt_delta) != 0)
    throw NotLinearlyFactorable("phi still contains sqrt_delta; substitute a branch first");
  const int d = phi.degree();
  if (d <= 0) throw NotLinearlyFactorable("phi is constant");
  MultiPoly leading = phi.phi_t.coeff_of(sym::x, d);
  if (leading.depends_on(sym::E) || !leading.is_monomial())
    throw NotLinearlyFactorable("leading coefficient is not an E-free monomial");

  // Scale E so roots become rational-linear: E = e * hbar^2 / alpha.
  MultiPoly scaled = phi.phi_t.substitute(
      sym::E, kE * MultiPoly::var(sym::hbar, 2) * MultiPoly::var(sym::alpha, -1));
  MultiPoly norm = scaled * leading.pow(-1);
  for (const auto& [e, c] : norm.terms()) {
    for (size_t i = 0; i < kNumSymbols; ++i) {
      if (e[i] != 0 && Symbol(static_cast<int>(i)) != sym::x && Symbol(static_cast<int>(i)) != sym::E)
        throw NotLinearlyFactorable("coefficients are not rational after scaling");
    }
  }

  const std::array<Rational, 3> probes = {Rational(17, 5), Rational(23, 7), Rational(-31, 11)};
  std::array<std::vector<Rational>, 3> roots_at;
  for (size_t i = 0; i < probes.size(); ++i) {
    auto r = rational_roots(coeffs_in_x(norm, probes[i]));
    if (!r || static_cast<int>(r->size()) != d)
      throw NotLinearlyFactorable("probe polynomial does not split into rational roots");
    std::sort(r->begin(), r->end());
    roots_at[i] = *r;
  }

  // Match roots across probes into lines kappa*e + rho.
  struct Line {
    Rational kappa, rho;
  };
  std::vector<Line> lines;
  std::vector<bool> used1(static_cast<size_t>(d), false), used2(static_cast<size_t>(d), false);
  std::function<bool(size_t)> assign = [&](size_t i0) -> bool {
    if (i0 == roots_at[0].size()) return true;
    const Rational& r0 = roots_at[0][i0];
    for (size_t i1 = 0; i1 < roots_at[1].size(); ++i1) {
      if (used1[i1]) continue;
      Rational kap = (roots_at[1][i1] - r0) / (probes[1] - probes[0]);
      Rational rho = r0 - kap * probes[0];
      // must hit an unused root at the third probe
      Rational expect = kap * probes[2] + rho;
      size_t hit = roots_at[2].size();
      for (size_t i2 = 0; i2 < roots_at[2].size(); ++i2)
        if (!used2[i2] && roots_at[2][i2] == expect) {
          hit = i2;
          break;
        }
      if (hit == roots_at[2].size()) continue;
      used1[i1] = true;
      used2[hit] = true;
      lines.push_back({kap, rho});
      if (assign(i0 + 1)) return true;
      lines.pop_back();
      used1[i1] = false;
      used2[hit] = false;
    }
    return false;
  };
  if (!assign(0)) throw NotLinearlyFactorable("no consistent linear matching across probes");

  // Exact verification in the original variables.
  RootList out;
  out.leading = leading;
  MultiPoly expansion = leading;
  MultiPoly escale = MultiPoly::var(sym::alpha) * MultiPoly::var(sym::hbar, -2);
  for (const auto& ln : lines) {
    Root r;
    r.kappa = MultiPoly(ln.kappa) * escale;
    r.rho = MultiPoly(ln.rho);
    out.roots.push_back(r);
    expansion = expansion * (kT - r.kappa * kE - r.rho);
  }
  if (expansion != phi.phi_t)
    throw NotLinearlyFactorable("exact expansion check failed");
  return out;
}

namespace {

struct BoundRoot {
  Rational kappa, rho;
};

std::vector<BoundRoot> bind_roots(const RootList& roots, const ParamBinding& params) {
  std::vector<BoundRoot> out;
  for (const auto& r : roots.roots)
    out.push_back({r.kappa.eval(params), r.rho.eval(params)});
  return out;
}

}  // namespace

EnumerationResult enumerate_reps(const RootList& roots, const ParamBinding& params, int p_max) {
  if (p_max < 0) throw std::invalid_argument("enumerate_reps: p_max must be >= 0");
  EnumerationResult res;
  std::vector<BoundRoot> br = bind_roots(roots, params);
  Rational lead = roots.leading.eval(params);
  const size_t n = br.size();

  auto phi_at = [&](const Rational& xx, const Rational& u, const Rational& E) {
    Rational v = lead;
    for (const auto& r : br) v *= (xx + u - (r.kappa * E + r.rho));
    return v;
  };

  std::vector<std::array<Rational, 4>> seen_pairs;
  std::vector<std::array<Rational, 4>> seen_branches;  // (u_k, u_r, slope, intercept)
  std::vector<std::array<Rational, 3>> seen_degenerate;

  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::array<Rational, 4> pk{br[i].kappa, br[i].rho, br[j].kappa, br[j].rho};
      if (std::find(seen_pairs.begin(), seen_pairs.end(), pk) != seen_pairs.end()) continue;
      seen_pairs.push_back(pk);
      if (br[j].kappa == br[i].kappa) {
        std::array<Rational, 3> dk{br[i].kappa, br[i].rho, br[j].rho};
        if (std::find(seen_degenerate.begin(), seen_degenerate.end(), dk) != seen_degenerate.end())
          continue;
        seen_degenerate.push_back(dk);
        DegenerateNote note;
        note.kappa = br[i].kappa;
        note.rho_i = br[i].rho;
        note.rho_j = br[j].rho;
        Rational gap = br[j].rho - br[i].rho;
        if (gap.is_integer() && gap.sign() > 0) {
          note.integer_gap = true;
          note.gap_p = gap.to_long() - 1;
        }
        res.degenerate.push_back(note);
        continue;
      }
      Rational dk = br[j].kappa - br[i].kappa;
      Rational dr = br[j].rho - br[i].rho;
      Rational slope = Rational(1) / dk;
      Rational intercept = (Rational(1) - dr) / dk;
      std::array<Rational, 4> bk{br[i].kappa, br[i].rho, slope, intercept};
      if (std::find(seen_branches.begin(), seen_branches.end(), bk) != seen_branches.end())
        continue;
      seen_branches.push_back(bk);

      RepSolution rep;
      rep.u_kappa = br[i].kappa;
      rep.u_rho = br[i].rho;
      rep.e_slope = slope;
      rep.e_intercept = intercept;
      rep.energy_law = MultiPoly(slope) * MultiPoly::var(sym::p) + MultiPoly(intercept);
      for (int p = 0; p <= p_max; ++p) {
        Rational E = slope * Rational(p) + intercept;
        Rational u = br[i].kappa * E + br[i].rho;
        bool ok = true;
        std::vector<Rational> vals;
        for (int xx = 1; xx <= p && ok; ++xx) {
          Rational v = phi_at(Rational(xx), u, E);
          vals.push_back(v);
          if (v.sign() <= 0) ok = false;
        }
        if (!ok) continue;
        rep.p_admitted.push_back(p);
        rep.energies.push_back(E);
        rep.phi_values.push_back(std::move(vals));
      }
      if (rep.p_admitted.empty()) continue;

      // Stricter real-interval positivity on (0, p+1) for each admitted p.
      rep.positivity_real_ok = true;
      for (size_t pi = 0; pi < rep.p_admitted.size() && rep.positivity_real_ok; ++pi) {
        int p = rep.p_admitted[pi];
        const Rational& E = rep.energies[pi];
        Rational u = br[i].kappa * E + br[i].rho;
        // expand leading * prod (x + u - r_k(E)) into coefficients
        std::vector<Rational> poly{lead};
        for (const auto& r : br) {
          Rational c0 = u - (r.kappa * E + r.rho);
          std::vector<Rational> next(poly.size() + 1, Rational(0));
          for (size_t t = 0; t < poly.size(); ++t) {
            next[t] += poly[t] * c0;
            next[t + 1] += poly[t];
          }
          poly = std::move(next);
        }
        int interior = count_real_roots(poly, Rational(0), Rational(p + 1));
        Rational mid = phi_at(Rational(2 * p + 1, 2), u, E);
        if (interior != 0 || mid.sign() <= 0) rep.positivity_real_ok = false;
      }
      res.reps.push_back(std::move(rep));
    }
  }
  return res;
}

void spurious_filter(EnumerationResult& res, double vmin, double tol) {
  for (auto& rep : res.reps) {
    RepSolution kept = rep;
    kept.p_admitted.clear();
    kept.energies.clear();
    kept.phi_values.clear();
    kept.dropped_below_min_v.clear();
    for (size_t i = 0; i < rep.p_admitted.size(); ++i) {
      if (rep.energies[i].to_double() < vmin - tol) {
        kept.dropped_below_min_v.push_back(rep.p_admitted[i]);
        kept.above_min_v = false;
      } else {
        kept.p_admitted.push_back(rep.p_admitted[i]);
        kept.energies.push_back(rep.energies[i]);
        kept.phi_values.push_back(rep.phi_values[i]);
      }
    }
    rep = std::move(kept);
  }
  std::erase_if(res.reps, [](const RepSolution& r) { return r.p_admitted.empty(); });
}

EnumerationResult real_a_branch(const RootList& roots, const ParamBinding& params, int p_max) {
  for (const auto& [s, v] : params)
    if (s == sym::alpha && v.sign() <= 0)
      throw std::invalid_argument("real_a_branch: alpha must be positive");
  return enumerate_reps(roots, params, p_max);
}

namespace {

// Sylvester resultant in u of two polynomials with MultiPoly coefficients.
MultiPoly resultant_u(const MultiPoly& a, const MultiPoly& b) {
  auto ca = a.collect(sym::u);
  auto cb = b.collect(sym::u);
  int da = a.degree(sym::u), db = b.degree(sym::u);
  if (da <= 0 || db <= 0) throw std::domain_error("resultant_u: constant input");
  int dim = da + db;
  std::vector<std::vector<MultiPoly>> m(static_cast<size_t>(dim),
                                        std::vector<MultiPoly>(static_cast<size_t>(dim)));
  auto get = [](const std::map<int, MultiPoly>& c, int k) {
    auto it = c.find(k);
    return it == c.end() ? MultiPoly() : it->second;
  };
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) m[static_cast<size_t>(r)][static_cast<size_t>(r + k)] = get(ca, da - k);
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k)
      m[static_cast<size_t>(db + r)][static_cast<size_t>(r + k)] = get(cb, db - k);
  // Bareiss fraction-free elimination.
  MultiPoly prev(Rational(1));
  for (int k = 0; k < dim - 1; ++k) {
    if (m[static_cast<size_t>(k)][static_cast<size_t>(k)].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < dim; ++r)
        if (!m[static_cast<size_t>(r)][static_cast<size_t>(k)].is_zero()) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return MultiPoly();  // singular: resultant 0
      std::swap(m[static_cast<size_t>(k)], m[static_cast<size_t>(swap_row)]);
      for (auto& cell : m[static_cast<size_t>(k)]) cell = -cell;
    }
    for (int r = k + 1; r < dim; ++r) {
      for (int c = k + 1; c < dim; ++c) {
        MultiPoly num = m[static_cast<size_t>(r)][static_cast<size_t>(c)] *
                            m[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                        m[static_cast<size_t>(r)][static_cast<size_t>(k)] *
                            m[static_cast<size_t>(k)][static_cast<size_t>(c)];
        auto q = MultiPoly::exact_divide(num, prev);
        if (!q) throw std::logic_error("resultant_u: Bareiss division failed");
        m[static_cast<size_t>(r)][static_cast<size_t>(c)] = *q;
      }
      m[static_cast<size_t>(r)][static_cast<size_t>(k)] = MultiPoly();
    }
    prev = m[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return m[static_cast<size_t>(dim - 1)][static_cast<size_t>(dim - 1)];
}

}  // namespace

std::vector<NumericRep> enumerate_reps_numeric(const StructureFn& phi, const ParamBinding& params,
                                               int p_max, double e_lo, double e_hi) {
  std::vector<NumericRep> out;
  MultiPoly bound = phi.phi_t;
  for (const auto& [s, v] : params) bound = bound.substitute(s, MultiPoly(v));
  MultiPoly phi0 = bound.substitute(sym::x, MultiPoly::var(sym::u));
  for (int p = 0; p <= p_max; ++p) {
    MultiPoly phip = bound.substitute(sym::x, MultiPoly::var(sym::u) + MultiPoly(Rational(p + 1)));
    // Degenerate pairings (roots at a constant gap p+1 for every E) show up
    // as a common u-factor; remove it, the exact route skips them too.
    MultiPoly a = phi0, b = phip;
    MultiPoly g = gcd_univariate(a, b, sym::u);
    if (g.degree(sym::u) > 0) {
      // strip the E-content the pseudo-remainder sequence leaves behind
      MultiPoly content;
      for (const auto& [k, c] : g.collect(sym::u))
        content = content.is_zero() ? c : gcd_univariate(content, c, sym::E);
      if (content.degree(sym::E) > 0) {
        if (auto q = MultiPoly::exact_divide(g, content)) g = *q;
      }
      auto qa = MultiPoly::exact_divide(a, g);
      auto qb = MultiPoly::exact_divide(b, g);
      if (!qa || !qb) continue;
      a = *qa;
      b = *qb;
    }
    if (a.degree(sym::u) <= 0 || b.degree(sym::u) <= 0) continue;
    MultiPoly res = resultant_u(a, b);
    if (res.is_zero()) continue;
    auto byE = res.collect(sym::E);
    int deg = res.degree(sym::E);
    std::vector<Rational> rc(static_cast<size_t>(deg) + 1, Rational(0));
    for (auto& [k, c] : byE) rc[static_cast<size_t>(k)] = c.constant_value();
    // Isolate real roots by bisection on sign changes of the Sturm count.
    std::function<void(Rational, Rational)> isolate = [&](Rational lo, Rational hi) {
      int cnt = count_real_roots(rc, lo, hi);
      if (std::getenv("SIQS_DEBUG_FALLBACK")) fprintf(stderr, "  isolate [%f, %f] cnt=%d\n", lo.to_double(), hi.to_double(), cnt);
      if (cnt == 0) return;
      if ((hi - lo).to_double() < 1e-9) {
        double E = ((lo + hi) / Rational(2)).to_double();
        // recover u candidates at this E
        std::vector<Rational> uc;
        auto byu = phi0.collect(sym::u);
        int du = phi0.degree(sym::u);
        std::vector<Rational> upoly(static_cast<size_t>(du) + 1, Rational(0));
        Rational Er = *rationalize(E, 1l << 30, 1e-6);
        for (auto& [k, c] : byu) upoly[static_cast<size_t>(k)] = c.eval({{sym::E, Er}});
        for (double u : numeric_roots(upoly)) {
          auto phi_val = [&](double t) {
            std::array<double, kNumSymbols> vals{};
            vals[static_cast<size_t>(sym::x.id())] = t;
            vals[static_cast<size_t>(sym::E.id())] = E;
            return bound.eval_double(vals);
          };
          if (std::getenv("SIQS_DEBUG_FALLBACK")) fprintf(stderr, "  leaf E=%.10f u=%.6f phi(p+1+u)=%.3e\n", E, u, phi_val(p + 1 + u));
          if (std::abs(phi_val(p + 1 + u)) > 1e-6) continue;  // u must pair with p+1
          bool pos = true;
          for (int xx = 1; xx <= p; ++xx)
            if (phi_val(xx + u) <= 0) pos = false;
          out.push_back({p, E, u, pos});
        }
        return;
      }
      Rational mid = (lo + hi) / Rational(2);
      isolate(lo, mid);
      isolate(mid, hi);
    };
    if (std::getenv("SIQS_DEBUG_FALLBACK")) fprintf(stderr, "p=%d res deg=%d topcount=%d\n", p, deg, count_real_roots(rc, Rational(-100), Rational(100)));
    auto lo = rationalize(e_lo, 1000, 1e-6), hi = rationalize(e_hi, 1000, 1e-6);
    isolate(lo.value_or(Rational(-100)), hi.value_or(Rational(100)));
  }
  return out;
}

}  // namespace siqs
