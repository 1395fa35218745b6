#include <doctest.h>

#include <algorithm>
#include <set>
#include <cmath>

#include "siqs/spectra.hpp"

using namespace siqs;

namespace {

const Rational kOne(1);

ParamBinding std_params(long alpha_sign) {
  return {{sym::hbar, Rational(1)}, {sym::alpha, Rational(alpha_sign)}};
}

// multiset of (kappa, rho) pairs for comparisons
std::multiset<std::pair<std::string, std::string>> root_set(const RootList& roots) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (const auto& r : roots.roots) out.insert({r.kappa.str(), r.rho.str()});
  return out;
}

const RepSolution* find_branch(const EnumerationResult& res, const Rational& slope,
                               const Rational& intercept, int alpha_sign = -1) {
  (void)alpha_sign;
  for (const auto& rep : res.reps)
    if (rep.e_slope == slope && rep.e_intercept == intercept) return &rep;
  return nullptr;
}

// Brute oracle: scan an E grid, solve Phi(p+1)=0 numerically on each branch
// root u = r_i(E), and keep solutions whose Phi(1..p) stay positive. Factors
// that vanish identically in E (constant-gap root pairs, the degenerate case
// the exact route skips) are excluded from the scan function exactly.
std::vector<double> brute_energies(const RootList& roots, const ParamBinding& params, int p) {
  std::vector<double> found;
  std::vector<std::pair<Rational, Rational>> bound;  // (kappa, rho)
  double lead = roots.leading.eval(params).to_double();
  for (const auto& r : roots.roots)
    bound.push_back({r.kappa.eval(params), r.rho.eval(params)});
  const size_t n = bound.size();
  for (size_t i = 0; i < n; ++i) {
    // factor for root k: (kappa_i - kappa_k) E + (p+1 + rho_i - rho_k)
    std::vector<std::pair<double, double>> lines;  // (slope, const)
    bool scannable = false;
    for (size_t k = 0; k < n; ++k) {
      Rational slope = bound[i].first - bound[k].first;
      Rational c0 = Rational(p + 1) + bound[i].second - bound[k].second;
      if (slope.is_zero() && c0.is_zero()) continue;  // identically zero: excluded
      lines.push_back({slope.to_double(), c0.to_double()});
      if (!slope.is_zero()) scannable = true;
    }
    if (!scannable) continue;
    auto g = [&](double E) {
      double v = lead;
      for (auto& [s, c] : lines) v *= (s * E + c);
      return v;
    };
    auto accept = [&](double E0) {
      bool pos = true;
      for (int xx = 1; xx <= p; ++xx) {
        double v = lead;
        for (size_t k = 0; k < n; ++k)
          v *= ((bound[i].first - bound[k].first).to_double() * E0 +
                (bound[i].second - bound[k].second).to_double() + xx);
        if (v <= 1e-9) pos = false;
      }
      if (pos) found.push_back(E0);
    };
    const double step = 1e-2;
    for (double E = -6.0; E < 8.0; E += step) {
      double a = g(E), b = g(E + step);
      if (a * b < 0) {
        double lo = E, hi = E + step;
        for (int it = 0; it < 60; ++it) {
          double mid = (lo + hi) / 2;
          (g(lo) * g(mid) <= 0 ? hi : lo) = mid;
        }
        accept((lo + hi) / 2);
        continue;
      }
      // even-order zeros (coincident factor lines) leave no sign change
      double scale = std::max(1.0, std::min(std::abs(a), std::abs(b)));
      if (std::min(std::abs(a), std::abs(b)) < 1e-3 * scale || std::min(std::abs(a), std::abs(b)) < 1.0) {
        double lo = E - step, hi = E + 2 * step;
        for (int it = 0; it < 200; ++it) {
          double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
          if (std::abs(g(m1)) < std::abs(g(m2)))
            hi = m2;
          else
            lo = m1;
        }
        double E0 = (lo + hi) / 2;
        if (std::abs(g(E0)) < 1e-10) accept(E0);
      }
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-6; }),
              found.end());
  return found;
}

}  // namespace

TEST_CASE("Sturm root counting") {
  // (x-1)(x-2)(x+3) = x^3 - 7x + 6
  std::vector<Rational> p{Rational(6), Rational(-7), Rational(0), Rational(1)};
  CHECK(count_real_roots(p, Rational(0), Rational(5)) == 2);
  CHECK(count_real_roots(p, Rational(-4), Rational(0)) == 1);
  CHECK(count_real_roots(p, Rational(-4), Rational(5)) == 3);
  CHECK(count_real_roots(p, Rational(1), Rational(2)) == 0);   // open interval
  CHECK(count_real_roots(p, Rational(0), Rational(2)) == 1);   // root at hi excluded
}

TEST_CASE("factoring a quadratic toy structure function") {
  StructureFn phi;
  // (t)(t-1), no E dependence: not linear-in-E factorable by the contract
  // (roots must be E-lines), so embed an E-slope: (t - E)(t + E - 1)
  MultiPoly t = MultiPoly::var(sym::x), Evar = MultiPoly::var(sym::E);
  MultiPoly escale = MultiPoly::var(sym::hbar, 2) * MultiPoly::var(sym::alpha, -1);
  phi.phi_t = (t - Evar * escale.pow(-1)) * (t + Evar * escale.pow(-1) - MultiPoly(Rational(1)));
  RootList roots = factor_phi(phi);
  CHECK(roots.roots.size() == 2);
  CHECK(roots.leading == MultiPoly(Rational(1)));
}

TEST_CASE("quintic-case structure function factors into the published six roots") {
  auto real = physical_realization(catalog_get("p6"));
  CHECK_FALSE(real.twisted);
  RootList roots = factor_phi(real.phi);
  CHECK(roots.leading == MultiPoly::parse("-1/4*hbar^10*alpha^-4"));
  auto expected = [](const char* k, const char* r) {
    return std::pair<std::string, std::string>(MultiPoly::parse(k).str(),
                                               MultiPoly::parse(r).str());
  };
  std::multiset<std::pair<std::string, std::string>> want{
      expected("hbar^-2*alpha", "-3/2"),  expected("-hbar^-2*alpha", "-1/2"),
      expected("hbar^-2*alpha", "-1/2"),  expected("-hbar^-2*alpha", "3/2"),
      expected("hbar^-2*alpha", "3/2"),   expected("-hbar^-2*alpha", "5/2")};
  CHECK(root_set(roots) == want);
}

TEST_CASE("seventh-order structure function factors into the published eight roots") {
  auto real = physical_realization(catalog_get("p5"));
  CHECK(real.twisted);
  RootList roots = factor_phi(real.phi);
  CHECK(roots.leading == MultiPoly::parse("4*hbar^12*alpha^-4"));
  auto expected = [](const char* k, const char* r) {
    return std::pair<std::string, std::string>(MultiPoly::parse(k).str(),
                                               MultiPoly::parse(r).str());
  };
  std::multiset<std::pair<std::string, std::string>> want{
      expected("-1/2*hbar^-2*alpha", "-1/4"), expected("1/2*hbar^-2*alpha", "-1/4"),
      expected("-1/2*hbar^-2*alpha", "1/4"),  expected("-1/2*hbar^-2*alpha", "3/4"),
      expected("-1/2*hbar^-2*alpha", "5/4"),  expected("-1/2*hbar^-2*alpha", "5/4"),
      expected("1/2*hbar^-2*alpha", "5/4"),   expected("-1/2*hbar^-2*alpha", "7/4")};
  CHECK(root_set(roots) == want);
  // double root present
  int dbl = 0;
  for (const auto& r : roots.roots)
    if (r.rho == MultiPoly(Rational(5, 4)) && r.kappa == MultiPoly::parse("-1/2*hbar^-2*alpha"))
      ++dbl;
  CHECK(dbl == 2);
}

TEST_CASE("quintic branch table at the standard binding") {
  auto real = physical_realization(catalog_get("p6"));
  RootList roots = factor_phi(real.phi);
  auto res = enumerate_reps(roots, std_params(-1), 8);

  // E1 = (p+3)/2, valid for every p
  const RepSolution* e1 = find_branch(res, Rational(1, 2), Rational(3, 2));
  REQUIRE(e1);
  CHECK(e1->p_admitted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(e1->u_kappa == Rational(-1));
  CHECK(e1->u_rho == Rational(3, 2));
  CHECK(e1->positivity_real_ok);

  // E2 = (p+1)/2: exact positivity admits only p = 0 (published range: 0,1)
  const RepSolution* e2 = find_branch(res, Rational(1, 2), Rational(1, 2));
  REQUIRE(e2);
  CHECK(e2->p_admitted == std::vector<int>{0});

  // E3 = p/2: exact positivity admits only p = 0 (published range: 0,1,2)
  const RepSolution* e3 = find_branch(res, Rational(1, 2), Rational(0));
  REQUIRE(e3);
  CHECK(e3->p_admitted == std::vector<int>{0});

  // E4 = (p-3)/2 at p = 0 only
  const RepSolution* e4 = find_branch(res, Rational(1, 2), Rational(-3, 2));
  REQUIRE(e4);
  CHECK(e4->p_admitted == std::vector<int>{0});
  CHECK(e4->energies[0] == Rational(-3, 2));

  // the published ranges fail the exact positivity test at their edges:
  // E2 at p=1 has Phi(1) = -6, E3 at p=1 has Phi(1) = 0
  ParamBinding params = std_params(-1);
  Rational lead = roots.leading.eval(params);
  auto phi_at = [&](const Rational& xx, const Rational& u, const Rational& E) {
    Rational v = lead;
    for (const auto& r : roots.roots)
      v *= (xx + u - (r.kappa.eval(params) * E + r.rho.eval(params)));
    return v;
  };
  CHECK(phi_at(kOne, Rational(-3, 2), kOne) == Rational(-6));        // E2, p=1
  CHECK(phi_at(kOne, Rational(-2), Rational(1, 2)) == Rational(0));  // E3, p=1
}

TEST_CASE("representation invariants hold for every emitted branch") {
  for (const auto& name : {"p6", "p5"}) {
    auto real = physical_realization(catalog_get(name));
    RootList roots = factor_phi(real.phi);
    ParamBinding params = std_params(-1);
    auto res = enumerate_reps(roots, params, 6);
    Rational lead = roots.leading.eval(params);
    auto phi_at = [&](const Rational& xx, const Rational& u, const Rational& E) {
      Rational v = lead;
      for (const auto& r : roots.roots)
        v *= (xx + u - (r.kappa.eval(params) * E + r.rho.eval(params)));
      return v;
    };
    for (const auto& rep : res.reps) {
      for (size_t i = 0; i < rep.p_admitted.size(); ++i) {
        int p = rep.p_admitted[i];
        Rational E = rep.energies[i];
        Rational u = rep.u_kappa * E + rep.u_rho;
        CHECK(phi_at(Rational(0), u, E).is_zero());
        CHECK(phi_at(Rational(p + 1), u, E).is_zero());
        for (int xx = 1; xx <= p; ++xx) CHECK(phi_at(Rational(xx), u, E).sign() > 0);
      }
    }
  }
}

TEST_CASE("enumeration is stable under root permutations") {
  auto real = physical_realization(catalog_get("p6"));
  RootList roots = factor_phi(real.phi);
  auto res1 = enumerate_reps(roots, std_params(-1), 5);
  RootList shuffled = roots;
  std::rotate(shuffled.roots.begin(), shuffled.roots.begin() + 3, shuffled.roots.end());
  std::swap(shuffled.roots[0], shuffled.roots[1]);
  auto res2 = enumerate_reps(shuffled, std_params(-1), 5);
  auto key = [](const EnumerationResult& r) {
    std::multiset<std::string> out;
    for (const auto& rep : r.reps) {
      std::string s = rep.u_kappa.str() + "|" + rep.u_rho.str() + "|" + rep.e_slope.str() + "|" +
                      rep.e_intercept.str() + "|";
      for (int p : rep.p_admitted) s += std::to_string(p) + ",";
      out.insert(s);
    }
    return out;
  };
  CHECK(key(res1) == key(res2));
}

TEST_CASE("brute-force E-grid oracle confirms the enumerated energies") {
  for (const auto& name : {"p6", "p5"}) {
    auto real = physical_realization(catalog_get(name));
    RootList roots = factor_phi(real.phi);
    ParamBinding params = std_params(-1);
    auto res = enumerate_reps(roots, params, 4);
    for (int p = 0; p <= 4; ++p) {
      std::vector<double> brute = brute_energies(roots, params, p);
      std::vector<double> enumerated;
      for (const auto& rep : res.reps)
        for (size_t i = 0; i < rep.p_admitted.size(); ++i)
          if (rep.p_admitted[i] == p) enumerated.push_back(rep.energies[i].to_double());
      std::sort(enumerated.begin(), enumerated.end());
      enumerated.erase(std::unique(enumerated.begin(), enumerated.end(),
                                   [](double a, double b) { return std::abs(a - b) < 1e-6; }),
                       enumerated.end());
      // every enumerated energy in the scan window appears in the brute scan
      for (double e : enumerated) {
        if (e < -5.9 || e > 7.9) continue;
        bool hit = false;
        for (double b : brute)
          if (std::abs(b - e) < 5e-3) hit = true;
        CHECK_MESSAGE(hit, name, " p=", p, " enumerated E=", e, " missing from brute scan");
      }
      // and conversely the brute scan finds nothing the enumeration lacks
      for (double b : brute) {
        bool hit = false;
        for (double e : enumerated)
          if (std::abs(b - e) < 5e-3) hit = true;
        CHECK_MESSAGE(hit, name, " p=", p, " brute E=", b, " missing from enumeration");
      }
    }
  }
}

TEST_CASE("spurious filter") {
  auto real = physical_realization(catalog_get("p6"));
  RootList roots = factor_phi(real.phi);
  auto res = enumerate_reps(roots, std_params(-1), 4);
  // artificial very low threshold keeps everything
  auto all = res;
  spurious_filter(all, -1e6, 1e-9);
  size_t total_before = 0, total_after = 0;
  for (auto& r : res.reps) total_before += r.p_admitted.size();
  for (auto& r : all.reps) total_after += r.p_admitted.size();
  CHECK(total_before == total_after);
  // threshold above everything drops all branches
  auto none = res;
  spurious_filter(none, 1e6, 1e-9);
  CHECK(none.reps.empty());
  // the physical minimum keeps E >= -4 only
  auto phys = res;
  spurious_filter(phys, -4.0, 1e-9);
  for (auto& rep : phys.reps)
    for (auto& e : rep.energies) CHECK(e.to_double() >= -4.0 - 1e-9);
}

TEST_CASE("real-alpha branches reproduce the published laws and cuts") {
  // quintic case: E = (p+5)/2 admitted by positivity for all p, then the
  // central-domain minimum V = 4 cuts it to p >= 3
  auto real6 = physical_realization(catalog_get("p6"));
  RootList roots6 = factor_phi(real6.phi);
  auto res6 = real_a_branch(roots6, std_params(1), 8);
  const RepSolution* b6 = find_branch(res6, Rational(1, 2), Rational(5, 2));
  REQUIRE(b6);
  CHECK(b6->p_admitted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  MinPotentialOptions opts;
  opts.central_domain = true;
  double vmin6 = min_potential(catalog_get("p6"), std_params(1), opts);
  CHECK(vmin6 == doctest::Approx(4.0));
  spurious_filter(res6, vmin6, 1e-9);
  b6 = find_branch(res6, Rational(1, 2), Rational(5, 2));
  REQUIRE(b6);
  CHECK(b6->p_admitted == std::vector<int>{3, 4, 5, 6, 7, 8});
  CHECK(b6->energies[0] == Rational(4));

  // seventh-order case: E = p+3 survives the filter for every p
  auto real5 = physical_realization(catalog_get("p5"));
  RootList roots5 = factor_phi(real5.phi);
  auto res5 = real_a_branch(roots5, std_params(1), 8);
  double vmin5 = min_potential(catalog_get("p5"), std_params(1), opts);
  CHECK(vmin5 == doctest::Approx(2.0 + std::sqrt(0.5)).epsilon(1e-6));
  spurious_filter(res5, vmin5, 1e-9);
  const RepSolution* b5 = find_branch(res5, Rational(1), Rational(3));
  REQUIRE(b5);
  CHECK(b5->p_admitted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(b5->u_kappa == Rational(-1, 2));
  CHECK(b5->u_rho == Rational(7, 4));
  // alpha <= 0 is rejected by the real-a entry point
  CHECK_THROWS_AS(real_a_branch(roots5, std_params(-1), 4), std::invalid_argument);
}

TEST_CASE("degenerate pairs are skipped with notes") {
  auto real = physical_realization(catalog_get("p6"));
  RootList roots = factor_phi(real.phi);
  auto res = enumerate_reps(roots, std_params(-1), 3);
  CHECK_FALSE(res.degenerate.empty());
  bool has_integer_gap = false;
  for (const auto& d : res.degenerate)
    if (d.integer_gap) has_integer_gap = true;
  CHECK(has_integer_gap);  // e.g. the constant-gap-1 pair on the down-slope family
}

TEST_CASE("numeric fallback recovers the pinned branches approximately") {
  auto real = physical_realization(catalog_get("p6"));
  StructureFn phi;
  phi.phi_t = real.phi.phi_t;
  auto numeric = enumerate_reps_numeric(phi, std_params(-1), 1, -3.2, 3.2);
  // expect to see E1(p=0) = 3/2 among the positive solutions
  bool found = false;
  for (const auto& nr : numeric)
    if (nr.p == 0 && nr.positive && std::abs(nr.E - 1.5) < 1e-5) found = true;
  CHECK(found);
}
