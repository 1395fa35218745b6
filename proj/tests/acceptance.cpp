// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "siqs/numeric.hpp"
#include "siqs/report.hpp"
#include "siqs/spectra.hpp"

using namespace siqs;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void line(int criterion, const std::string& what, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << what;
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ParamBinding std_params(long alpha_sign) {
  return {{sym::hbar, Rational(1)}, {sym::alpha, Rational(alpha_sign)}};
}

// ---------------------------------------------------------------------------

void criterion1_ladder() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  try {
    MultiPoly hw = MultiPoly::var(sym::hbar) * MultiPoly::var(sym::omega);
    MultiPoly lam3 = MultiPoly::parse("1/2*hbar^2*alpha^-1");
    struct Expect {
      const char* name;
      MultiPoly lx, ly;
    };
    const Expect expect[] = {
        {"ho2d", hw, hw},
        {"sw1", Rational(2) * hw, Rational(2) * hw},
        {"p1", lam3, lam3},
        {"p5", lam3, Rational(2) * lam3},
        {"p6", lam3, lam3},
    };
    for (const auto& e : expect) {
      const PotentialSpec& spec = catalog_get(e.name);  // construction = verification
      if (spec.x_axis.lambda != e.lx || spec.y_axis.lambda != e.ly) {
        ok = false;
        detail << e.name << " lambda mismatch; ";
      }
      // re-run the certificates explicitly
      LadderCert cx = verify_ladder(spec.x_axis.hamiltonian(), spec.x_axis.aplus, sym::E,
                                    spec.x_axis.Q);
      LadderCert cy = verify_ladder(spec.y_axis.hamiltonian(), spec.y_axis.aplus, sym::E,
                                    spec.y_axis.Q);
      if (!cx.verified || !cy.verified) ok = false;
    }
    // coefficient-for-coefficient Q/S checks against the published polynomials
    ok &= catalog_get("sw1").x_axis.Q ==
          MultiPoly::parse("1/4*E^2*hbar^-2*omega^-2 - 1/2*E*hbar^-1*omega^-1 + 3/16 - "
                           "1/2*b*hbar^-2");
    ok &= catalog_get("p1").x_axis.Q ==
          MultiPoly::parse("2*E^3 - 7/2*E^2*hbar^2*alpha^-1 + 7/8*E*hbar^4*alpha^-2 + "
                           "15/32*hbar^6*alpha^-3");
    ok &= catalog_get("p1").y_axis.Q == MultiPoly::parse("2*E - 1/2*hbar^2*alpha^-1");
    ok &= catalog_get("p5").y_axis.Q ==
          MultiPoly::parse("E^2*hbar^-4*alpha^2 - E*hbar^-2*alpha - 5/16");
    ok &= catalog_get("p6").y_axis.Q == catalog_get("p6").x_axis.Q;
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  double dt = seconds_since(t0);
  if (dt >= 10.0) {
    ok = false;
    detail << "runtime " << dt << "s exceeds 10s";
  }
  std::ostringstream what;
  what << "ladder certificates (exact, symbolic), " << dt << "s";
  line(1, what.str(), ok, detail.str());
}

void criterion2_algebra() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  try {
    const char* p1_rhs =
        "-2*hbar^2*A^3 - 6*hbar^2*A^2*H + 8*hbar^2*H^3 + 6*hbar^4*alpha^-1*A^2 + "
        "8*hbar^4*alpha^-1*H*A - 8*hbar^4*alpha^-1*H^2 + 2*hbar^6*alpha^-2*A - "
        "2*hbar^6*alpha^-2*H - 6*hbar^8*alpha^-3";
    const char* p6_rhs =
        "-3/16*hbar^2*A^5 + 3/2*hbar^2*A^3*H^2 - 2*hbar^4*alpha^-1*A^3*H - 3*hbar^2*A*H^4 + "
        "8*hbar^4*alpha^-1*A*H^3 + 19/8*hbar^6*alpha^-2*A^3 - 13/2*hbar^6*alpha^-2*A*H^2 - "
        "99/16*hbar^10*alpha^-4*A + 6*hbar^8*alpha^-3*A*H";
    ok &= commutator_rhs(catalog_get("p1")) == MultiPoly::parse(p1_rhs);
    ok &= commutator_rhs(catalog_get("p6")) == MultiPoly::parse(p6_rhs);
    // quintic structure constants: delta, c5, and the vanishing even slots
    IntegralTriple t6 = build_integrals(catalog_get("p6"));
    AlgebraSpec a6 = to_algebra_spec(commutator_rhs(catalog_get("p6")), t6.delta);
    ok &= a6.delta == MultiPoly::parse("4*hbar^4*alpha^-2");
    ok &= a6.c[5] == MultiPoly::parse("-3/16*hbar^2");
    ok &= a6.c[4].is_zero() && a6.c[2].is_zero() && a6.c[0].is_zero();
    // seventh-order bracket including the A^7 slot
    IntegralTriple t5 = build_integrals(catalog_get("p5"));
    AlgebraSpec a5 = to_algebra_spec(commutator_rhs(catalog_get("p5")), t5.delta);
    ok &= a5.c[7] == MultiPoly::parse("-1/64*alpha^2");
    ok &= a5.delta == MultiPoly::parse("16*hbar^4*alpha^-2");
    // first-principles normal-ordering oracle agrees for all entries
    for (const auto& name : catalog_names())
      ok &= commutator_rhs(catalog_get(name)) == commutator_rhs_from_words(catalog_get(name));
    if (!ok) detail << "bracket polynomial mismatch";
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  double dt = seconds_since(t0);
  if (dt >= 30.0) {
    ok = false;
    detail << "; runtime " << dt << "s exceeds 30s";
  }
  std::ostringstream what;
  what << "algebra reproduction (exact), " << dt << "s";
  line(2, what.str(), ok, detail.str());
}

void criterion3_casimir() {
  bool ok = true;
  std::ostringstream detail;
  try {
    ok &= casimir_value(catalog_get("p6")) ==
          MultiPoly::parse("-4*E^6*hbar^2 + 16*E^5*hbar^4*alpha^-1 - 5*E^4*hbar^6*alpha^-2 - "
                           "40*E^3*hbar^8*alpha^-3 + 141/4*E^2*hbar^10*alpha^-4 + "
                           "9*E*hbar^12*alpha^-5 - 135/16*hbar^14*alpha^-6");
    ok &= casimir_value(catalog_get("p5")) ==
          MultiPoly::parse("E^8*alpha^2 - 4*E^7*hbar^2*alpha + 3*E^6*hbar^4 + "
                           "15*E^5*hbar^6*alpha^-1 - 453/8*E^4*hbar^8*alpha^-2 + "
                           "261/4*E^3*hbar^10*alpha^-3 - 133/16*E^2*hbar^12*alpha^-4 - "
                           "275/16*E*hbar^14*alpha^-5 + 1425/256*hbar^16*alpha^-6");
    // NotCentral must never fire on catalog entries (either route)
    for (const auto& name : catalog_names()) {
      casimir_value(catalog_get(name));
      auto real = physical_realization(catalog_get(name));
      StructureFn phi = derive_phi(real.realized, real.realized_K);
      reduce_casimir(real.realized, phi);
    }
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  line(3, "Casimir reduction (exact)", ok, detail.str());
}

void criterion4_phi() {
  bool ok = true;
  std::ostringstream detail;
  try {
    // published root sets
    auto want_sorted = [](std::vector<std::pair<std::string, std::string>> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    auto got_roots = [&](const char* name) {
      auto real = physical_realization(catalog_get(name));
      RootList roots = factor_phi(real.phi);
      std::vector<std::pair<std::string, std::string>> v;
      for (const auto& r : roots.roots) v.push_back({r.kappa.str(), r.rho.str()});
      std::sort(v.begin(), v.end());
      return std::pair(roots.leading.str(), v);
    };
    auto norm = [](const char* k, const char* r) {
      return std::pair<std::string, std::string>(MultiPoly::parse(k).str(),
                                                 MultiPoly::parse(r).str());
    };
    auto [lead6, roots6] = got_roots("p6");
    ok &= lead6 == MultiPoly::parse("-1/4*hbar^10*alpha^-4").str();
    ok &= roots6 == want_sorted({norm("hbar^-2*alpha", "-3/2"), norm("-hbar^-2*alpha", "-1/2"),
                                 norm("hbar^-2*alpha", "-1/2"), norm("-hbar^-2*alpha", "3/2"),
                                 norm("hbar^-2*alpha", "3/2"), norm("-hbar^-2*alpha", "5/2")});
    auto [lead5, roots5] = got_roots("p5");
    ok &= lead5 == MultiPoly::parse("4*hbar^12*alpha^-4").str();
    ok &= roots5 ==
          want_sorted({norm("-1/2*hbar^-2*alpha", "-1/4"), norm("1/2*hbar^-2*alpha", "-1/4"),
                       norm("-1/2*hbar^-2*alpha", "1/4"), norm("-1/2*hbar^-2*alpha", "3/4"),
                       norm("-1/2*hbar^-2*alpha", "5/4"), norm("-1/2*hbar^-2*alpha", "5/4"),
                       norm("1/2*hbar^-2*alpha", "5/4"), norm("-1/2*hbar^-2*alpha", "7/4")});
    if (!ok) detail << "root-set mismatch; ";

    // independent relation check on 50 randomized rational specs
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> coeff(-6, 6), den(1, 3);
    std::uniform_int_distribution<int> deg(0, 7);
    for (int trial = 0; trial < 50; ++trial) {
      AlgebraSpec spec;
      spec.delta = MultiPoly(Rational(4));
      int top = deg(rng);
      for (int k = 0; k <= top; ++k)
        spec.c[static_cast<size_t>(k)] = MultiPoly(Rational(coeff(rng), den(rng)));
      if (spec.degree() < 0) spec.c[1] = MultiPoly(Rational(1));
      MultiPoly K(Rational(coeff(rng)));
      StructureFn phi = derive_phi(spec, K);
      if (!check_relations(spec, phi).ok) {
        ok = false;
        detail << "random spec " << trial << " failed relations; ";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  line(4, "structure function (exact factorization + 50 randomized relation checks)", ok,
       detail.str());
}

struct BranchExpect {
  Rational slope, intercept;
  std::vector<int> p_set;  // expected admitted set (computed truth)
  bool deviation = false;  // true when the published range differs (ledgered)
};

void criterion5_spectra() {
  bool ok = true;
  std::ostringstream detail;
  try {
    auto run = [&](const char* name, long alpha_sign, int pmax, bool filter) {
      auto real = physical_realization(catalog_get(name));
      RootList roots = factor_phi(real.phi);
      EnumerationResult res = alpha_sign > 0 ? real_a_branch(roots, std_params(alpha_sign), pmax)
                                             : enumerate_reps(roots, std_params(alpha_sign), pmax);
      if (filter) {
        MinPotentialOptions opts;
        opts.central_domain = alpha_sign > 0;
        spurious_filter(res, min_potential(catalog_get(name), std_params(alpha_sign), opts), 1e-9);
      }
      return res;
    };
    auto check_branch = [&](const EnumerationResult& res, const char* label,
                            const BranchExpect& e) {
      for (const auto& rep : res.reps) {
        if (rep.e_slope != e.slope || rep.e_intercept != e.intercept) continue;
        if (rep.p_admitted == e.p_set) return true;
        detail << label << " p-range mismatch; ";
        return false;
      }
      detail << label << " branch missing; ";
      return false;
    };
    const std::vector<int> all9{0, 1, 2, 3, 4, 5, 6, 7, 8};

    auto res6 = run("p6", -1, 8, true);
    ok &= check_branch(res6, "E1=(p+3)/2", {Rational(1, 2), Rational(3, 2), all9});
    // published p in {0,1}; exact positivity gives {0} (typo ledger + oracle)
    ok &= check_branch(res6, "E2=(p+1)/2", {Rational(1, 2), Rational(1, 2), {0}, true});
    // published p in {0,1,2}; exact positivity gives {0}
    ok &= check_branch(res6, "E3=p/2", {Rational(1, 2), Rational(0), {0}, true});
    ok &= check_branch(res6, "E4=(p-3)/2", {Rational(1, 2), Rational(-3, 2), {0}});
    auto led6 = representation_ledger("p6", -1, res6, 8);
    bool has_e2 = false, has_e3 = false;
    for (auto& e : led6) {
      if (e.equation_label == "quintic-reps/E2/p-range") has_e2 = true;
      if (e.equation_label == "quintic-reps/E3/p-range") has_e3 = true;
    }
    if (!has_e2 || !has_e3) {
      ok = false;
      detail << "missing typo-ledger entries for the deviating p-ranges; ";
    }

    auto res6r = run("p6", +1, 8, true);
    ok &= check_branch(res6r, "real-a E=(p+5)/2", {Rational(1, 2), Rational(5, 2), {3, 4, 5, 6, 7, 8}});

    auto res5 = run("p5", -1, 8, true);
    ok &= check_branch(res5, "E1=(5+2p)/2", {Rational(1), Rational(5, 2), all9});
    ok &= check_branch(res5, "E2=p+1 (p=0)", {Rational(1), Rational(1), {0}});
    auto res5r = run("p5", +1, 8, true);
    ok &= check_branch(res5r, "real-a E=p+3", {Rational(1), Rational(3), all9});

    // brute-force E-grid oracle confirmation of the deviating quintic ranges:
    // at p = 1 the grid scan near the published E2/E3 energies finds no
    // positivity-passing solution, at p = 0 it finds them.
    {
      auto real = physical_realization(catalog_get("p6"));
      RootList roots = factor_phi(real.phi);
      ParamBinding params = std_params(-1);
      Rational lead = roots.leading.eval(params);
      auto phi_at = [&](double xx, double u, double E) {
        double v = lead.to_double();
        for (const auto& r : roots.roots)
          v *= (xx + u - (r.kappa.eval(params).to_double() * E + r.rho.eval(params).to_double()));
        return v;
      };
      // E2 at p=1 would sit at E=1 with u = alpha E - 1/2 = -3/2: Phi(1) < 0
      bool oracle = phi_at(1.0, -1.5, 1.0) < 0.0;
      // E3 at p=1 would sit at E=1/2 with u = alpha E - 3/2 = -2: Phi(1) = 0
      oracle &= std::abs(phi_at(1.0, -2.0, 0.5)) < 1e-12;
      if (!oracle) {
        ok = false;
        detail << "brute oracle did not confirm the p-range deviations; ";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  line(5, "spectra (exact at hbar=1, |alpha|=1; deviations carry ledger + oracle)", ok,
       detail.str());
}

void criterion6_numeric() {
  auto t0 = Clock::now();
  std::ostringstream detail;
  bool control_ok = true;
  try {
    // harmonic-oscillator control at the acceptance grids
    auto& ho = catalog_get("ho2d");
    Grid1D g{-14, 14, 4000};
    auto ctrl = solve_1d(ho.x_axis, {{sym::hbar, Rational(1)}, {sym::omega, Rational(1)}}, g, 8);
    for (size_t i = 0; i < ctrl.richardson.size(); ++i)
      if (std::abs(ctrl.richardson[i] - (i + 0.5)) >= 1e-6) control_ok = false;
  } catch (const std::exception& e) {
    control_ok = false;
    detail << e.what();
  }

  auto check_pot = [&](const char* name) -> std::pair<bool, std::string> {
    std::ostringstream d;
    auto real = physical_realization(catalog_get(name));
    RootList roots = factor_phi(real.phi);
    ParamBinding params = std_params(-1);
    auto res = enumerate_reps(roots, params, 16);
    spurious_filter(res, min_potential(catalog_get(name), params), 1e-9);
    std::vector<double> algebraic;
    for (const auto& rep : res.reps)
      for (const auto& e : rep.energies) algebraic.push_back(e.to_double());

    auto& spec = catalog_get(name);
    Grid1D gx{-14, 14, 4000}, gy{-14, 14, 4000};
    if (spec.y_axis.domain == AxisDomain::HalfLinePositive) gy.lo = 0.0;
    EigenResult ex = solve_1d(spec.x_axis, params, gx, 14);
    EigenResult ey = spec.y_axis.potential == spec.x_axis.potential.rename(sym::x, sym::y)
                         ? ex
                         : solve_1d(spec.y_axis, params, gy, 14);
    auto levels = assemble_2d(ex, ey, 6.0);
    std::vector<double> numeric;
    for (const auto& l : levels) numeric.push_back(l.energy);
    MatchReport rep = compare_spectra(numeric, algebraic, 1e-3);
    if (!rep.pass) {
      d << name << " unmatched numeric levels:";
      for (const auto& row : rep.rows)
        if (row.residual >= 1e-3) d << " " << row.numeric << " (residual " << row.residual << ")";
    }
    return {rep.pass, d.str()};
  };

  auto [p5_ok, p5_detail] = check_pot("p5");
  auto [p6_ok, p6_detail] = check_pot("p6");
  double dt = seconds_since(t0);
  bool runtime_ok = dt < 120.0;
  std::ostringstream what;
  what << "numeric cross-check (control " << (control_ok ? "ok" : "FAILED") << ", p5 "
       << (p5_ok ? "ok" : "FAILED") << ", p6 " << (p6_ok ? "ok" : "FAILED") << ", " << dt << "s)";
  if (!p5_detail.empty()) detail << p5_detail << "; ";
  if (!p6_detail.empty()) detail << p6_detail << "; ";
  if (!runtime_ok) detail << "runtime exceeds 2 min; ";
  line(6, what.str(), control_ok && p5_ok && p6_ok && runtime_ok, detail.str());
}

void criterion7_properties() {
  bool ok = true;
  std::ostringstream detail;
  try {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> coeff(-4, 4);
    // ring axioms
    auto rand_poly = [&]() {
      MultiPoly p;
      for (int t = 0; t < 3; ++t) {
        MultiPoly term(Rational(coeff(rng)));
        term = term * MultiPoly::var(sym::x).pow(std::abs(coeff(rng)) % 3);
        term = term * MultiPoly::var(sym::E).pow(std::abs(coeff(rng)) % 3);
        p += term;
      }
      return p;
    };
    for (int i = 0; i < 25; ++i) {
      MultiPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
      if ((a * b) * c != a * (b * c) || a * (b + c) != a * b + a * c) ok = false;
    }
    // Jacobi identity
    auto rand_op = [&]() {
      DiffOp op(sym::x);
      for (int k = 0; k <= 2; ++k) {
        MultiPoly c(Rational(coeff(rng)));
        c += Rational(coeff(rng)) * MultiPoly::var(sym::x);
        op += DiffOp::d_op(sym::x, k, RatFunc(c));
      }
      return op;
    };
    for (int i = 0; i < 6; ++i) {
      DiffOp f = rand_op(), g = rand_op(), h = rand_op();
      DiffOp j = commutator(f, commutator(g, h)) + commutator(g, commutator(h, f)) +
                 commutator(h, commutator(f, g));
      if (!j.is_zero()) ok = false;
    }
    // normal-ordering confluence
    MultiPoly phi;
    for (int k = 0; k <= 3; ++k) phi += Rational(coeff(rng)) * MultiPoly::var(sym::N).pow(k);
    OscAlgebra alg(phi, MultiPoly(Rational(4)));
    std::uniform_int_distribution<int> kind(0, 2);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<OscAlgebra::Element> word;
      for (int i = 0; i < 5; ++i) {
        int k = kind(rng);
        word.push_back(k == 0 ? OscAlgebra::ladder_up()
                              : k == 1 ? OscAlgebra::ladder_down()
                                       : OscAlgebra::coefficient(MultiPoly::var(sym::N) +
                                                                 MultiPoly(Rational(coeff(rng)))));
      }
      OscAlgebra::Element left = word[0];
      for (size_t i = 1; i < word.size(); ++i) left = alg.mul(left, word[i]);
      OscAlgebra::Element right = word.back();
      for (size_t i = word.size() - 1; i-- > 0;) right = alg.mul(word[i], right);
      if (!alg.is_zero(OscAlgebra::add(left, OscAlgebra::scale(right, MultiPoly(Rational(-1))))))
        ok = false;
    }
    // second-order FD convergence on the oscillator
    auto& ho = catalog_get("ho2d");
    std::vector<std::pair<Symbol, Rational>> params{{sym::hbar, Rational(1)},
                                                    {sym::omega, Rational(1)}};
    Grid1D coarse{-10, 10, 500}, fine{-10, 10, 1001};
    auto rc = solve_1d(ho.x_axis, params, coarse, 1, false);
    auto rf = solve_1d(ho.x_axis, params, fine, 1, false);
    double ratio = std::abs(rc.eigenvalues[0] - 0.5) / std::abs(rf.eigenvalues[0] - 0.5);
    if (std::abs(ratio - 4.0) > 0.5) {
      ok = false;
      detail << "FD error ratio " << ratio << " not ~4; ";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail << e.what();
  }
  line(7, "property suites (ring axioms, Jacobi, confluence, FD order)", ok, detail.str());
}

}  // namespace

int main() {
  criterion1_ladder();
  criterion2_algebra();
  criterion3_casimir();
  criterion4_phi();
  criterion5_spectra();
  criterion6_numeric();
  criterion7_properties();
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures;
}
