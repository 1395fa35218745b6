#pragma once

#include "siqs/oscalg.hpp"

namespace siqs {

struct NotLinearlyFactorable : std::runtime_error {
  explicit NotLinearlyFactorable(const std::string& w) : std::runtime_error(w) {}
};
struct DegenerateBranch : std::runtime_error {
  explicit DegenerateBranch(const std::string& w) : std::runtime_error(w) {}
};

// Linear-in-E root of the structure function: a value of x+u.
struct Root {
  MultiPoly kappa, rho;  // r(E) = kappa*E + rho, coefficients Laurent in hbar/alpha
};

struct RootList {
  MultiPoly leading;        // coefficient of t^d
  std::vector<Root> roots;  // multiplicity = repetition
};

// The unitary-representation realization of the algebra of a catalogued
// potential: the structure function with the anti-hermitian twist applied
// when the primed integral carries no factor of i.
struct PhysicalRealization {
  AlgebraSpec algebra;       // as derived, untwisted
  MultiPoly casimir;         // as derived (polynomial in E)
  AlgebraSpec realized;      // the spec actually realized (possibly twisted)
  MultiPoly realized_K;
  bool twisted = false;
  StructureFn phi;           // contains sqrt_delta only through s_expr below
  MultiPoly s_expr;          // the symbolic branch substituted for sqrt_delta
};

PhysicalRealization physical_realization(const PotentialSpec& spec);

// Factors phi (sqrt_delta already eliminated) into leading * prod (t - r_i(E))
// with r_i linear in E; the expansion is re-checked exactly.
RootList factor_phi(const StructureFn& phi);

using ParamBinding = std::vector<std::pair<Symbol, Rational>>;

struct RepSolution {
  Rational u_kappa, u_rho;        // u(E) = u_kappa E + u_rho at bound params
  Rational e_slope, e_intercept;  // E(p) = e_slope p + e_intercept
  MultiPoly energy_law;           // polynomial in p
  std::vector<int> p_admitted;
  std::vector<Rational> energies;               // one per admitted p
  std::vector<std::vector<Rational>> phi_values;  // Phi(1..p) per admitted p
  bool positivity_real_ok = true;  // stricter check on the whole interval (0, p+1)
  bool above_min_v = true;
  std::vector<int> dropped_below_min_v;  // p values removed by the filter
};

struct DegenerateNote {
  Rational kappa, rho_i, rho_j;
  bool integer_gap = false;  // rho_j - rho_i = p+1 for integer p >= 0
  long gap_p = -1;
};

struct EnumerationResult {
  std::vector<RepSolution> reps;
  std::vector<DegenerateNote> degenerate;
};

// Exhaustive ordered root-pair enumeration: u = r_i(E), r_j(E) - r_i(E) = p+1,
// integer-point positivity Phi(1..p) > 0 exact. Duplicate (u, E(p)) branches
// are merged.
EnumerationResult enumerate_reps(const RootList& roots, const ParamBinding& params, int p_max);

// Drops admitted p with E < vmin - tol; records drops and flags.
void spurious_filter(EnumerationResult& reps, double vmin, double tol);

// The alpha > 0 pipeline, same enumeration at the flipped-sign binding.
EnumerationResult real_a_branch(const RootList& roots, const ParamBinding& params_alpha_pos,
                                int p_max);

// Numeric fallback for structure functions without linear-in-E roots: for
// each p, eliminate u between Phi(0) = 0 and Phi(p+1) = 0 by a Sylvester
// resultant in u, isolate real E roots by Sturm bisection, and test
// positivity at the rational midpoints.
struct NumericRep {
  int p;
  double E;
  double u;
  bool positive;
};
std::vector<NumericRep> enumerate_reps_numeric(const StructureFn& phi, const ParamBinding& params,
                                               int p_max, double e_lo, double e_hi);

// Sturm-sequence count of real roots of poly (rational coefficients,
// ascending order) in the open interval (lo, hi).
int count_real_roots(const std::vector<Rational>& poly, const Rational& lo, const Rational& hi);

}  // namespace siqs
