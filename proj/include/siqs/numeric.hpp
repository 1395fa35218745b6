#pragma once

#include "siqs/catalog.hpp"

namespace siqs {

struct Grid1D {
  double lo = -14.0, hi = 14.0;  // half-line axes use (0, hi]
  int n_points = 4000;
  double spacing() const { return (hi - lo) / (n_points + 1); }
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending, k lowest
  Grid1D grid;
  std::vector<double> richardson;   // extrapolated values when computed
  const std::vector<double>& best() const {
    return richardson.empty() ? eigenvalues : richardson;
  }
};

struct SingularPotentialOnGrid : std::runtime_error {
  explicit SingularPotentialOnGrid(const std::string& w) : std::runtime_error(w) {}
};
struct ConvergenceFailure : std::runtime_error {
  explicit ConvergenceFailure(const std::string& w) : std::runtime_error(w) {}
};

// k lowest eigenvalues of -(hbar^2/2) d^2/dx^2 + V on the axis domain, by
// second-order central differences and a symmetric tridiagonal QL solve.
// With richardson = true the solve is repeated at half resolution and the
// h^2 error term eliminated.
EigenResult solve_1d(const AxisSpec& axis, const std::vector<std::pair<Symbol, Rational>>& params,
                     const Grid1D& grid, int k, bool richardson = true);

struct Level2D {
  double energy;
  int ix, iy;  // axis level indices
};

// All sums ex[i] + ey[j] below e_max, ascending.
std::vector<Level2D> assemble_2d(const EigenResult& ex, const EigenResult& ey, double e_max);

struct MatchRow {
  double numeric;
  double algebraic;  // nearest
  double residual;
};

struct MatchReport {
  std::vector<MatchRow> rows;
  double max_residual = 0.0;
  bool pass = false;
};

// For each numeric level, nearest algebraic energy and residual; pass iff
// every residual is below tol.
MatchReport compare_spectra(const std::vector<double>& numeric,
                            const std::vector<double>& algebraic, double tol);

}  // namespace siqs
