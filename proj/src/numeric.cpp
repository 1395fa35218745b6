#include "siqs/numeric.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdlib>
#include <future>

namespace siqs {

namespace {

std::vector<double> tridiag_lowest(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, int k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("tridiagonal QL did not converge");
  std::vector<double> out;
  const auto& ev = solver.eigenvalues();
  for (int i = 0; i < ev.size() && i < k; ++i) out.push_back(ev(i));
  return out;
}

std::vector<double> solve_grid(const AxisSpec& axis,
                               const std::array<double, kNumSymbols>& vals, const Grid1D& grid,
                               int k) {
  const int n = grid.n_points;
  const double h = grid.spacing();
  const bool half_line = axis.domain == AxisDomain::HalfLinePositive;
  const double hbar = vals[static_cast<size_t>(sym::hbar.id())];
  const double kin = hbar * hbar / (2.0 * h * h);
  Eigen::VectorXd diag(n), sub(n - 1);
  std::array<double, kNumSymbols> pt = vals;
  for (int i = 0; i < n; ++i) {
    // Dirichlet at both ends; half-line grids start one spacing inside 0.
    double x = half_line ? (i + 1) * h : grid.lo + (i + 1) * h;
    pt[static_cast<size_t>(axis.var.id())] = x;
    double v = axis.potential.eval_double(pt);
    if (!std::isfinite(v))
      throw SingularPotentialOnGrid("potential not finite at grid point");
    diag(i) = 2.0 * kin + v;
  }
  for (int i = 0; i + 1 < n; ++i) sub(i) = -kin;
  return tridiag_lowest(diag, sub, k);
}

}  // namespace

EigenResult solve_1d(const AxisSpec& axis, const std::vector<std::pair<Symbol, Rational>>& params,
                     const Grid1D& grid, int k, bool richardson) {
  std::array<double, kNumSymbols> vals{};
  for (auto& [s, r] : params) vals[static_cast<size_t>(s.id())] = r.to_double();
  double alpha = vals[static_cast<size_t>(sym::alpha.id())];
  if (axis.domain == AxisDomain::FullLine && axis.potential.den().depends_on(axis.var) &&
      alpha > 0.0)
    throw SingularPotentialOnGrid("full-line axis is singular for alpha > 0");

  EigenResult res;
  res.grid = grid;
  Grid1D fine = grid;
  if (axis.domain == AxisDomain::HalfLinePositive) fine.lo = 0.0;
  res.eigenvalues = solve_grid(axis, vals, fine, k);
  if (richardson) {
    Grid1D coarse = fine;
    coarse.n_points = fine.n_points / 2;
    std::vector<double> ec = solve_grid(axis, vals, coarse, k);
    // Central differences converge as h^2: E(h) = E + c h^2, so the paired
    // solves combine as (4 E_h - E_2h) / 3.  (coarse h is ~2x fine h)
    double hf = fine.spacing(), hc = coarse.spacing();
    double r2 = (hc * hc) / (hf * hf);
    for (size_t i = 0; i < res.eigenvalues.size() && i < ec.size(); ++i)
      res.richardson.push_back((r2 * res.eigenvalues[i] - ec[i]) / (r2 - 1.0));
  }
  return res;
}

std::vector<Level2D> assemble_2d(const EigenResult& ex, const EigenResult& ey, double e_max) {
  std::vector<Level2D> out;
  const auto& vx = ex.best();
  const auto& vy = ey.best();
  for (size_t i = 0; i < vx.size(); ++i)
    for (size_t j = 0; j < vy.size(); ++j)
      if (vx[i] + vy[j] <= e_max) out.push_back({vx[i] + vy[j], static_cast<int>(i), static_cast<int>(j)});
  std::sort(out.begin(), out.end(), [](const Level2D& a, const Level2D& b) { return a.energy < b.energy; });
  return out;
}

MatchReport compare_spectra(const std::vector<double>& numeric,
                            const std::vector<double>& algebraic, double tol) {
  MatchReport rep;
  for (double e : numeric) {
    MatchRow row;
    row.numeric = e;
    row.algebraic = std::numeric_limits<double>::quiet_NaN();
    row.residual = std::numeric_limits<double>::infinity();
    for (double a : algebraic) {
      double r = std::abs(e - a);
      if (r < row.residual) {
        row.residual = r;
        row.algebraic = a;
      }
    }
    rep.max_residual = std::max(rep.max_residual, row.residual);
    rep.rows.push_back(row);
  }
  rep.pass = !rep.rows.empty() && rep.max_residual < tol;
  return rep;
}

}  // namespace siqs
