#pragma once

#include "siqs/diffop.hpp"

namespace siqs {

enum class AxisDomain { FullLine, HalfLinePositive };

// One separable axis: 1D potential, its raising operator, and the certified
// ladder data. Construction runs the full operator-level verification, so a
// populated AxisSpec is self-consistent by definition.
struct AxisSpec {
  Symbol var{sym::x};
  RatFunc potential;           // V(var), in alpha-form
  DiffOp aplus;                // raising operator, exactly as catalogued
  MultiPoly lambda;            // [h, a+] = lambda a+
  MultiPoly Q;                 // a∘a+ = Q(h), univariate in E
  AxisDomain domain = AxisDomain::FullLine;

  DiffOp hamiltonian() const;  // -(hbar^2/2) D^2 + V
  AxisSpec renamed(Symbol to) const;
};

struct PotentialSpec {
  std::string name;
  AxisSpec x_axis, y_axis;
  int res_m = 1, res_n = 1;    // m*lambda_x = n*lambda_y
  MultiPoly scaling;           // rational part of the primed-integral factor
  int scaling_i_parity = 0;    // 1 if the factor carries one power of i
  // sigma^2 including i^2 = -1 when the parity is odd.
  MultiPoly sigma_squared() const;
  // Common ladder step of the resonance (n * lambda_y).
  MultiPoly resonance_lambda() const;
};

struct UnknownPotential : std::runtime_error {
  explicit UnknownPotential(const std::string& n)
      : std::runtime_error("unknown potential '" + n + "'") {}
};
struct SingularOnDomain : std::runtime_error {
  explicit SingularOnDomain(const std::string& what) : std::runtime_error(what) {}
};

// Names: ho2d, sw1, p1, p5, p6.
const PotentialSpec& catalog_get(const std::string& name);
std::vector<std::string> catalog_names();

struct MinPotentialOptions {
  double box = 20.0;       // scan half-width for full-line axes
  int n_points = 20000;
  // Restrict full-line axes to the open interval between the inner
  // singularities at +-sqrt(alpha); required when alpha > 0.
  bool central_domain = false;
};

// Numeric global minimum of V(x,y) = v1(x) + v2(y) on the physical domain.
double min_potential(const PotentialSpec& spec,
                     const std::vector<std::pair<Symbol, Rational>>& params,
                     const MinPotentialOptions& opts = {});

}  // namespace siqs
