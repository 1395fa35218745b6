#pragma once

#include "siqs/catalog.hpp"

namespace siqs {

// Polynomial algebra [A,B] = C, [A,C] = delta B, [B,C] = sum_k c[k] A^k,
// with structure constants polynomial in E (the central Hamiltonian value)
// and the model parameters.
struct AlgebraSpec {
  MultiPoly delta;
  std::array<MultiPoly, 8> c{};  // c[k] multiplies A^k

  int degree() const {
    for (int k = 7; k >= 0; --k)
      if (!c[static_cast<size_t>(k)].is_zero()) return k;
    return -1;
  }
};

struct DegreeTooHigh : std::runtime_error {
  explicit DegreeTooHigh(const std::string& w) : std::runtime_error(w) {}
};
struct UnsupportedResonance : std::runtime_error {
  explicit UnsupportedResonance(const std::string& w) : std::runtime_error(w) {}
};
struct NotCentral : std::runtime_error {
  NotCentral(const std::string& w, MultiPoly res) : std::runtime_error(w), residual(std::move(res)) {}
  MultiPoly residual;
};

// Formal element of the two-axis ladder algebra: sum of words
// ax+^i ax^j ay+^k ay^l with coefficients polynomial in {H, A, params}.
// Products contract through ax ax+ = Q(Hx + lx), ax+ ax = Q(Hx) (same with
// S on the y axis), with Hx = H/2 + A/4 and Hy = H/2 - A/4.
class LadderAlgebra {
 public:
  struct Word {
    int cx = 0, ax = 0, cy = 0, ay = 0;  // creation/annihilation powers
    auto operator<=>(const Word&) const = default;
  };
  using Element = std::map<Word, MultiPoly>;

  LadderAlgebra(MultiPoly Q, MultiPoly S, MultiPoly lambda_x, MultiPoly lambda_y);
  static LadderAlgebra for_potential(const PotentialSpec& spec);

  Element mul(const Element& a, const Element& b) const;
  Element commutator(const Element& a, const Element& b) const;
  static Element add(Element a, const Element& b);
  static Element scale(const Element& a, const MultiPoly& f);
  static Element coefficient(const MultiPoly& f);  // f * identity word
  static bool is_zero(const Element& e);
  // The coefficient of the identity word; throws if ladder words remain.
  static MultiPoly scalar_part(const Element& e);

 private:
  MultiPoly shift_coeff(const MultiPoly& f, const Word& w) const;
  MultiPoly q_at(const MultiPoly& arg) const;  // Q(arg)
  MultiPoly s_at(const MultiPoly& arg) const;  // S(arg)
  MultiPoly Q_, S_, lx_, ly_;
};

// The integrals of motion in the primed normalization, kept as unprimed
// elements plus the scalar factor (sigma, i-parity) applied on demand.
struct IntegralTriple {
  LadderAlgebra::Element A_elt, I1, I2;  // unprimed
  MultiPoly sigma_squared;               // folds i^2 = -1 when parity is odd
  MultiPoly delta;                       // [A, I2] = delta I1 (primed-invariant)
  int m = 1, n = 1;
};

// Builds A, I1, I2 and certifies [A,I1] = I2 and [A,I2] = delta I1 in the
// ladder-word algebra. Throws UnsupportedResonance outside {(1,1),(2,1)}.
IntegralTriple build_integrals(const PotentialSpec& spec);

// [I'1, I'2] as a polynomial in {H, A, params} through the closed product
// formula Q/S evaluated at shifted arguments.
MultiPoly commutator_rhs(const PotentialSpec& spec);

// Same bracket evaluated from first principles by normal-ordering ladder
// words; must agree with commutator_rhs exactly.
MultiPoly commutator_rhs_from_words(const PotentialSpec& spec);

// Collects powers of A and renames H -> E.
AlgebraSpec to_algebra_spec(const MultiPoly& rhs, const MultiPoly& delta);

// Casimir A-polynomial coefficients d[k] (K = C^2 - delta B^2 + sum d[k] A^k,
// k = 1..8), derived from the unique solution of the centrality recurrence.
std::array<MultiPoly, 9> casimir_coeffs(const AlgebraSpec& spec);

// K as a polynomial in E, computed in the ladder-word realization.
// Throws NotCentral if any A-dependence or ladder word survives.
MultiPoly casimir_value(const PotentialSpec& spec);

// sqrt_delta^k -> delta^(k/2) sqrt_delta^(k mod 2); negative halves need an
// invertible (monomial) delta.
MultiPoly reduce_sqrt_delta(const MultiPoly& poly, const MultiPoly& delta);

}  // namespace siqs
