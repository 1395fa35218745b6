#pragma once

#include "siqs/polyalgebra.hpp"

namespace siqs {

// Structure function of the deformed oscillator realization. phi is stored
// as a polynomial in the shifted argument t = N + u (symbol x is reused as
// the evaluation point), with coefficients in {E, hbar, alpha, sqrt_delta}.
struct StructureFn {
  MultiPoly phi_t;
  int degree() const { return phi_t.degree(sym::x); }
  // phi evaluated at t = arg (exact substitution).
  MultiPoly at(const MultiPoly& arg) const { return phi_t.substitute(sym::x, arg); }
};

struct Inconsistent : std::runtime_error {
  Inconsistent(const std::string& w, MultiPoly res) : std::runtime_error(w), residual(std::move(res)) {}
  MultiPoly residual;
};
struct RelationFailed : std::runtime_error {
  RelationFailed(int which_rel, const std::string& w) : std::runtime_error(w), which(which_rel) {}
  int which;
};

// Normal-ordered expressions f(N) b+^p b^q over a fixed structure function.
// Rewriting uses b f(N) = f(N+1) b, b+ f(N) = f(N-1) b+, b b+ = Phi(N+1),
// b+ b = Phi(N), and sqrt_delta^2 -> delta.
class OscAlgebra {
 public:
  using Key = std::pair<int, int>;  // (b+ power, b power)
  using Element = std::map<Key, MultiPoly>;

  OscAlgebra(MultiPoly phi_of_N, MultiPoly delta)
      : phi_(std::move(phi_of_N)), delta_(std::move(delta)) {}

  Element mul(const Element& a, const Element& b) const;
  Element commutator(const Element& a, const Element& b) const;
  static Element add(Element a, const Element& b);
  static Element scale(const Element& a, const MultiPoly& f);
  static Element coefficient(const MultiPoly& f);
  static Element ladder_up();    // b+
  static Element ladder_down();  // b
  bool is_zero(const Element& e) const;

  MultiPoly reduce(const MultiPoly& f) const;  // sqrt_delta^2 -> delta

 private:
  MultiPoly phi_;  // Phi(N), polynomial in N
  MultiPoly delta_;
};

// Solves the two functional equations for Phi:
//   (i)  2 sqrt(delta) (Phi(t+1) - Phi(t)) = sum_k c_k delta^(k/2) t^k
//   (ii) -2 delta (Phi(t) + Phi(t+1)) + sum_j d_j delta^(j/2) t^j = K
// The antidifference fixes Phi up to a constant and (ii) pins it; (ii) must
// then hold identically in t, otherwise Inconsistent is thrown.
StructureFn derive_phi(const AlgebraSpec& spec, const MultiPoly& K);

// Realized Casimir -2 delta (Phi(t)+Phi(t+1)) + P_A(t); must be t-free.
MultiPoly reduce_casimir(const AlgebraSpec& spec, const StructureFn& phi);

struct RelationReport {
  bool ok = false;
  std::string detail;
};

// Verifies [A,B] = C, [A,C] = delta B, [B,C] = sum c_k A^k as exact
// normal-ordered identities with A = sqrt(delta)(N+u), B = b+ + b,
// C = sqrt(delta)(b+ - b).
RelationReport check_relations(const AlgebraSpec& spec, const StructureFn& phi);

// Transcription of the published closed form for Phi (the literature
// reference); used only to populate the typo ledger by comparison.
MultiPoly phi_closed_form_reference(const AlgebraSpec& spec, const MultiPoly& K);

}  // namespace siqs
