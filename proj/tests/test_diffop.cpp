#include <doctest.h>

#include <random>

#include "siqs/catalog.hpp"

using namespace siqs;

namespace {

DiffOp D(int k = 1) { return DiffOp::d_op(sym::x, k); }
DiffOp mul(const MultiPoly& p) { return DiffOp::mul_op(sym::x, RatFunc(p)); }
MultiPoly X() { return MultiPoly::var(sym::x); }

DiffOp random_op(std::mt19937& rng, int max_order = 2, int max_deg = 2) {
  std::uniform_int_distribution<int> ord(0, max_order), deg(0, max_deg), coeff(-4, 4);
  DiffOp op(sym::x);
  for (int k = 0; k <= ord(rng); ++k) {
    MultiPoly c;
    for (int d = 0; d <= deg(rng); ++d) c += Rational(coeff(rng)) * X().pow(d);
    op += DiffOp::d_op(sym::x, k, RatFunc(c));
  }
  return op;
}

}  // namespace

TEST_CASE("Leibniz: D after multiplication by x") {
  DiffOp lhs = compose(D(), mul(X()));
  DiffOp rhs = compose(mul(X()), D()) + DiffOp::identity(sym::x);
  CHECK(lhs == rhs);
}

TEST_CASE("multiplication after D picks up no derivative term") {
  DiffOp lhs = compose(mul(X()), D());
  CHECK(lhs.order() == 1);
  CHECK(lhs.coeff(1) == RatFunc(X()));
  CHECK(lhs.coeff(0).is_zero());
}

TEST_CASE("canonical pair commutator") {
  CHECK(commutator(D(), mul(X())) == DiffOp::identity(sym::x));
}

TEST_CASE("commutator of an operator with itself vanishes") {
  std::mt19937 rng(3);
  for (int i = 0; i < 10; ++i) {
    DiffOp f = random_op(rng);
    CHECK(commutator(f, f).is_zero());
  }
}

TEST_CASE("Jacobi identity on random operators") {
  std::mt19937 rng(5);
  for (int i = 0; i < 8; ++i) {
    DiffOp f = random_op(rng), g = random_op(rng), h = random_op(rng);
    DiffOp j = commutator(f, commutator(g, h)) + commutator(g, commutator(h, f)) +
               commutator(h, commutator(f, g));
    CHECK(j.is_zero());
  }
}

TEST_CASE("composition is associative") {
  std::mt19937 rng(9);
  for (int i = 0; i < 8; ++i) {
    DiffOp f = random_op(rng), g = random_op(rng), h = random_op(rng);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
  }
}

TEST_CASE("composition adds orders") {
  auto& sw = catalog_get("sw1");
  CHECK(sw.x_axis.aplus.order() == 2);
  DiffOp prod = compose(sw.x_axis.aplus, adjoint(sw.x_axis.aplus));
  CHECK(prod.order() == 4);
}

TEST_CASE("polynomial of an operator: unit and squares") {
  auto& ho = catalog_get("ho2d");
  DiffOp h = ho.x_axis.hamiltonian();
  CHECK(poly_of_operator(MultiPoly(Rational(1)), sym::E, h) == DiffOp::identity(sym::x));
  DiffOp h2 = poly_of_operator(MultiPoly::var(sym::E, 2), sym::E, h);
  CHECK(h2.order() == 4);
  CHECK(h2 == compose(h, h));
}

TEST_CASE("catalogued Q evaluated at the SW hamiltonian is the ladder product") {
  auto& sw = catalog_get("sw1");
  DiffOp h = sw.x_axis.hamiltonian();
  DiffOp q_op = poly_of_operator(sw.x_axis.Q, sym::E, h);
  // Q is quadratic, h is second order: the image has order 4 and equals a+ a.
  CHECK(q_op.order() == 4);
  CHECK(q_op == compose(sw.x_axis.aplus, adjoint(sw.x_axis.aplus)));
}

TEST_CASE("textbook oscillator ladder certificate") {
  auto& ho = catalog_get("ho2d");
  LadderCert cert = verify_ladder(ho.x_axis.hamiltonian(), ho.x_axis.aplus, sym::E);
  CHECK(cert.lambda == MultiPoly::var(sym::hbar) * MultiPoly::var(sym::omega));
  CHECK(cert.verified);
}

TEST_CASE("third-order axis certificate reproduces the published lambda and Q") {
  auto& p1 = catalog_get("p1");
  LadderCert cert = verify_ladder(p1.x_axis.hamiltonian(), p1.x_axis.aplus, sym::E);
  MultiPoly lam = MultiPoly::var(sym::hbar, 2) * MultiPoly::var(sym::alpha, -1) * Rational(1, 2);
  CHECK(cert.lambda == lam);
  CHECK(cert.Q ==
        MultiPoly::parse("2*E^3 - 7/2*E^2*hbar^2*alpha^-1 + 7/8*E*hbar^4*alpha^-2 + "
                         "15/32*hbar^6*alpha^-3"));
}

TEST_CASE("SW axis certificate: lambda = 2 hbar omega and the published Q") {
  auto& sw = catalog_get("sw1");
  LadderCert cert = verify_ladder(sw.x_axis.hamiltonian(), sw.x_axis.aplus, sym::E);
  CHECK(cert.lambda == Rational(2) * MultiPoly::var(sym::hbar) * MultiPoly::var(sym::omega));
  CHECK(cert.Q ==
        MultiPoly::parse("1/4*E^2*hbar^-2*omega^-2 - 1/2*E*hbar^-1*omega^-1 + 3/16 - "
                         "1/2*b*hbar^-2"));
}

TEST_CASE("non-ladder operators are rejected") {
  auto& ho = catalog_get("ho2d");
  DiffOp h = ho.x_axis.hamiltonian();
  CHECK_THROWS_AS(verify_ladder(h, mul(X()), sym::E), NotALadder);
  // right lambda but wrong catalogued Q
  CHECK_THROWS_AS(
      verify_ladder(h, ho.x_axis.aplus, sym::E, MultiPoly::var(sym::E) * Rational(3)), QMismatch);
}

TEST_CASE("tensor integrals exist exactly on resonance") {
  auto& p6 = catalog_get("p6");
  CHECK(verify_tensor_integral(p6.x_axis.hamiltonian(), p6.y_axis.hamiltonian(), p6.x_axis.aplus,
                               p6.y_axis.aplus, 1, 1, sym::E));
  CHECK_FALSE(verify_tensor_integral(p6.x_axis.hamiltonian(), p6.y_axis.hamiltonian(),
                                     p6.x_axis.aplus, p6.y_axis.aplus, 1, 2, sym::E));
  auto& p5 = catalog_get("p5");
  CHECK(verify_tensor_integral(p5.x_axis.hamiltonian(), p5.y_axis.hamiltonian(), p5.x_axis.aplus,
                               p5.y_axis.aplus, 2, 1, sym::E));
}

TEST_CASE("commutator order bookkeeping with constant leading coefficients") {
  std::mt19937 rng(13);
  for (int i = 0; i < 10; ++i) {
    DiffOp f = random_op(rng) + DiffOp::d_op(sym::x, 3, RatFunc(Rational(2)));
    DiffOp g = random_op(rng) + DiffOp::d_op(sym::x, 2, RatFunc(Rational(-1)));
    DiffOp c = commutator(f, g);
    if (!c.is_zero()) CHECK(c.order() <= f.order() + g.order() - 1);
  }
}
