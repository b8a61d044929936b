#include <doctest.h>

#include <cmath>

#include "js/classical.hpp"
#include "js/quadrature.hpp"
#include "js/recurrence.hpp"

using namespace js;

namespace {
// int tau over (-1, 1) by a Chebyshev rule of the first kind.
double mass(const ClassicalFamily& f) {
  auto q = gauss_chebyshev1(20000);
  double s = 0.0;
  for (size_t k = 0; k < q.nodes.size(); ++k)
    s += q.weights[k] * classical_weight(f, q.nodes[k]) * std::sqrt(1.0 - q.nodes[k] * q.nodes[k]);
  return s;
}
}  // namespace

TEST_CASE("Pollaczek coefficients") {
  auto [a, b] = family_coeffs(ClassicalFamily::pollaczek(1.0, 0.0), 0);
  CHECK(a == doctest::Approx(1.0 / std::sqrt(15.0)));
  CHECK(b == 0.0);
  auto [a5, b5] = family_coeffs(ClassicalFamily::pollaczek(1.0, 0.4), 5);
  CHECK(a5 == doctest::Approx(6.0 / std::sqrt(13.0 * 15.0)));
  CHECK(b5 == doctest::Approx(-0.8 / 13.0));
}

TEST_CASE("weights are normalized") {
  CHECK(mass(ClassicalFamily::pollaczek(1.0, 0.3)) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(mass(ClassicalFamily::chebyshev_first()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mass(ClassicalFamily::chebyshev_second()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mass(ClassicalFamily::jacobi(0.3, -0.2)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(jacobi_norm(0.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("Jacobi coefficients reproduce the weight") {
  // Stieltjes on a fine Chebyshev discretization of the Jacobi weight.
  auto f = ClassicalFamily::jacobi(0.3, -0.2);
  auto q = gauss_chebyshev1(20000);
  std::vector<double> w(q.nodes.size());
  double total = 0.0;
  for (size_t k = 0; k < q.nodes.size(); ++k) {
    w[k] = q.weights[k] * classical_weight(f, q.nodes[k]) * std::sqrt(1.0 - q.nodes[k] * q.nodes[k]);
    total += w[k];
  }
  for (double& x : w) x /= total;
  auto back = favard_from_measure(q.nodes, w, 12);
  auto c = family_sequence(f);
  for (index_t n = 0; n < 12; ++n) {
    CHECK(back.a(n) == doctest::Approx(c.a(n)).epsilon(1e-6));
    CHECK(back.b(n) == doctest::Approx(c.b(n)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("Jacobi coefficients approach the free ones at rate n^-2") {
  auto f = ClassicalFamily::jacobi(0.3, -0.2);
  auto [a1, b1] = family_coeffs(f, 1000);
  auto [a2, b2] = family_coeffs(f, 2000);
  CHECK((a1 - 0.5) / (a2 - 0.5) == doctest::Approx(4.0).epsilon(0.01));
  CHECK(b1 / b2 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("Hermite asymptotics") {
  auto f = ClassicalFamily::hermite();
  auto c = family_sequence(f);
  const index_t n = 4000;
  for (double l : {0.0, 0.5, 1.3}) {
    double p = eval_P(c, SpectralArg::interior(l), n)[n].real();
    double env = std::sqrt(2.0) * std::pow(M_PI, -0.25) * std::exp(l * l / 2.0) * std::pow(2.0 * n + 1.0, -0.25);
    CHECK(std::abs(p - reference_asymptotic(f, SpectralArg::interior(l), n).real()) < 0.02 * env);
  }
}

TEST_CASE("Jacobi asymptotics off the interval") {
  auto f = ClassicalFamily::jacobi(0.3, -0.2);
  auto c = family_sequence(f);
  const index_t n = 300;
  for (cplx z : {cplx(1.5, 0.0), cplx(0.2, 0.6)}) {
    auto s = SpectralArg::interior(z);
    cplx p = eval_P(c, s, n)[n];
    CHECK(std::abs(p / reference_asymptotic(f, s, n) - 1.0) < 1e-2);
  }
}

TEST_CASE("Laguerre asymptotics") {
  auto f = ClassicalFamily::laguerre(0.5);
  auto c = family_sequence(f);
  const index_t n = 3000;
  auto s = SpectralArg::interior(-1.0);
  CHECK(std::abs(eval_P(c, s, n)[n] / reference_asymptotic(f, s, n) - 1.0) < 2e-2);
}
