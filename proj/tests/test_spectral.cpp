#include <doctest.h>

#include <cmath>

#include "js/classical.hpp"
#include "js/errors.hpp"
#include "js/quadrature.hpp"
#include "js/spectral.hpp"

using namespace js;

namespace {
JostOptions loose(const CoeffSequence& c, index_t nmax = 4000) {
  JostOptions o;
  o.nmax = nmax;
  o.strictTail = false;
  o.report = classify(c);
  return o;
}
}  // namespace

TEST_CASE("Jacobi weight from the recurrence") {
  auto f = ClassicalFamily::jacobi(0.3, -0.2);
  auto c = family_sequence(f);
  auto o = loose(c);
  for (double l : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    auto w = spectral_weight(c, l, o);
    CHECK(w.tau == doctest::Approx(classical_weight(f, l)).epsilon(1e-8));
    CHECK(w.tauWronskian == doctest::Approx(w.tau).epsilon(1e-6));
  }
}

TEST_CASE("free resolvent is the Stieltjes transform of the weight") {
  auto q = gauss_chebyshev2(4000);
  for (cplx z : {cplx(0.3, 0.7), cplx(-1.2, 0.2), cplx(2.0, -1.0)}) {
    cplx want = 0.0;
    for (size_t k = 0; k < q.nodes.size(); ++k) want += q.weights[k] * (2.0 / M_PI) / (q.nodes[k] - z);
    CHECK(std::abs(resolvent_element(CoeffSequence::free(), SpectralArg::interior(z), 0, 0) - want) < 1e-12);
  }
}

TEST_CASE("resolvent is symmetric") {
  auto c = family_sequence(ClassicalFamily::hermite());
  auto o = loose(c);
  auto z = SpectralArg::interior(cplx(0.4, 0.8));
  CHECK(std::abs(resolvent_element(c, z, 2, 7, o) - resolvent_element(c, z, 7, 2, o)) < 1e-12);
}

TEST_CASE("single-site bound state") {
  // b_0 = g: eigenvalue g + 1/(4g), mass 1 - 1/(4 g^2).
  const double g = 1.5;
  auto ev = discrete_spectrum(CoeffSequence::perturbed_free({}, {{0, g}}), 1.01, 3.0, 200);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].lambda == doctest::Approx(g + 0.25 / g).epsilon(1e-10));
  CHECK(ev[0].mass == doctest::Approx(1.0 - 0.25 / (g * g)).epsilon(1e-8));
  CHECK(ev[0].oracleGap < 1e-8);
}

TEST_CASE("phase unwrapping is continuous") {
  auto c = CoeffSequence::stabilizing_power(0.3, 0.7);
  auto o = loose(c);
  std::vector<WeightSample> s;
  for (int i = 0; i < 60; ++i) s.push_back(spectral_weight(c, -0.95 + 1.9 * i / 59.0, o));
  unwrap_phase(s);
  for (size_t i = 1; i < s.size(); ++i) CHECK(std::abs(s[i].eta - s[i - 1].eta) <= M_PI);
}

TEST_CASE("weights off the essential spectrum are rejected") {
  CHECK_THROWS_AS(spectral_weight(CoeffSequence::free(), 1.5), DomainError);
  CHECK_THROWS_AS(resolvent_element(CoeffSequence::free(), SpectralArg::interior(0.5), 0, 0), DomainError);
}

TEST_CASE("complex prediction tracks P_n off the spectrum") {
  // Relative error decays like n^{-1/2} for Hermite.
  auto c = family_sequence(ClassicalFamily::hermite());
  auto o = loose(c);
  auto z = SpectralArg::interior(cplx(0.5, 0.5));
  auto P = eval_P(c, z, 4000);
  double e1 = std::abs(P[1000] / predict_Pn_complex(c, z, 1000, o) - 1.0);
  double e2 = std::abs(P[4000] / predict_Pn_complex(c, z, 4000, o) - 1.0);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(e2 < 5e-3);
}
