#include <doctest.h>

#include <cmath>

#include "js/classical.hpp"
#include "js/errors.hpp"
#include "js/scattering.hpp"

using namespace js;

namespace {
CoeffSequence bump() { return CoeffSequence::perturbed_free({{1, 0.7}}, {{0, 0.3}, {2, -0.2}}); }
}  // namespace

TEST_CASE("trace differences in closed form") {
  Scattering s(bump());
  CHECK(s.trace_difference(1) == doctest::Approx(0.1));
  // sum b^2 + 2 sum (a^2 - 1/4)
  CHECK(s.trace_difference(2) == doctest::Approx(0.09 + 0.04 + 2.0 * (0.49 - 0.25)));
}

TEST_CASE("log D has the trace expansion at large z") {
  Scattering s(bump());
  const double z = 40.0;
  cplx series = 0.0;
  for (int n = 1; n <= 8; ++n) series -= s.trace_difference(n) / (n * std::pow(z, n));
  CHECK(std::abs(std::log(s.determinant(SpectralArg::interior(z))) - series) < 1e-12);
}

TEST_CASE("determinant is real off the spectrum and conjugate symmetric") {
  Scattering s(bump());
  CHECK(std::abs(s.determinant(SpectralArg::interior(-3.0)).imag()) < 1e-14);
  cplx z(0.3, 0.4);
  CHECK(std::abs(s.determinant(SpectralArg::interior(z)) - std::conj(s.determinant(SpectralArg::interior(std::conj(z))))) <
        1e-13);
}

TEST_CASE("eigenvalues of one-site perturbations") {
  for (double g : {1.5, -0.8}) {
    Scattering s(CoeffSequence::perturbed_free({}, {{0, g}}));
    REQUIRE(s.eigenvalues().size() == 1);
    CHECK(s.eigenvalues()[0] == doctest::Approx(g + 0.25 / g).epsilon(1e-9));
    CHECK(std::abs(s.determinant(SpectralArg::interior(s.eigenvalues()[0]))) < 1e-8);
  }
}

TEST_CASE("Levinson counts") {
  std::vector<double> grid = {0.0};
  auto jump = [&](const CoeffSequence& c) { return Scattering(c).spectral_shift(grid).jump(); };
  CHECK(jump(CoeffSequence::free()) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(jump(CoeffSequence::perturbed_free({}, {{0, -1.5}})) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(jump(CoeffSequence::perturbed_free({}, {{0, 1.5}, {3, -1.5}})) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(jump(CoeffSequence::perturbed_free({}, {{0, -0.5}})) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("spectral shift vanishes for free coefficients") {
  const std::vector<double> grid = {-0.5, 0.0, 0.5};
  auto d = spectral_shift(CoeffSequence::free(), grid);
  for (double x : d.xi) CHECK(std::abs(x) < 1e-12);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(d.tau[i] == doctest::Approx(2.0 / M_PI * std::sqrt(1.0 - grid[i] * grid[i])).epsilon(1e-12));
}

TEST_CASE("sum rules on a bump") {
  Scattering s(bump());
  for (int n = 0; n <= 4; ++n) CHECK(s.case_sum_rule(n).gap() < 1e-10);
  for (int n = 1; n <= 4; ++n) CHECK(s.trace_identity(n).gap() < 1e-10);
}

TEST_CASE("threshold data") {
  Scattering s(family_sequence(ClassicalFamily::chebyshev_first()));
  const auto& p = s.threshold(1);
  CHECK(p.resonant);
  CHECK(*p.f0inv == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(p.omegaAt - p.omegaSeries) < 1e-12);
  Scattering b(bump());
  CHECK_FALSE(b.threshold(-1).resonant);
  CHECK(std::abs(b.threshold(-1).omegaAt - b.threshold(-1).omegaSeries) < 1e-12);
}

TEST_CASE("long-range coefficients are rejected") {
  CHECK_THROWS_AS(Scattering(CoeffSequence::stabilizing_power(0.3, 0.7)), NotShortRange);
}

TEST_CASE("Szego factorization with a bump") {
  std::vector<cplx> zs = {0.0, cplx(0.5, 0.1), cplx(-0.7, -0.2)};
  CHECK(szego_factorization(bump(), zs).residual < 1e-10);
}
