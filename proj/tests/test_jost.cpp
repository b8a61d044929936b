#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "js/classical.hpp"
#include "js/errors.hpp"
#include "js/jost.hpp"

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

TEST_CASE("free Jost function") {
  auto c = CoeffSequence::free();
  for (cplx z : {cplx(0.2, 0.4), cplx(-1.5, -0.1), cplx(3.0, 0.0)}) {
    auto s = SpectralArg::interior(z);
    auto r = solve_jost(c, s, loose(c));
    cplx w = zeta(s);
    CHECK(std::abs(r.omega + 1.0 / (2.0 * w)) < 1e-13);
    for (index_t n : {0, 5, 40}) CHECK(std::abs(r.f[n] - std::pow(w, static_cast<double>(n))) < 1e-13);
  }
}

TEST_CASE("tail sums of power laws") {
  // sum_{m>N} m^{-2} = trigamma(N+1)
  const index_t N = 1000;
  double want = 0.0;
  for (index_t m = 2000000; m > N; --m) want += 1.0 / (static_cast<double>(m) * m);
  want += 1.0 / 2000000.5;
  CHECK(tail_sum([](index_t m) { return cplx(1.0 / (static_cast<double>(m) * m), 0.0); }, N).real() ==
        doctest::Approx(want).epsilon(1e-9));
  CHECK(std::isinf(tail_sum([](index_t m) { return cplx(std::pow(m, -0.7), 0.0); }, N).real()));
}

TEST_CASE("Neumann iteration and sweep agree") {
  auto c = family_sequence(ClassicalFamily::hermite());
  auto o = loose(c);
  auto s = SpectralArg::interior(cplx(0.5, 1.0));
  auto a = solve_jost(c, s, o);
  o.method = JostOptions::Method::Sweep;
  auto b = solve_jost(c, s, o);
  CHECK(std::abs(a.omega / b.omega - 1.0) < 1e-10);
  CHECK(a.residual < 1e-10);
}

TEST_CASE("Jost solution decays in l2 off the real axis") {
  auto c = CoeffSequence::power(1.0, 0.7);
  auto r = solve_jost(c, SpectralArg::interior(cplx(0.3, 0.5)), loose(c));
  double head = 0.0, tail = 0.0;
  for (index_t n = 0; n <= r.f.last(); ++n) (n < r.f.last() / 2 ? head : tail) += std::norm(r.f[n]);
  CHECK(tail < 1e-5 * head);
}

TEST_CASE("strict tails raise TailTooLarge") {
  auto c = family_sequence(ClassicalFamily::hermite());
  JostOptions o;
  o.nmax = 1000;
  CHECK_THROWS_AS(solve_jost(c, SpectralArg::interior(cplx(0.0, 1.0)), o), TailTooLarge);
}

TEST_CASE("conjugate symmetry") {
  auto c = CoeffSequence::stabilizing_power(0.3, 0.7, 0.1);
  auto o = loose(c);
  cplx z(0.4, 0.6);
  auto a = solve_jost(c, SpectralArg::interior(z), o);
  auto b = solve_jost(c, SpectralArg::interior(std::conj(z)), o);
  CHECK(std::abs(a.omega - std::conj(b.omega)) < 1e-10 * std::abs(a.omega));
}

TEST_CASE("second solution has unit Wronskian with f") {
  auto c = family_sequence(ClassicalFamily::hermite());
  auto r = solve_jost(c, SpectralArg::interior(cplx(1.0, 0.5)), loose(c));
  auto g = second_solution(r, c);
  for (index_t n : {0, 10, 100}) {
    // f and g are nearly parallel at small n, so the two products cancel.
    double terms = c.a(n) * (std::abs(r.f[n] * g[n + 1]) + std::abs(r.f[n + 1] * g[n]));
    CHECK(std::abs(wronskian(r.f, g, c, n) - 1.0) < 1e-14 * std::max(1.0, terms));
  }
}

TEST_CASE("non-Carleman pair") {
  auto c = CoeffSequence::power(1.0, 1.5);
  auto o = loose(c);
  auto p = jost_pair_noncarleman(c, cplx(0.5, 0.5), o);
  cplx limit = cplx(0.0, 2.0) / p.kappaInf * std::sqrt(1.0 - p.betaInf * p.betaInf);
  CHECK(std::abs(p.wronskian / limit - 1.0) < 1e-8);
  CHECK_THROWS_AS(solve_jost(c, SpectralArg::interior(cplx(0.5, 0.5)), o), DomainError);
}
