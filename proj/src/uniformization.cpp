#include "js/uniformization.hpp"

#include <cmath>
#include <sstream>

#include "js/errors.hpp"

namespace js {

namespace {

bool is_increasing(RegimeTag r) {
  return r == RegimeTag::IncreasingSmallDiag || r == RegimeTag::IncreasingLargeDiag ||
         r == RegimeTag::NonCarleman;
}

void check_branch(const cplx& z) {
  if (std::abs(z - 1.0) < kBranchTol || std::abs(z + 1.0) < kBranchTol) {
    std::ostringstream os;
    os << "z = " << z << " is a branch point";
    throw BranchPointError(os.str());
  }
}

// exp(w) with the real part kept in the exponent.
XComplex xexp(cplx w) {
  double re = w.real() / std::log(2.0);
  double fl = std::floor(re);
  return XComplex(std::polar(std::exp2(re - fl), w.imag()), static_cast<std::int64_t>(fl));
}

}  // namespace

SpectralArg SpectralArg::conj() const {
  Side s = side == Side::PlusI0 ? Side::MinusI0 : side == Side::MinusI0 ? Side::PlusI0 : Side::Interior;
  return {std::conj(value), s};
}

cplx sqrt_z2_minus_1(const SpectralArg& z) {
  check_branch(z.value);
  if (z.side != Side::Interior) {
    if (z.value.imag() != 0.0) throw DomainError("side-tagged argument must be real");
    double l = z.value.real();
    if (std::abs(l) > 1.0) return std::copysign(std::sqrt(l * l - 1.0), l);
    double r = std::sqrt((1.0 - l) * (1.0 + l));
    return z.side == Side::PlusI0 ? cplx(0.0, r) : cplx(0.0, -r);
  }
  cplx v = z.value;
  if (v.imag() == 0.0) {
    if (std::abs(v.real()) < 1.0) throw DomainError("real z inside (-1, 1) needs a side tag");
    v = cplx(v.real(), 0.0);  // drops a negative zero
  }
  return std::sqrt(v - 1.0) * std::sqrt(v + 1.0);
}

cplx zeta(const SpectralArg& z) {
  if (z.side != Side::Interior && std::abs(z.value.real()) < 1.0) {
    check_branch(z.value);
    double th = std::acos(z.value.real());
    return z.side == Side::PlusI0 ? std::polar(1.0, -th) : std::polar(1.0, th);
  }
  cplx s = sqrt_z2_minus_1(z);
  cplx v = z.value;
  cplx p = v + s, m = v - s;
  return std::abs(p) >= std::abs(m) ? 1.0 / p : m;
}

double zeta_threshold(int sign) { return sign > 0 ? 1.0 : -1.0; }

double alpha_n(const CoeffSequence& c, index_t n) { return 0.5 / std::sqrt(c.a(n - 1) * c.a(n)); }

double beta_n(const CoeffSequence& c, index_t n) { return -c.b(n) * alpha_n(c, n); }

SpectralArg scaled_point(const CoeffSequence& c, const SpectralArg& z, index_t n, RegimeTag regime) {
  if (n < 0) throw DomainError("scaled_point needs n >= 0");
  if (is_increasing(regime)) return {alpha_n(c, n) * z.value + beta_n(c, n), z.side};
  return {(z.value - c.b(n)) / (2.0 * c.a(n)), z.side};
}

PhaseSums phase_sums(const CoeffSequence& c, index_t N0, index_t nMax, double lambda, RegimeTag regime) {
  if (nMax < N0) throw DomainError("phase_sums needs nMax >= N0");
  PhaseSums ps;
  ps.N0 = N0;
  size_t len = static_cast<size_t>(nMax - N0 + 1);
  ps.phi.assign(len, 0.0);
  ps.phiLambda.assign(len, 0.0);
  bool inc = is_increasing(regime);
  bool large = inc;
  if (inc) ps.psi.assign(len, 0.0);
  std::vector<double> vphi(len, 0.0);
  for (index_t m = N0; m < nMax; ++m) {
    size_t i = static_cast<size_t>(m - N0);
    if (regime != RegimeTag::IncreasingLargeDiag) {
      double lm = scaled_point(c, SpectralArg::plus(lambda), m, regime).value.real();
      if (std::abs(lm) >= 1.0) {
        std::ostringstream os;
        os << "scaled point " << lm << " outside (-1, 1) at index " << m;
        throw DomainError(os.str());
      }
      ps.phiLambda[i + 1] = ps.phiLambda[i] + std::acos(lm);
    }
    if (!inc) {
      ps.phi[i + 1] = ps.phiLambda[i + 1];
      continue;
    }
    double bm = beta_n(c, m);
    large = large && std::abs(bm) > 1.0;
    vphi[i + 1] = vphi[i] + (std::abs(bm) > 1.0 ? std::acosh(std::abs(bm)) : 0.0);
    if (m == N0) continue;
    if (regime != RegimeTag::IncreasingLargeDiag && std::abs(bm) >= 1.0) {
      std::ostringstream os;
      os << "beta_m = " << bm << " outside (-1, 1) at index " << m;
      throw DomainError(os.str());
    }
    double s = std::sqrt(std::abs(1.0 - bm * bm));
    ps.psi[i + 1] = ps.psi[i] + alpha_n(c, m) / s;
    ps.phi[i + 1] = ps.phi[i] + (std::abs(bm) < 1.0 ? std::acos(bm) : 0.0);
  }
  if (inc && large) ps.varphi = std::move(vphi);
  return ps;
}

std::vector<XComplex> theta_products(const CoeffSequence& c, index_t N0, index_t nMax, int sign, cplx z, int K,
                                     double betaInf) {
  if (K < 0 || K > 2) throw DomainError("theta_products supports K in {0, 1, 2}");
  if (nMax < N0) throw DomainError("theta_products needs nMax >= N0");
  bool large = std::abs(betaInf) > 1.0;
  std::vector<XComplex> out(static_cast<size_t>(nMax - N0 + 1));
  cplx logSum = 0.0;
  out[0] = XComplex(1.0);
  for (index_t m = N0; m < nMax; ++m) {
    double bm = beta_n(c, m), am = alpha_n(c, m);
    if (large ? std::abs(bm) <= 1.0 : std::abs(bm) >= 1.0) {
      std::ostringstream os;
      os << "beta_m = " << bm << " on the wrong side of 1 at index " << m;
      throw DomainError(os.str());
    }
    SpectralArg t = large ? SpectralArg::interior(bm) : (sign > 0 ? SpectralArg::plus(bm) : SpectralArg::minus(bm));
    cplx zt = zeta(t);
    logSum += std::log(zt);
    if (K >= 1) {
      cplx s = sqrt_z2_minus_1(t);
      logSum += -z * am / s;
      if (K >= 2) logSum += 0.5 * z * z * am * am * bm / (s * s * s);
    }
    out[static_cast<size_t>(m - N0 + 1)] = xexp(logSum);
  }
  return out;
}

}  // namespace js
