#include "js/limitcircle.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "js/errors.hpp"
#include "js/parallel.hpp"

namespace js {

namespace {

JostOptions nc_options(const CoeffSequence& c, const JostOptions& opt) {
  JostOptions o = opt;
  if (!o.report) o.report = classify(c, opt.rho0, opt.probeDepth);
  if (o.report->regime != RegimeTag::NonCarleman) throw DomainError("coefficients are not classified NonCarleman");
  return o;
}

cplx omega_root(cplx omega) { return std::polar(1.0, 0.5 * std::arg(omega)); }

void check_unimodular(cplx omega) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) throw DomainError("omega must satisfy |omega| = 1");
}

}  // namespace

cplx ExtensionData::wronskianLimit() const {
  return cplx(0.0, 2.0 * std::sqrt(1.0 - betaInf * betaInf) / kappaInf);
}

double ExtensionData::identityResidual() const {
  return std::abs(wronskianLimit() * (sigmaPlus * tauMinus - sigmaMinus * tauPlus) - 1.0);
}

ExtensionData boundary_coefficients(const CoeffSequence& c, cplx z, const JostOptions& opt) {
  JostOptions o = nc_options(c, opt);
  JostPair pr = jost_pair_noncarleman(c, z, o);
  ExtensionData e;
  e.z = z;
  e.kappaInf = pr.kappaInf;
  e.betaInf = pr.betaInf;
  e.wronskian = pr.wronskian;
  const cplx W = e.wronskianLimit();
  // {P, f}_{-1} = -f_{-1}, {Q, f}_{-1} = -f_0.
  const cplx fp_m1 = pr.plus.f[-1], fm_m1 = pr.minus.f[-1];
  const cplx fp_0 = pr.plus.f[0], fm_0 = pr.minus.f[0];
  e.sigmaPlus = -fm_m1 / W;
  e.sigmaMinus = fp_m1 / W;
  e.tauPlus = -fm_0 / W;
  e.tauMinus = fp_0 / W;
  return e;
}

cplx quasiresolvent_element(const CoeffSequence& c, cplx z, index_t n, index_t j) {
  if (n < 0 || j < 0) throw DomainError("quasiresolvent indices must be >= 0");
  SpectralArg za{z, Side::Interior};
  index_t N = std::max(n, j);
  SolutionSeq P = eval_P(c, za, N), Q = eval_Q(c, za, N);
  return n >= j ? Q[n] * P[j] : P[n] * Q[j];
}

std::vector<cplx> quasiresolvent_column(const CoeffSequence& c, cplx z, index_t j, index_t N) {
  if (j < 0 || N < j) throw DomainError("quasiresolvent column needs 0 <= j <= N");
  SpectralArg za{z, Side::Interior};
  SolutionSeq P = eval_P(c, za, N), Q = eval_Q(c, za, N);
  std::vector<cplx> out(static_cast<size_t>(N + 1));
  for (index_t n = 0; n <= N; ++n) out[static_cast<size_t>(n)] = n >= j ? Q[n] * P[j] : P[n] * Q[j];
  return out;
}

cplx nevanlinna_gamma(const ExtensionData& e, cplx omega) {
  check_unimodular(omega);
  cplx den = e.sigmaPlus - omega * e.sigmaMinus;
  double scale = std::abs(e.sigmaPlus) + std::abs(e.sigmaMinus);
  if (std::abs(den) < 1e-12 * std::max(1.0, scale))
    throw EigenvalueHit("sigma+ - omega sigma- vanishes at z");
  return -(e.tauPlus - omega * e.tauMinus) / den;
}

cplx extension_resolvent(const CoeffSequence& c, cplx omega, cplx z, index_t n, index_t m, const JostOptions& opt) {
  ExtensionData e = boundary_coefficients(c, z, opt);
  cplx g = nevanlinna_gamma(e, omega);
  SpectralArg za{z, Side::Interior};
  SolutionSeq P = eval_P(c, za, std::max(n, m));
  return g * P[n] * P[m] + quasiresolvent_element(c, z, n, m);
}

std::vector<ExtensionRoot> extension_spectrum(const CoeffSequence& c, cplx omega, double lo, double hi, int grid,
                                              const JostOptions& opt) {
  check_unimodular(omega);
  if (!(hi > lo) || grid < 2) throw DomainError("need lo < hi and grid >= 2");
  JostOptions o = nc_options(c, opt);
  const cplx rot = 1.0 / omega_root(omega);
  // sigma- = conj sigma+ on the real axis, so sigma+ = omega sigma- iff Im(omega^{-1/2} sigma+) = 0.
  auto F = [&](double x) { return (rot * boundary_coefficients(c, x, o).sigmaPlus).imag(); };
  std::vector<double> xs(static_cast<size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) xs[static_cast<size_t>(i)] = lo + (hi - lo) * i / grid;
  std::vector<double> fv = grid_map(xs, F);
  std::vector<ExtensionRoot> out;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    if (fv[i] != 0.0 && fv[i] * fv[i + 1] >= 0.0) continue;
    double a = xs[i], b = xs[i + 1], fa = fv[i];
    if (fa != 0.0) {
      // Three interior samples catch a double crossing inside the cell.
      int changes = 0;
      double prev = fa;
      for (int k = 1; k <= 4; ++k) {
        double fk = k < 4 ? F(a + (b - a) * k / 4.0) : fv[i + 1];
        if (fk * prev < 0.0) ++changes;
        if (fk != 0.0) prev = fk;
      }
      if (changes > 1) throw GridTooCoarse("several zeros near " + std::to_string(a) + "; raise --grid");
      std::uintmax_t iters = 100;
      auto ab = boost::math::tools::toms748_solve(F, a, b, fa, fv[i + 1],
                                                   boost::math::tools::eps_tolerance<double>(44), iters);
      a = ab.first;
      b = ab.second;
    }
    ExtensionRoot r;
    r.lambda = 0.5 * (a + b);
    ExtensionData e = boundary_coefficients(c, r.lambda, o);
    r.residual = std::abs(e.sigmaPlus - omega * e.sigmaMinus) / (std::abs(e.sigmaPlus) + std::abs(e.sigmaMinus));
    out.push_back(r);
  }
  return out;
}

std::vector<double> truncated_extension_eigenvalues(const CoeffSequence& c, cplx omega, double lo, double hi,
                                                    index_t N, const JostOptions& opt) {
  check_unimodular(omega);
  JostOptions o = nc_options(c, opt);
  const RegimeReport& rep = *o.report;
  const double binf = rep.betaInf.value_or(0.0);
  const index_t N0 = rep.N0;
  if (N < N0 + 8) throw DomainError("truncation must exceed N0 + 8");
  // Theta+ at N - 1 and N from N0.
  std::vector<XComplex> th = theta_products(c, N0, N, 1, 0.0, 0, binf);
  const cplx thN1 = th[th.size() - 2].value(), thN = th.back().value();
  auto g = [&](index_t m) {
    double b = beta_n(c, m);
    return cplx(alpha_n(c, m) / std::sqrt(1.0 - b * b), 0.0);
  };
  const double TN = (g(N) + tail_sum(g, N)).real();
  const double TN1 = TN + g(N - 1).real();
  std::vector<double> d(static_cast<size_t>(N)), e(static_cast<size_t>(N - 1));
  for (index_t n = 0; n < N; ++n) d[static_cast<size_t>(n)] = c.b(n);
  for (index_t n = 0; n + 1 < N; ++n) e[static_cast<size_t>(n)] = c.a(n);
  const double dLast = d.back();
  auto diag_at = [&](double z) {
    // a^{1/2} u_n = omega t_n + conj(t_n), t_n = Theta+_n exp(-i z T_n).
    cplx tN = thN * std::exp(cplx(0.0, -z * TN)), tN1 = thN1 * std::exp(cplx(0.0, -z * TN1));
    cplx uN = (omega * tN + std::conj(tN)) / std::sqrt(c.a(N));
    cplx uN1 = (omega * tN1 + std::conj(tN1)) / std::sqrt(c.a(N - 1));
    std::vector<double> dd = d;
    dd.back() = dLast + c.a(N - 1) * (uN / uN1).real();
    return dd;
  };
  // Number of eigenvalues below x (Sturm sequence).
  auto count_below = [&](const std::vector<double>& dd, double x) {
    index_t k = 0;
    double q = 1.0;
    for (size_t i = 0; i < dd.size(); ++i) {
      double off = i > 0 ? e[i - 1] * e[i - 1] : 0.0;
      q = dd[i] - x - (i > 0 ? off / q : 0.0);
      if (q == 0.0) q = -1e-300;
      if (q < 0.0) ++k;
    }
    return k;
  };
  auto kth = [&](const std::vector<double>& dd, index_t k) {
    double lo2 = 0.0, hi2 = 0.0;
    for (size_t i = 0; i < dd.size(); ++i) {
      double r = (i > 0 ? e[i - 1] : 0.0) + (i < e.size() ? e[i] : 0.0);
      lo2 = std::min(lo2, dd[i] - r);
      hi2 = std::max(hi2, dd[i] + r);
    }
    for (int it = 0; it < 200 && hi2 - lo2 > 1e-14 * std::max(1.0, std::abs(lo2)); ++it) {
      double m = 0.5 * (lo2 + hi2);
      if (count_below(dd, m) > k) hi2 = m;
      else lo2 = m;
    }
    return 0.5 * (lo2 + hi2);
  };
  const std::vector<double> d0 = diag_at(0.0);
  const index_t kLo = count_below(d0, lo - 1.0), kHi = count_below(d0, hi + 1.0);
  std::vector<double> out;
  for (index_t k = kLo; k < kHi; ++k) {
    double x = kth(d0, k);
    for (int it = 0; it < 12; ++it) {
      std::vector<double> dd = diag_at(x);
      index_t m = count_below(dd, x);
      double xn = m > 0 ? kth(dd, m - 1) : kth(dd, 0);
      if (m < N) {
        double up = kth(dd, m);
        if (std::abs(up - x) < std::abs(xn - x)) xn = up;
      }
      bool done = std::abs(xn - x) < 1e-12 * std::max(1.0, std::abs(x));
      x = xn;
      if (done) break;
    }
    if (x >= lo && x <= hi) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }), out.end());
  return out;
}

BoundaryValues boundary_map_resolvent(const CoeffSequence& c, cplx omega, cplx z, index_t j,
                                      const ExtensionData& atZ, const ExtensionData& at0, index_t N) {
  if (j < 0 || N <= j) throw DomainError("boundary map needs 0 <= j < N");
  const cplx gam = nevanlinna_gamma(atZ, omega);
  SpectralArg za{z, Side::Interior}, z0{0.0, Side::Interior};
  SolutionSeq P = eval_P(c, za, N + 1), Q = eval_Q(c, za, N + 1);
  SolutionSeq P0 = eval_P(c, z0, N + 1), Q0 = eval_Q(c, z0, N + 1);
  // u = R_omega e_j; beyond j it is P_j X with X = gamma P + Q.
  auto X = [&](index_t n) { return gam * P[n] + Q[n]; };
  auto u = [&](index_t n) { return gam * P[j] * P[n] + (n >= j ? Q[n] * P[j] : P[n] * Q[j]); };
  const cplx xp = gam * atZ.sigmaPlus + atZ.tauPlus, xm = gam * atZ.sigmaMinus + atZ.tauMinus;
  const cplx W = atZ.wronskianLimit();
  // z sum_{n>N} X_n Y_n = w_N - w_inf, w_n = a_n (X_n Y_{n+1} - X_{n+1} Y_n).
  auto green_tail = [&](const SolutionSeq& Y, cplx yp, cplx ym) {
    cplx wN = c.a(N) * (X(N) * Y[N + 1] - X(N + 1) * Y[N]);
    cplx wInf = (xp * ym - xm * yp) * W;
    return P[j] * (wN - wInf);
  };
  cplx sQ = 0.0, sP = 0.0;
  for (index_t n = 0; n <= N; ++n) {
    sQ += u(n) * Q0[n];
    sP += u(n) * P0[n];
  }
  // (J u)_n = z u_n + delta_{nj}; Q(0), P(0) are real.
  cplx Gamma = u(0) - Q0[j] - (z * sQ + green_tail(Q0, at0.tauPlus, at0.tauMinus));
  cplx JuP = P0[j] + z * sP + green_tail(P0, at0.sigmaPlus, at0.sigmaMinus);
  BoundaryValues b;
  b.sPlus = Gamma * at0.sigmaPlus + JuP * at0.tauPlus;
  b.sMinus = Gamma * at0.sigmaMinus + JuP * at0.tauMinus;
  return b;
}

cplx boundary_pairing(const ExtensionData& e, const BoundaryValues& u, const BoundaryValues& v) {
  return e.wronskianLimit() * (u.sPlus * std::conj(v.sPlus) - u.sMinus * std::conj(v.sMinus));
}

NormIdentity norm_identity(const CoeffSequence& c, cplx z, const std::vector<index_t>& ladder, const JostOptions& opt) {
  if (ladder.size() < 2) throw DomainError("norm identity needs at least two truncations");
  ExtensionData e = boundary_coefficients(c, z, opt);
  NormIdentity r;
  r.lhs = std::norm(e.sigmaPlus) - std::norm(e.sigmaMinus);
  index_t Nmax = *std::max_element(ladder.begin(), ladder.end());
  SolutionSeq P = eval_P(c, SpectralArg{z, Side::Interior}, Nmax);
  const double pre = -z.imag() * e.kappaInf / std::sqrt(1.0 - e.betaInf * e.betaInf);
  std::vector<index_t> L = ladder;
  std::sort(L.begin(), L.end());
  double s = 0.0;
  index_t n = 0;
  for (index_t M : L) {
    for (; n <= M; ++n) s += std::norm(P[n]);
    r.N.push_back(M);
    r.rhs.push_back(pre * s);
  }
  // Neville extrapolation to h = N^{-1/2} = 0 through every ladder point.
  std::vector<double> h, p = r.rhs;
  for (index_t M : r.N) h.push_back(1.0 / std::sqrt(static_cast<double>(M)));
  for (size_t lvl = 1; lvl < p.size(); ++lvl)
    for (size_t i = p.size() - 1; i >= lvl; --i) p[i] = (h[i - lvl] * p[i] - h[i] * p[i - 1]) / (h[i - lvl] - h[i]);
  r.extrapolated = p.back();
  return r;
}

}  // namespace js
