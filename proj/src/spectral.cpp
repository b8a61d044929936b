#include "js/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "js/errors.hpp"
#include "js/parallel.hpp"

namespace js {

namespace {

bool increasing(RegimeTag r) {
  return r == RegimeTag::IncreasingSmallDiag || r == RegimeTag::IncreasingLargeDiag || r == RegimeTag::NonCarleman;
}

JostOptions with_report(const CoeffSequence& c, const JostOptions& opt) {
  JostOptions o = opt;
  if (!o.report) o.report = classify(c, opt.rho0, opt.probeDepth);
  return o;
}

double scaled_inf(const RegimeReport& rep, double lambda) { return (lambda - rep.bInf) / (2.0 * rep.aInf); }

void require_ac(const RegimeReport& rep, double lambda, bool exactTail = false) {
  switch (rep.regime) {
    case RegimeTag::IncreasingSmallDiag:
      return;
    case RegimeTag::IncreasingLargeDiag:
      throw DomainError("spectrum is discrete for |beta_inf| > 1");
    case RegimeTag::NonCarleman:
      throw DomainError("non-Carleman coefficients: weights depend on the extension");
    default: {
      double l = scaled_inf(rep, lambda);
      if (std::abs(l) >= 1.0) throw DomainError("lambda = " + std::to_string(lambda) + " is off the essential spectrum");
      if (!exactTail && 1.0 - std::abs(l) < 1e-3) throw MarginError("lambda within 1e-3 of a threshold");
    }
  }
}

// Ansatz values A_n, n in [N0, nMax], at the point used by the Jost solve.
std::vector<XComplex> ansatz_run(const CoeffSequence& c, const RegimeReport& rep, const SpectralArg& z, index_t N0,
                                 index_t nMax) {
  std::vector<XComplex> A(static_cast<size_t>(nMax - N0 + 1));
  XComplex cur = ansatz(c, rep, z, N0, N0);
  for (index_t n = N0; n <= nMax; ++n) {
    A[static_cast<size_t>(n - N0)] = cur;
    cplx zt = zeta(scaled_point(c, z, n, rep.regime));
    cur *= XComplex(increasing(rep.regime) ? zt * std::sqrt(c.a(n) / c.a(n + 1)) : zt);
  }
  return A;
}

// Truncated-matrix eigenvalues, ascending.
Eigen::VectorXd truncated_eigenvalues(const CoeffSequence& c, index_t N) {
  Eigen::VectorXd d(N), e(N - 1);
  for (index_t n = 0; n < N; ++n) d(n) = c.b(n);
  for (index_t n = 0; n + 1 < N; ++n) e(n) = c.a(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

double weight_prefactor(const RegimeReport& rep, double lambda) {
  if (increasing(rep.regime)) {
    double b = rep.betaInf.value_or(0.0);
    return std::sqrt(1.0 - b * b);
  }
  double l = scaled_inf(rep, lambda);
  return rep.aInf * std::sqrt(1.0 - l * l);
}

WeightSample spectral_weight(const CoeffSequence& c, double lambda, const JostOptions& opt) {
  JostOptions o = with_report(c, opt);
  const RegimeReport& rep = *o.report;
  require_ac(rep, lambda, c.free_from().has_value());
  JostResult r = solve_jost(c, SpectralArg::plus(lambda), o);
  WeightSample w;
  w.lambda = lambda;
  w.regime = rep.regime;
  w.omega = r.omega;
  w.kappa = std::abs(r.omega);
  w.eta = std::arg(-r.omega);
  const double om2 = w.kappa * w.kappa;
  w.tau = weight_prefactor(rep, lambda) / (std::numbers::pi * om2);
  // {f, conj f} at n = -1 with a_{-1} = 1.
  double imW = (r.f.x(-1) * conj(r.f.x(0))).value().imag();
  w.tauWronskian = std::abs(imW) / (std::numbers::pi * om2);
  return w;
}

void unwrap_phase(std::vector<WeightSample>& samples) {
  for (size_t i = 1; i < samples.size(); ++i) {
    double d = samples[i].eta - samples[i - 1].eta;
    samples[i].eta -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
  }
}

cplx resolvent_element(const CoeffSequence& c, const SpectralArg& z, index_t n, index_t m, const JostOptions& opt) {
  if (n < 0 || m < 0) throw DomainError("resolvent indices must be >= 0");
  if (z.side == Side::Interior && z.value.imag() == 0.0 && std::abs(z.value) <= 1.0)
    throw DomainError("real z needs a side tag or must lie off the spectrum");
  JostOptions o = with_report(c, opt);
  if (o.report->regime == RegimeTag::NonCarleman) throw DomainError("non-Carleman: use extension_resolvent");
  const index_t lo = std::min(n, m), hi = std::max(n, m);
  o.nmax = std::max(o.nmax, hi + 2);
  JostResult r = solve_jost(c, z, o);
  if (hi > r.f.last()) throw DomainError("index " + std::to_string(hi) + " beyond the computed Jost range");
  double scale = std::max(r.f.x(0).log_abs(), r.f.x(-1).log_abs());
  if (r.omegaX.is_zero() || r.omegaX.log_abs() < scale + std::log(1e-12))
    throw PoleError("Omega vanishes at z: eigenvalue");
  SolutionSeq P = eval_P(c, z, lo);
  return (P.x(lo) * r.f.x(hi) / r.omegaX).value();
}

RealPrediction predict_Pn_real_seq(const CoeffSequence& c, double lambda, index_t nMax, const JostOptions& opt) {
  JostOptions o = with_report(c, opt);
  const RegimeReport& rep = *o.report;
  require_ac(rep, lambda);
  SpectralArg z = SpectralArg::plus(lambda);
  JostResult r = solve_jost(c, z, o);
  RealPrediction out;
  out.first = r.N0;
  out.kappa = std::abs(r.omega);
  out.eta = std::arg(-r.omega);
  out.prefactor = weight_prefactor(rep, lambda);
  if (nMax < r.N0) return out;
  std::vector<XComplex> A = ansatz_run(c, rep, z, r.N0, nMax);
  const XComplex om = conj(r.omegaX);
  out.values.reserve(A.size());
  for (const XComplex& a : A) out.values.push_back((om * a).value().imag() / out.prefactor);
  return out;
}

double predict_Pn_real(const CoeffSequence& c, double lambda, index_t n, const JostOptions& opt) {
  RealPrediction p = predict_Pn_real_seq(c, lambda, n, opt);
  if (n < p.first) throw DomainError("prediction needs n >= N0 = " + std::to_string(p.first));
  return p.at(n);
}

cplx predict_Pn_complex(const CoeffSequence& c, const SpectralArg& z, index_t n, const JostOptions& opt) {
  JostOptions o = with_report(c, opt);
  const RegimeReport& rep = *o.report;
  if (rep.regime == RegimeTag::NonCarleman) throw DomainError("non-Carleman: P_n(z) is in l^2, no growing branch");
  JostResult r = solve_jost(c, z, o);
  if (n < r.N0) throw DomainError("prediction needs n >= N0 = " + std::to_string(r.N0));
  std::vector<XComplex> A = ansatz_run(c, rep, z, r.N0, n);
  const XComplex An = A.back();
  double scale = std::max(r.f.x(0).log_abs(), r.f.x(-1).log_abs());
  if (r.omegaX.is_zero() || r.omegaX.log_abs() < scale + std::log(1e-9)) {
    // Eigenvalue: P = {P, g} f and {P, g} = -g_{-1}.
    SolutionSeq g = second_solution(r, c);
    return (-g.x(-1) * An).value();
  }
  cplx zt = zeta(scaled_point(c, z, n, rep.regime));
  cplx Wn = increasing(rep.regime) ? std::sqrt(c.a(n) / c.a(n + 1)) * (1.0 / zt - zt) : c.a(n) * (1.0 / zt - zt);
  XComplex h = increasing(rep.regime) ? XComplex(1.0) / (XComplex(c.a(n)) * An) : XComplex(1.0) / An;
  return (-r.omegaX * h / XComplex(Wn)).value();
}

std::vector<Eigenvalue> discrete_spectrum(const CoeffSequence& c, double lo, double hi, int grid,
                                          const JostOptions& opt) {
  if (!(hi > lo) || grid < 2) throw DomainError("need lo < hi and grid >= 2");
  JostOptions o = with_report(c, opt);
  const RegimeReport& rep = *o.report;
  if (rep.regime == RegimeTag::IncreasingSmallDiag) throw DomainError("essential spectrum is the whole real line");
  if (rep.regime == RegimeTag::NonCarleman) throw DomainError("non-Carleman: use extension_spectrum");
  if (!increasing(rep.regime)) {
    double e0 = rep.bInf - 2.0 * rep.aInf, e1 = rep.bInf + 2.0 * rep.aInf;
    if (hi > e0 && lo < e1)
      throw DomainError("interval meets the essential spectrum [" + std::to_string(e0) + ", " + std::to_string(e1) + "]");
  }
  auto sgn = [&](double x) {
    JostResult r = solve_jost(c, SpectralArg::interior(cplx(x, 0.0)), o);
    double v = r.omegaX.m.real();
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
  };
  std::vector<double> xs(static_cast<size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) xs[static_cast<size_t>(i)] = lo + (hi - lo) * i / grid;
  std::vector<int> s = grid_map(xs, sgn);
  std::vector<double> roots;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    if (s[i] == 0) {
      roots.push_back(xs[i]);
      continue;
    }
    if (s[i] * s[i + 1] >= 0) continue;
    double a = xs[i], b = xs[i + 1];
    int sa = s[i];
    int changes = 0, prev = s[i];
    for (int k = 1; k <= 4; ++k) {
      int sk = k < 4 ? sgn(a + (b - a) * k / 4.0) : s[i + 1];
      if (sk != 0 && sk != prev) ++changes;
      if (sk != 0) prev = sk;
    }
    if (changes > 1) throw GridTooCoarse("several sign changes near " + std::to_string(a) + "; raise --grid");
    while (b - a > 1e-11 * std::max(1.0, std::abs(a))) {
      double mid = 0.5 * (a + b);
      int sm = sgn(mid);
      if (sm == 0) {
        a = b = mid;
        break;
      }
      if (sm == sa) a = mid;
      else b = mid;
    }
    roots.push_back(0.5 * (a + b));
  }
  if (s.back() == 0) roots.push_back(xs.back());
  std::vector<Eigenvalue> out;
  if (roots.empty()) return out;
  Eigen::VectorXd ev = truncated_eigenvalues(c, std::max<index_t>(2000, o.nmax));
  for (double x : roots) {
    Eigenvalue e;
    e.lambda = x;
    e.oracleGap = (ev.array() - x).abs().minCoeff();
    e.mass = point_mass(c, x, o);
    out.push_back(e);
  }
  return out;
}

double point_mass(const CoeffSequence& c, double lambda, const JostOptions& opt) {
  JostOptions o = with_report(c, opt);
  auto g = [&](double d) {
    JostResult r = solve_jost(c, SpectralArg::interior(cplx(lambda + d, 0.0)), o);
    return d * (r.f.x(0) / r.omegaX).value().real();
  };
  const double h = 1e-4;
  auto G = [&](double hh) { return 0.5 * (g(hh) + g(-hh)); };
  return -(4.0 * G(0.5 * h) - G(h)) / 3.0;
}

}  // namespace js
