#include "js/recurrence.hpp"

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>

#include "js/errors.hpp"

namespace js {

namespace {

// Extrapolates x(D) from samples at D/4, D/2, D assuming geometric decay of differences.
double extrapolate(double x1, double x2, double x4) {
  double d1 = x2 - x1, d2 = x4 - x2;
  if (std::abs(d2) < 1e-15 || std::abs(d1) < 1e-300) return x4;
  double rho = d2 / d1;
  if (rho > 0.0 && rho < 0.95) return x4 + d2 * rho / (1.0 - rho);
  return x4;
}

}  // namespace

std::string to_string(SolutionLabel l) {
  switch (l) {
    case SolutionLabel::FirstKindP: return "FirstKindP";
    case SolutionLabel::SecondKindQ: return "SecondKindQ";
    case SolutionLabel::Jost: return "Jost";
    case SolutionLabel::Growing: return "Growing";
    case SolutionLabel::JostPlus: return "JostPlus";
    case SolutionLabel::JostMinus: return "JostMinus";
  }
  return "?";
}

RegimeReport classify(const CoeffSequence& c, double rho0, index_t depth) {
  if (depth < 100) throw DomainError("classify needs probe depth >= 100");
  RegimeReport rep;
  rep.rho0 = rho0;
  std::ostringstream why;

  if (c.free_from()) {
    rep.regime = RegimeTag::ShortRange;
    rep.betaInf = 0.0;
    rep.N0 = *c.free_from();
    rep.epsMargin = 0.25;
    why << "exact free tail from n=" << rep.N0;
    rep.heuristics = why.str();
    return rep;
  }

  // Largest depth with finite log a_n.
  index_t D = depth;
  while (D > 8 && !(std::isfinite(c.a(D)) && c.a(D) > 0.0)) D /= 2;
  if (D < 100) throw OverflowGuard("coefficients overflow before n = 100");
  for (index_t n = 0; n <= D; ++n)
    if (!(c.a(n) > 0.0) || !std::isfinite(c.b(n)))
      throw DomainError("a_" + std::to_string(n) + " must be positive and b_n finite");

  double la = std::log(c.a(D)), la2 = std::log(c.a(D / 2)), la4 = std::log(c.a(D / 4));
  double p = (la - la2) / std::log(2.0);
  double step = std::log(c.a(D)) - std::log(c.a(D - 1));
  rep.exponent = p;
  bool geometric = step > 0.01 && (la2 - la4) > 0.01 * static_cast<double>(D / 4);
  double invSum = 0.0, invHalf = 0.0;
  for (index_t n = 0; n <= D; ++n) {
    invSum += 1.0 / c.a(n);
    if (n == D / 2) invHalf = invSum;
  }
  why << "a-exponent fit p=" << p << " on [" << D / 2 << "," << D << "]; sum 1/a_n halves: " << invHalf << " -> "
      << invSum;

  if (p > 0.05 || geometric) {
    double bD = beta_n(c, D), b2 = beta_n(c, D / 2), b4 = beta_n(c, D / 4);
    double binf = extrapolate(b4, b2, bD);
    if (std::abs(binf) < 1e-13) binf = 0.0;
    rep.betaInf = binf;
    rep.carleman = !(geometric || p > 1.05);
    why << "; beta_inf~" << binf;
    if (std::abs(std::abs(binf) - 1.0) < 0.02)
      throw AmbiguousRegime("|beta_inf| ~ " + std::to_string(std::abs(binf)) + " is within 0.02 of 1");
    if (!rep.carleman) {
      rep.regime = RegimeTag::NonCarleman;
      if (std::abs(binf) > 1.0) throw DomainError("non-Carleman coefficients need |beta_inf| < 1");
    } else {
      rep.regime = std::abs(binf) < 1.0 ? RegimeTag::IncreasingSmallDiag : RegimeTag::IncreasingLargeDiag;
    }
    double eps = std::abs(std::abs(binf) - 1.0) / 2.0;
    rep.epsMargin = eps;
    if (rep.regime == RegimeTag::NonCarleman) {
      // z-independent scaled points beta_n; margin on beta only.
      index_t n0 = 0;
      for (index_t m = D; m >= 1; --m)
        if (std::abs(beta_n(c, m) - binf) > eps) {
          n0 = m + 1;
          break;
        }
      rep.N0 = n0;
    } else {
      index_t n0 = 0;
      for (index_t m = D; m >= 1; --m)
        if (alpha_n(c, m) * rho0 + std::abs(beta_n(c, m) - binf) > eps) {
          n0 = m + 1;
          break;
        }
      if (n0 > D / 2)
        throw MarginError("margin |z_m +- 1| >= " + std::to_string(eps) + " not reached by n=" + std::to_string(D) +
                          " for |z| <= " + std::to_string(rho0));
      rep.N0 = n0;
    }
    rep.heuristics = why.str();
    return rep;
  }

  // Bounded coefficients.
  double aInf = extrapolate(c.a(D / 4), c.a(D / 2), c.a(D));
  double bInf = extrapolate(c.b(D / 4), c.b(D / 2), c.b(D));
  if (std::abs(bInf) < 1e-13) bInf = 0.0;
  rep.aInf = aInf;
  rep.bInf = bInf;
  rep.betaInf = -bInf / (2.0 * aInf);
  double tail = 0.0;
  for (index_t n = D / 2; n <= D; ++n) tail += std::abs(c.a(n) - 0.5) + std::abs(c.b(n));
  why << "; a_inf~" << aInf << " b_inf~" << bInf << " tail=" << tail;
  rep.epsMargin = 0.25;
  bool shortRange = std::abs(aInf - 0.5) < 1e-12 && std::abs(bInf) < 1e-12 && tail < 1e-10;
  rep.regime = shortRange ? RegimeTag::ShortRange : RegimeTag::Stabilizing;
  index_t n0 = 0;
  for (index_t m = D; m >= 0; --m)
    if ((std::abs(c.a(m) - aInf) + 0.5 * std::abs(c.b(m) - bInf)) / aInf > rep.epsMargin) {
      n0 = m + 1;
      break;
    }
  rep.N0 = n0;
  rep.heuristics = why.str();
  return rep;
}

double SolutionSeq::residual(const CoeffSequence& c, cplx z) const {
  double worst = 0.0;
  for (index_t n = 0; n < last(); ++n) {
    XComplex t1 = XComplex(c.a(n - 1)) * x(n - 1);
    XComplex t2 = XComplex(cplx(c.b(n)) - z) * x(n);
    XComplex t3 = XComplex(c.a(n)) * x(n + 1);
    XComplex r = t1 + t2 + t3;
    double big = std::max({t1.log_abs(), t2.log_abs(), t3.log_abs()});
    if (!std::isfinite(big) || r.is_zero()) continue;
    worst = std::max(worst, std::exp(r.log_abs() - big));
  }
  return worst;
}

void SolutionSeq::check(const CoeffSequence& c, cplx z, double tol) const {
  double r = residual(c, z);
  if (!(r <= tol))
    throw NoConvergence(to_string(label_) + " sequence violates the recurrence: residual " + std::to_string(r));
}

SolutionSeq run_forward(const CoeffSequence& c, cplx z, XComplex um1, XComplex u0, index_t N, SolutionLabel label) {
  std::vector<XComplex> out;
  out.reserve(static_cast<size_t>(N + 2));
  out.push_back(um1);
  out.push_back(u0);
  // Plain arithmetic with a shared exponent; rescale when large.
  std::int64_t e = std::max(um1.is_zero() ? INT64_MIN / 2 : um1.e, u0.is_zero() ? INT64_MIN / 2 : u0.e);
  if (um1.is_zero() && u0.is_zero()) e = 0;
  auto lower = [e](const XComplex& v) {
    if (v.is_zero()) return cplx(0.0, 0.0);
    std::int64_t d = v.e - e;
    if (d < -1000) return cplx(0.0, 0.0);
    return cplx(std::ldexp(v.m.real(), static_cast<int>(d)), std::ldexp(v.m.imag(), static_cast<int>(d)));
  };
  cplx prev = lower(um1), cur = lower(u0);
  for (index_t n = 0; n < N; ++n) {
    cplx next = ((z - c.b(n)) * cur - c.a(n - 1) * prev) / c.a(n);
    prev = cur;
    cur = next;
    out.emplace_back(cur, e);
    double s = std::max(std::abs(cur.real()), std::abs(cur.imag()));
    if (s > 1e250 || (s < 1e-250 && s > 0.0)) {
      int k = 0;
      std::frexp(s, &k);
      prev = cplx(std::ldexp(prev.real(), -k), std::ldexp(prev.imag(), -k));
      cur = cplx(std::ldexp(cur.real(), -k), std::ldexp(cur.imag(), -k));
      e += k;
    }
  }
  return SolutionSeq(std::move(out), label);
}

SolutionSeq eval_P(const CoeffSequence& c, const SpectralArg& z, index_t N) {
  if (N < 0) throw DomainError("eval_P needs N >= 0");
  return run_forward(c, z.value, XComplex(0.0), XComplex(1.0), N, SolutionLabel::FirstKindP);
}

SolutionSeq eval_Q(const CoeffSequence& c, const SpectralArg& z, index_t N) {
  if (N < 0) throw DomainError("eval_Q needs N >= 0");
  // a_{-1} = 1: Q_{-1} = -1 makes the relation hold at n = 0 with Q_1 = 1/a_0.
  return run_forward(c, z.value, XComplex(-1.0), XComplex(0.0), N, SolutionLabel::SecondKindQ);
}

XComplex wronskian_x(const SolutionSeq& u, const SolutionSeq& v, const CoeffSequence& c, index_t n) {
  return XComplex(c.a(n)) * (u.x(n) * v.x(n + 1) - u.x(n + 1) * v.x(n));
}

cplx wronskian(const SolutionSeq& u, const SolutionSeq& v, const CoeffSequence& c, index_t n) {
  return wronskian_x(u, v, c, n).value();
}

std::vector<cplx> apply_jacobi(const CoeffSequence& c, const std::vector<cplx>& u) {
  const index_t N = static_cast<index_t>(u.size());
  std::vector<cplx> out(u.size());
  for (index_t n = 0; n < N; ++n) {
    cplx s = c.b(n) * u[static_cast<size_t>(n)];
    if (n > 0) s += c.a(n - 1) * u[static_cast<size_t>(n - 1)];
    if (n + 1 < N) s += c.a(n) * u[static_cast<size_t>(n + 1)];
    out[static_cast<size_t>(n)] = s;
  }
  return out;
}

LeadingCoeffs leading_coeffs(const CoeffSequence& c, index_t N) {
  if (N < 1) throw DomainError("leading_coeffs needs N >= 1");
  LeadingCoeffs lc;
  double logk = 0.0, r = 0.0;
  for (index_t n = 0; n <= N; ++n) {
    lc.logk.push_back(logk);
    lc.k.push_back(std::exp(logk));
    lc.r.push_back(r);
    logk -= std::log(c.a(n));
    r -= c.b(n);
  }
  return lc;
}

std::vector<std::vector<double>> monomial_coeffs(const CoeffSequence& c, index_t N) {
  std::vector<std::vector<double>> P(static_cast<size_t>(N + 1));
  P[0] = {1.0};
  std::vector<double> prev;
  for (index_t n = 0; n < N; ++n) {
    const auto& cur = P[static_cast<size_t>(n)];
    std::vector<double> next(cur.size() + 1, 0.0);
    for (size_t k = 0; k < cur.size(); ++k) {
      next[k + 1] += cur[k];
      next[k] -= c.b(n) * cur[k];
    }
    for (size_t k = 0; k < prev.size(); ++k) next[k] -= c.a(n - 1) * prev[k];
    for (double& v : next) v /= c.a(n);
    prev = cur;
    P[static_cast<size_t>(n + 1)] = std::move(next);
  }
  return P;
}

GaussRule gauss_rule(const CoeffSequence& c, index_t N) {
  if (N < 1) throw DomainError("gauss_rule needs N >= 1");
  Eigen::VectorXd d(N), e(N > 1 ? N - 1 : 1);
  for (index_t n = 0; n < N; ++n) d(n) = c.b(n);
  for (index_t n = 0; n + 1 < N; ++n) e(n) = c.a(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e.head(N - 1), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NoConvergence("tridiagonal eigensolver failed");
  // Christoffel numbers 1 / sum P_n(x)^2 keep relative accuracy where the weights are tiny.
  GaussRule g;
  double total = 0.0;
  for (index_t k = 0; k < N; ++k) {
    const double x = es.eigenvalues()(k);
    double pPrev = 0.0, p = 1.0, s = 1.0, scale = 0.0;
    for (index_t n = 0; n + 1 < N; ++n) {
      double next = ((x - c.b(n)) * p - c.a(n - 1) * pPrev) / c.a(n);
      pPrev = p;
      p = next;
      s += p * p;
      if (s > 1e200) {
        s *= 1e-200;
        p *= 1e-100;
        pPrev *= 1e-100;
        scale += 200.0;
      }
    }
    g.nodes.push_back(x);
    g.weights.push_back(std::exp(-std::log(s) - scale * std::log(10.0)));
    total += g.weights.back();
  }
  for (double& w : g.weights) w /= total;
  return g;
}

CoeffSequence favard_from_measure(const std::vector<double>& nodes, const std::vector<double>& weights, index_t N) {
  const size_t M = nodes.size();
  if (M != weights.size() || M == 0) throw DomainError("nodes and weights differ in length");
  if (static_cast<size_t>(2 * N) > M) throw DomainError("favard_from_measure needs N <= nodes/2");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw DomainError("weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("weights must sum to 1");
  std::vector<double> qPrev(M, 0.0), q(M, 1.0), a, b;
  double aPrev = 0.0;
  for (index_t n = 0; n < N; ++n) {
    double bn = 0.0;
    for (size_t k = 0; k < M; ++k) bn += weights[k] * nodes[k] * q[k] * q[k];
    std::vector<double> r(M);
    for (size_t k = 0; k < M; ++k) r[k] = (nodes[k] - bn) * q[k] - aPrev * qPrev[k];
    // One reorthogonalization pass against q_n keeps b_n accurate.
    double corr = 0.0;
    for (size_t k = 0; k < M; ++k) corr += weights[k] * r[k] * q[k];
    for (size_t k = 0; k < M; ++k) r[k] -= corr * q[k];
    double nrm = 0.0;
    for (size_t k = 0; k < M; ++k) nrm += weights[k] * r[k] * r[k];
    nrm = std::sqrt(nrm);
    if (nrm <= 1e-14) throw BreakdownError("norm vanished at n=" + std::to_string(n) + "; support too small");
    b.push_back(bn + corr);
    a.push_back(nrm);
    for (size_t k = 0; k < M; ++k) {
      qPrev[k] = q[k];
      q[k] = r[k] / nrm;
    }
    aPrev = nrm;
  }
  return CoeffSequence::tabulated(std::move(a), std::move(b), "free", "favard");
}

MomentTable moments_from_operator(const CoeffSequence& c, index_t nMax) {
  if (nMax > 24 || nMax < 0) throw DomainError("moments_from_operator needs 0 <= nMax <= 24");
  const index_t M = nMax + 2;
  MomentTable t;
  std::vector<cplx> v(static_cast<size_t>(M), 0.0);
  v[0] = 1.0;
  for (index_t n = 0; n <= nMax; ++n) {
    t.s.push_back(v[0].real());
    v = apply_jacobi(c, v);
  }
  using boost::multiprecision::cpp_rational;
  // Hankel determinants by exact Gaussian elimination; doubles convert exactly.
  index_t K = nMax / 2;
  for (index_t k = 0; k <= K; ++k) {
    std::vector<std::vector<cpp_rational>> H(static_cast<size_t>(k + 1), std::vector<cpp_rational>(static_cast<size_t>(k + 1)));
    for (index_t i = 0; i <= k; ++i)
      for (index_t j = 0; j <= k; ++j) H[i][j] = cpp_rational(t.s[static_cast<size_t>(i + j)]);
    cpp_rational det = 1;
    for (index_t col = 0; col <= k; ++col) {
      index_t piv = col;
      while (piv <= k && H[piv][col] == 0) ++piv;
      if (piv > k) {
        det = 0;
        break;
      }
      if (piv != col) {
        std::swap(H[piv], H[col]);
        det = -det;
      }
      det *= H[col][col];
      for (index_t r = col + 1; r <= k; ++r) {
        if (H[r][col] == 0) continue;
        cpp_rational f = H[r][col] / H[col][col];
        for (index_t j = col; j <= k; ++j) H[r][j] -= f * H[col][j];
      }
    }
    t.hankelExact.push_back(det.str());
    t.hankelDet.push_back(static_cast<double>(det));
  }
  return t;
}

cplx hankel_polynomial(const MomentTable& m, index_t n, cplx z) {
  if (n < 0 || n > 10) throw DomainError("hankel_polynomial supports 0 <= n <= 10");
  if (static_cast<index_t>(m.s.size()) < 2 * n + 1) throw DomainError("moments up to s_{2n} are required");
  if (n == 0) return 1.0;
  using boost::multiprecision::cpp_rational;
  auto det = [](std::vector<std::vector<cpp_rational>> H) {
    const size_t k = H.size();
    cpp_rational d = 1;
    for (size_t col = 0; col < k; ++col) {
      size_t piv = col;
      while (piv < k && H[piv][col] == 0) ++piv;
      if (piv == k) return cpp_rational(0);
      if (piv != col) {
        std::swap(H[piv], H[col]);
        d = -d;
      }
      d *= H[col][col];
      for (size_t r = col + 1; r < k; ++r) {
        if (H[r][col] == 0) continue;
        cpp_rational f = H[r][col] / H[col][col];
        for (size_t j = col; j < k; ++j) H[r][j] -= f * H[col][j];
      }
    }
    return d;
  };
  auto hankel = [&](index_t k) {
    std::vector<std::vector<cpp_rational>> H(static_cast<size_t>(k + 1), std::vector<cpp_rational>(static_cast<size_t>(k + 1)));
    for (index_t i = 0; i <= k; ++i)
      for (index_t j = 0; j <= k; ++j) H[i][j] = cpp_rational(m.s[static_cast<size_t>(i + j)]);
    return H;
  };
  cpp_rational dn = det(hankel(n)), dn1 = det(hankel(n - 1));
  if (dn <= 0 || dn1 <= 0) throw PositivityError("Hankel determinant not positive at order " + std::to_string(dn <= 0 ? n : n - 1));
  // Expand along the last row (1, z, ..., z^n); cofactors are exact.
  cplx sum = 0.0, zp = 1.0;
  for (index_t j = 0; j <= n; ++j) {
    std::vector<std::vector<cpp_rational>> minor;
    for (index_t i = 0; i < n; ++i) {
      std::vector<cpp_rational> row;
      for (index_t k = 0; k <= n; ++k)
        if (k != j) row.push_back(cpp_rational(m.s[static_cast<size_t>(i + k)]));
      minor.push_back(std::move(row));
    }
    double cof = static_cast<double>(det(minor));
    if ((n + j) % 2 != 0) cof = -cof;
    sum += cof * zp;
    zp *= z;
  }
  return sum / std::sqrt(static_cast<double>(dn) * static_cast<double>(dn1));
}

}  // namespace js
