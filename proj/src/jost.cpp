#include "js/jost.hpp"

#include <cmath>
#include <limits>

#include "js/errors.hpp"

namespace js {

namespace {

bool increasing(RegimeTag r) {
  return r == RegimeTag::IncreasingSmallDiag || r == RegimeTag::IncreasingLargeDiag || r == RegimeTag::NonCarleman;
}

XComplex xpow(cplx w, index_t n) {
  XComplex base(w), acc(1.0);
  for (index_t k = n; k > 0; k >>= 1) {
    if (k & 1) acc *= base;
    base *= base;
  }
  return acc;
}

cplx zeta_scaled(const CoeffSequence& c, RegimeTag regime, const SpectralArg& z, index_t n, int sign) {
  if (regime == RegimeTag::NonCarleman) {
    double b = beta_n(c, n);
    return zeta(sign > 0 ? SpectralArg::plus(b) : SpectralArg::minus(b));
  }
  return zeta(scaled_point(c, z, n, regime));
}

cplx zeta_inf(const RegimeReport& rep, const SpectralArg& z) {
  return zeta(SpectralArg{(z.value - rep.bInf) / (2.0 * rep.aInf), z.side});
}

// Largest index <= want such that a_n stays finite and positive through n + 2.
index_t finite_horizon(const CoeffSequence& c, index_t want) {
  for (index_t n = 0; n <= want + 2; ++n) {
    double a = c.a(n);
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(c.b(n))) return n - 3;
  }
  return want;
}

}  // namespace

LocalTerms local_terms(const CoeffSequence& c, RegimeTag regime, const SpectralArg& z, index_t n, int sign) {
  cplx zn = zeta_scaled(c, regime, z, n, sign);
  // At n = 0 only R_0 is ever used.
  cplx zp = n > 0 ? zeta_scaled(c, regime, z, n - 1, sign) : zn;
  LocalTerms t;
  t.zeta = zn;
  if (increasing(regime)) {
    double k = c.a(n) / std::sqrt(c.a(n - 1) * c.a(n + 1));
    t.R = k * zn;
    t.L = 1.0 / zp;
    t.r = (1.0 / zp - 1.0 / zn) + (k - 1.0) * zn;
    if (regime == RegimeTag::NonCarleman) t.r -= 2.0 * z.value * alpha_n(c, n);
  } else {
    t.R = c.a(n) * zn;
    t.L = c.a(n - 1) / zp;
    t.r = (c.a(n - 1) - c.a(n)) / zp + c.a(n) * (1.0 / zp - 1.0 / zn);
  }
  return t;
}

cplx remainder(const CoeffSequence& c, const SpectralArg& z, index_t n, RegimeTag regime) {
  if (n < 1) throw DomainError("remainder needs n >= 1");
  return local_terms(c, regime, z, n, regime == RegimeTag::NonCarleman ? 1 : 0).r;
}

XComplex ansatz(const CoeffSequence& c, const RegimeReport& rep, const SpectralArg& z, index_t N0, index_t n) {
  if (n < N0) throw DomainError("ansatz needs n >= N0");
  RegimeTag reg = rep.regime;
  int sign = reg == RegimeTag::NonCarleman ? (z.side == Side::MinusI0 ? -1 : 1) : 0;
  XComplex A = increasing(reg) ? XComplex(1.0 / std::sqrt(c.a(N0))) : xpow(zeta_inf(rep, z), N0);
  for (index_t m = N0; m < n; ++m) {
    cplx zm = zeta_scaled(c, reg, z, m, sign);
    A *= XComplex(increasing(reg) ? zm * std::sqrt(c.a(m) / c.a(m + 1)) : zm);
  }
  return A;
}

KernelSpec make_kernel(const CoeffSequence& c, RegimeTag regime, const SpectralArg& z, index_t N0, index_t Nmax,
                       const RegimeReport& rep, int sign) {
  KernelSpec k;
  k.regime = regime;
  k.z = z;
  k.N0 = N0;
  k.Nmax = Nmax;
  k.sign = sign;
  size_t len = static_cast<size_t>(Nmax - N0 + 2);
  k.zeta.resize(len);
  k.R.resize(len);
  k.L.resize(len);
  k.r.resize(len);
  k.kappa.resize(len);
  k.ansatz.resize(len);
  XComplex A = increasing(regime) ? XComplex(1.0 / std::sqrt(c.a(N0))) : xpow(zeta_inf(rep, z), N0);
  for (index_t n = N0; n <= Nmax + 1; ++n) {
    size_t i = k.idx(n);
    LocalTerms t = local_terms(c, regime, z, n, sign);
    k.zeta[i] = t.zeta;
    k.R[i] = t.R;
    k.L[i] = t.L;
    k.r[i] = t.r;
    k.kappa[i] = std::sqrt(c.a(n + 1) / c.a(n));
    k.ansatz[i] = A;
    A *= XComplex(increasing(regime) ? t.zeta * std::sqrt(c.a(n) / c.a(n + 1)) : t.zeta);
  }
  return k;
}

cplx volterra_kernel(const KernelSpec& s, index_t n, index_t m) {
  if (!(m > n && n >= s.N0 && m <= s.Nmax + 1)) throw DomainError("volterra_kernel needs N0 <= n < m <= Nmax+1");
  auto zt = [&](index_t j) { return s.zeta[s.idx(j)]; };
  cplx sum = 0.0;
  if (increasing(s.regime)) {
    // -kappa_{m-1}^{-1} zeta_m^{-1} sum_{p=n+1}^{m} kappa_{p-1} S_{m+1}/S_p,
    // S_{m+1}/S_p = zeta_{p-1} zeta_p^2 ... zeta_{m-1}^2 zeta_m.
    auto kap = [&](index_t j) { return s.kappa[s.idx(j)]; };
    cplx ratio = 1.0;
    for (index_t p = m; p >= n + 1; --p) {
      ratio *= zt(p) * zt(p - 1);
      sum += kap(p - 1) * ratio;
    }
    return -sum / (kap(m - 1) * zt(m));
  }
  // Stabilizing form: q_m^2 sum_{p=n}^{m-1} (a_p zeta_p)^{-1} q_p^{-2}; a_p zeta_p = R_p.
  cplx q2 = 1.0;  // q_m^2 / q_p^2
  for (index_t p = m - 1; p >= n; --p) {
    q2 *= zt(p) * zt(p);
    sum += q2 / s.R[s.idx(p)];
  }
  return sum;
}

namespace {

// Wynn epsilon on a short sequence; returns the last even-column entry.
cplx wynn_epsilon(const std::vector<cplx>& seq) {
  const size_t n = seq.size();
  if (n < 3) return seq.empty() ? cplx(0.0) : seq.back();
  std::vector<cplx> prev(n + 1, 0.0), cur(seq.begin(), seq.end());
  cplx best = seq.back();
  for (size_t k = 1; k < n; ++k) {
    std::vector<cplx> next(cur.size() - 1);
    for (size_t i = 0; i + 1 < cur.size(); ++i) {
      cplx diff = cur[i + 1] - cur[i];
      if (std::abs(diff) < 1e-300) return best;
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0) best = cur.back();
  }
  return best;
}

}  // namespace

cplx tail_sum(const std::function<cplx(index_t)>& F, index_t N) {
  auto finite = [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
  cplx s = 0.0;
  index_t x = ((N + 256) / 128 + 1) * 128;  // multiple of 128 keeps every block exactly (x, 3x]
  for (index_t m = N + 1; m <= x; ++m) {
    cplx v = F(m);
    if (!finite(v)) return s;
    s += v;
  }
  // Tripling blocks (x, 3x]: integer-node trapezoids with strides d and 2d, Richardson to unit stride.
  // After each block the remainder is estimated by a power law fitted on that block; the sequence of
  // these estimates is then accelerated, which removes subleading powers the single fit misses.
  constexpr int kBlocks = 8;
  std::vector<cplx> est;
  double lastP = 2.0;
  const double first = std::abs(F(N + 1));
  cplx fx = F(x);
  for (int b = 0; b < kBlocks; ++b) {
    const index_t d = x / 128;
    const index_t len = 256 * d;
    cplx t1 = 0.5 * fx, t2 = 0.5 * fx, fend = 0.0;
    for (index_t j = 1; j <= 256; ++j) {
      cplx v = F(x + j * d);
      if (!finite(v)) return est.empty() ? s : est.back();
      if (j == 256) {
        fend = v;
        t1 += 0.5 * v;
        t2 += 0.5 * v;
      } else {
        t1 += v;
        if (j % 2 == 0) t2 += v;
      }
    }
    cplx T1 = t1 * static_cast<double>(d), T2 = t2 * static_cast<double>(2 * d);
    cplx I = (4.0 * T1 - T2) / 3.0;
    s += I + (T1 - I) / static_cast<double>(d * d) + 0.5 * (fend - fx);
    cplx fStart = fx;
    x += len;
    fx = fend;
    // Euler-Maclaurin remainder for F ~ C m^{-p}.
    cplx rest = 0.0;
    if (std::abs(fx) > 0.0 && std::abs(fStart) > 0.0) {
      double X = static_cast<double>(x);
      double p = std::log(std::abs(fStart) / std::abs(fx)) / std::log(3.0);
      if (p > 1.05) rest = fx * (X / (p - 1.0) - 0.5 + p / (12.0 * X));
      lastP = p;
    }
    est.push_back(s + rest);
  }
  // Terms decaying slower than 1/m: the sum diverges. Such terms lose at most ~1e5 over the sampled
  // range; anything far below that is roundoff and fits no power law.
  if (lastP < 1.0 && std::abs(fx) > 1e-6 * first) return {std::numeric_limits<double>::infinity(), 0.0};
  return wynn_epsilon(est);
}

namespace {

struct VolterraOut {
  std::vector<cplx> u;
  int iterations = 0;
  std::vector<double> norms;
};

VolterraOut run_volterra(const KernelSpec& k, const JostOptions& opt, cplx S, cplx hc) {
  const index_t s = k.N0, N = k.Nmax;
  const size_t K = static_cast<size_t>(N - s + 1);
  VolterraOut out;
  if (opt.method == JostOptions::Method::Sweep) {
    std::vector<cplx> u(K);
    u[K - 1] = 1.0 / (1.0 + S);
    cplx D = hc * u[K - 1] / k.R[k.idx(N)];
    for (index_t n = N; n > s; --n) {
      size_t i = k.idx(n);
      D = (k.R[i] * D + k.r[i] * u[i]) / k.L[i];
      u[i - 1] = u[i] - D;
    }
    out.u = std::move(u);
    return out;
  }
  std::vector<cplx> ratio(K);
  for (index_t p = s; p < N; ++p) ratio[k.idx(p)] = k.R[k.idx(p)] / k.L[k.idx(p + 1)];
  std::vector<cplx> u(K, 1.0), term(K, 1.0), next(K);
  for (int it = 1; it <= opt.maxIter; ++it) {
    cplx v = S * term[K - 1];
    cplx h = hc * term[K - 1];
    next[K - 1] = -v;
    for (index_t p = N - 1; p >= s; --p) {
      size_t i = k.idx(p);
      h = ratio[i] * (k.r[i + 1] * term[i + 1] + h);
      v += h / k.R[i];
      next[i] = -v;
    }
    double nrm = 0.0;
    for (size_t i = 0; i < K; ++i) {
      term[i] = next[i];
      u[i] += term[i];
      nrm = std::max(nrm, std::abs(term[i]));
    }
    out.norms.push_back(nrm);
    out.iterations = it;
    if (!std::isfinite(nrm)) break;
    if (nrm < opt.tol) {
      out.u = std::move(u);
      return out;
    }
  }
  throw NoConvergence("Volterra iterations did not reach tol " + std::to_string(opt.tol) + " within " +
                      std::to_string(opt.maxIter) + " steps");
}

SolutionSeq extend_backward(const CoeffSequence& c, cplx z, const KernelSpec& k, const std::vector<cplx>& u,
                            SolutionLabel label) {
  const index_t s = k.N0, N = k.Nmax;
  std::vector<XComplex> f(static_cast<size_t>(N + 2));
  for (index_t n = s; n <= N; ++n) f[static_cast<size_t>(n + 1)] = k.ansatz[k.idx(n)] * XComplex(u[k.idx(n)]);
  for (index_t n = s; n >= 0; --n) {
    XComplex fn = f[static_cast<size_t>(n + 1)], fn1 = f[static_cast<size_t>(n + 2)];
    f[static_cast<size_t>(n)] = (XComplex(z - c.b(n)) * fn - XComplex(c.a(n)) * fn1) / XComplex(c.a(n - 1));
  }
  return SolutionSeq(std::move(f), label);
}

JostResult finish(const CoeffSequence& c, const SpectralArg& z, const KernelSpec& k, const JostOptions& opt,
                  RegimeTag regime, SolutionLabel label) {
  JostResult res;
  res.regime = regime;
  res.z = z;
  res.N0 = k.N0;
  res.Nmax = k.Nmax;
  auto absr = [&](index_t m) { return cplx(std::abs(local_terms(c, regime, z, m, k.sign).r), 0.0); };
  res.tailBound = tail_sum(absr, k.Nmax).real();
  if (opt.strictTail && res.tailBound > 100.0 * opt.tol)
    throw TailTooLarge("remainder tail " + std::to_string(res.tailBound) + " beyond Nmax=" + std::to_string(k.Nmax) +
                       " exceeds 100*tol; raise --nmax");
  cplx S = 0.0, hc = 0.0;
  if (opt.tailClosure && res.tailBound > 0.0) {
    // Beyond Nmax, u_{m-1} = (1 - t_m) u_m with t_m = D u_{m-1} / u_m. Quasi-static expansion of the
    // Riccati recursion t_m = (R_m t_{m+1} / (1 - t_{m+1}) + r_m) / L_m to second order.
    auto rho = [&](const LocalTerms& t) { return t.r / (t.L - t.R); };
    auto tq = [&](index_t m) {
      LocalTerms a = local_terms(c, regime, z, m, k.sign), b = local_terms(c, regime, z, m + 1, k.sign);
      cplx p0 = rho(a), p1 = rho(b);
      return p0 + a.R * (p1 - p0 + p0 * p0) / (a.L - a.R);
    };
    auto logq = [&](index_t m) {
      cplx q = tq(m);
      return std::abs(q) < 1e-4 ? -q * (1.0 + q * (0.5 + q / 3.0)) : std::log(1.0 - q);
    };
    S = std::exp(-tail_sum(logq, k.Nmax)) - 1.0;
    cplx t1 = tq(k.Nmax + 1);
    hc = k.R[k.idx(k.Nmax)] * t1 / (1.0 - t1);
  }
  VolterraOut vo = run_volterra(k, opt, S, hc);
  res.u = std::move(vo.u);
  res.iterations = vo.iterations;
  res.iterateNorms = std::move(vo.norms);
  res.f = extend_backward(c, z.value, k, res.u, label);
  res.omegaX = -res.f.x(-1);
  res.omega = res.omegaX.value();
  res.residual = res.f.residual(c, z.value);
  res.f.check(c, z.value, std::max(1e-9, 100.0 * opt.tol));
  return res;
}

}  // namespace

JostResult solve_jost(const CoeffSequence& c, const SpectralArg& z, const JostOptions& opt) {
  if (opt.tol < 1e-14) throw DomainError("tol must be >= 1e-14");
  RegimeReport rep = opt.report ? *opt.report : classify(c, opt.rho0, opt.probeDepth);
  RegimeTag regime = rep.regime;
  if (regime == RegimeTag::NonCarleman) throw DomainError("non-Carleman coefficients: use jost_pair_noncarleman");
  index_t N0 = rep.N0, Nmax = opt.nmax;
  if (increasing(regime)) {
    if (std::abs(z.value) > rep.rho0)
      throw MarginError("|z| = " + std::to_string(std::abs(z.value)) + " exceeds rho0 = " + std::to_string(rep.rho0));
  } else if (c.free_from() && regime == RegimeTag::ShortRange) {
    return solve_jost_shortrange(c, z, opt);
  } else {
    cplx zi = (z.value - rep.bInf) / (2.0 * rep.aInf);
    double eps = 0.5 * std::min(std::abs(zi - 1.0), std::abs(zi + 1.0));
    if (eps < 5e-4) throw MarginError("z is within 1e-3 of a threshold of the essential spectrum");
    Nmax = finite_horizon(c, Nmax);
    for (index_t m = Nmax + 1; m >= N0; --m) {
      cplx zm = (z.value - c.b(m)) / (2.0 * c.a(m));
      if (std::abs(zm - zi) > eps) {
        N0 = m + 1;
        break;
      }
    }
    if (N0 > Nmax / 2)
      throw MarginError("scaled points do not settle near (z-b_inf)/(2a_inf) before n=" + std::to_string(Nmax / 2));
  }
  Nmax = std::max(finite_horizon(c, Nmax), N0 + 2);
  KernelSpec k = make_kernel(c, regime, z, N0, Nmax, rep);
  return finish(c, z, k, opt, regime, SolutionLabel::Jost);
}

JostResult solve_jost_shortrange(const CoeffSequence& c, const SpectralArg& z, const JostOptions& opt) {
  index_t Nend = opt.nmax;
  if (c.free_from()) Nend = std::max<index_t>(*c.free_from() + 1, 1);
  const cplx zt = zeta(z), s = sqrt_z2_minus_1(z);
  if (std::abs(s) < kBranchTol) throw BranchPointError("z at a threshold");
  const cplx cc = 1.0 / s, zt2 = zt * zt;
  // u_n = zeta^{-n} f_n; y_m = zeta^{-m}(V f)_m; A_n = sum_{m>n} y_m, B_n = sum_{m>n} zeta^{2(m-n)} y_m.
  // Past the last perturbed site u_n = 1 exactly; f is still filled out to nmax.
  const index_t Nout = std::max(Nend, opt.nmax);
  std::vector<cplx> u(static_cast<size_t>(Nout + 3), 1.0);
  auto v = [&](index_t n) { return n < 0 ? 0.0 : c.a(n) - 0.5; };
  auto y = [&](index_t m) {
    cplx t = c.b(m) * u[static_cast<size_t>(m)] + v(m) * zt * u[static_cast<size_t>(m + 1)];
    if (m > 0) t += v(m - 1) / zt * u[static_cast<size_t>(m - 1)];
    return t;
  };
  JostResult res;
  res.regime = RegimeTag::ShortRange;
  res.z = z;
  auto absV = [&](index_t m) { return cplx(std::abs(v(m)) + std::abs(c.b(m)), 0.0); };
  res.tailBound = c.free_from() ? 0.0 : tail_sum(absV, Nend).real();
  if (opt.strictTail && res.tailBound > 100.0 * opt.tol)
    throw TailTooLarge("perturbation tail " + std::to_string(res.tailBound) + " exceeds 100*tol; raise --nmax");
  cplx A = 0.0, B = 0.0;
  // u_{Nend+1}, u_{Nend+2} stay 1 (no perturbation beyond Nend).
  for (index_t n = Nend; n >= 0; --n) {
    // y_{n+1} minus its u_n part.
    index_t m = n + 1;
    cplx yp = c.b(m) * u[static_cast<size_t>(m)] + v(m) * zt * u[static_cast<size_t>(m + 1)];
    cplx rhs = 1.0 - cc * (A - zt2 * B + (1.0 - zt2) * yp);
    u[static_cast<size_t>(n)] = rhs / (2.0 * c.a(n));
    cplx ym = y(m);
    A += ym;
    B = zt2 * (B + ym);
  }
  std::vector<XComplex> f(static_cast<size_t>(Nout + 2));
  XComplex zp(1.0);
  for (index_t n = 0; n <= Nout; ++n) {
    f[static_cast<size_t>(n + 1)] = zp * XComplex(u[static_cast<size_t>(n)]);
    zp *= XComplex(zt);
  }
  XComplex f0 = f[1], f1 = f[2];
  f[0] = XComplex(z.value - c.b(0)) * f0 - XComplex(c.a(0)) * f1;
  res.f = SolutionSeq(std::move(f), SolutionLabel::Jost);
  res.u.assign(u.begin(), u.begin() + Nout + 1);
  res.N0 = 0;
  res.Nmax = Nout;
  res.omegaX = -res.f.x(-1);
  res.omega = res.omegaX.value();
  res.residual = res.f.residual(c, z.value);
  res.f.check(c, z.value, std::max(1e-9, 100.0 * opt.tol));
  return res;
}

JostPair jost_pair_noncarleman(const CoeffSequence& c, cplx z, const JostOptions& opt) {
  RegimeReport rep = opt.report ? *opt.report : classify(c, opt.rho0, opt.probeDepth);
  if (rep.regime != RegimeTag::NonCarleman) throw DomainError("coefficients are not classified NonCarleman");
  double binf = rep.betaInf.value_or(0.0);
  if (std::abs(binf) >= 1.0) throw DomainError("non-Carleman pair needs |beta_inf| < 1");
  index_t Nmax = std::max(finite_horizon(c, opt.nmax), rep.N0 + 2);
  JostPair pr;
  pr.betaInf = binf;
  for (int sign : {1, -1}) {
    SpectralArg za{z, Side::Interior};
    KernelSpec k = make_kernel(c, RegimeTag::NonCarleman, za, rep.N0, Nmax, rep, sign);
    // Ansatz a_n^{-1/2} Theta_n, z-independent.
    JostResult r = finish(c, za, k, opt, RegimeTag::NonCarleman,
                          sign > 0 ? SolutionLabel::JostPlus : SolutionLabel::JostMinus);
    (sign > 0 ? pr.plus : pr.minus) = std::move(r);
  }
  pr.wronskian = wronskian(pr.plus.f, pr.minus.f, c, -1);
  index_t D = std::min<index_t>(Nmax, 4096);
  auto kap = [&](index_t n) { return std::sqrt(c.a(n + 1) / c.a(n)); };
  double k1 = kap(D / 4), k2 = kap(D / 2), k4 = kap(D);
  // kappa_n = kappa_inf + c_1/n + c_2/n^2 + ...; two Richardson levels.
  double r1 = 2.0 * k2 - k1, r2 = 2.0 * k4 - k2;
  pr.kappaInf = (4.0 * r2 - r1) / 3.0;
  return pr;
}

SolutionSeq second_solution(const JostResult& fr, const CoeffSequence& c) {
  const SolutionSeq& f = fr.f;
  const index_t N0 = fr.N0, N = f.last();
  std::vector<XComplex> g(static_cast<size_t>(N + 2));
  XComplex F(0.0);
  for (index_t n = N0; n <= N; ++n) {
    XComplex fn = f.x(n);
    double big = std::max(f.x(n - 1).log_abs(), n < N ? f.x(n + 1).log_abs() : fn.log_abs());
    if (fn.is_zero() || fn.log_abs() < big + std::log(1e-14))
      throw ZeroCrossing("f_n vanishes at n=" + std::to_string(n) + "; perturb z");
    g[static_cast<size_t>(n + 1)] = fn * F;
    if (n < N) F += XComplex(1.0) / (XComplex(c.a(n)) * fn * f.x(n + 1));
  }
  const cplx z = fr.z.value;
  for (index_t n = N0; n >= 0; --n)
    g[static_cast<size_t>(n)] = (XComplex(z - c.b(n)) * g[static_cast<size_t>(n + 1)] -
                                 XComplex(c.a(n)) * g[static_cast<size_t>(n + 2)]) /
                                XComplex(c.a(n - 1));
  SolutionSeq out(std::move(g), SolutionLabel::Growing);
  cplx w = wronskian(f, out, c, N0);
  if (!(std::abs(w - 1.0) < 1e-9)) throw NoConvergence("{f, g} = " + std::to_string(std::abs(w)) + ", expected 1");
  return out;
}

}  // namespace js
