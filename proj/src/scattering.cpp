#include "js/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "js/errors.hpp"
#include "js/parallel.hpp"
#include "js/quadrature.hpp"

namespace js {

namespace {

constexpr double kPi = std::numbers::pi;

double v_at(const CoeffSequence& c, index_t n) { return n < 0 ? 0.0 : c.a(n) - 0.5; }

struct Tracked {
  double arg;
  cplx val;
};

// Continues arg D from (ta, a) to tb, halving the step while the phase increment exceeds 0.5.
template <class G>
Tracked advance(const G& g, double ta, Tracked a, double tb, cplx vb, int depth = 0) {
  double d = std::arg(vb / a.val);
  if (std::abs(d) > 0.5 && depth < 48) {
    double tm = 0.5 * (ta + tb);
    Tracked m = advance(g, ta, a, tm, g(tm), depth + 1);
    return advance(g, tm, m, tb, vb, depth + 1);
  }
  return {a.arg + d, vb};
}

}  // namespace

double IdentityValue::gap() const { return std::abs(lhs - rhs); }

Scattering::Scattering(const CoeffSequence& c, ScatterOptions opt) : c_(c), opt_(opt) {
  if (auto F = c.free_from()) {
    K_ = std::max<index_t>(*F, 0);
    for (index_t k = 0; k < K_; ++k) logA_ += std::log(2.0 * c.a(k));
    return;
  }
  K_ = opt.nmax;
  for (index_t n = 0; n < K_; ++n) {
    if (!(c.a(n) > 0.0)) throw PositivityError("a_" + std::to_string(n) + " <= 0");
  }
  auto absV = [&](index_t m) { return cplx(2.0 * std::abs(v_at(c, m)) + std::abs(c.b(m)), 0.0); };
  double tail = tail_sum(absV, K_).real();
  if (!(tail < opt.shortRangeTol))
    throw NotShortRange("perturbation tail beyond n=" + std::to_string(K_) + " is " + std::to_string(tail));
  for (index_t k = 0; k < K_; ++k) logA_ += std::log(2.0 * c.a(k));
  logA_ += tail_sum([&](index_t m) { return cplx(std::log(2.0 * c.a(m)), 0.0); }, K_).real();
}

// Backward recurrence from f_n = w^n, n >= K. Returns log(-Omega).
static cplx log_minus_omega(const CoeffSequence& c, index_t K, cplx w) {
  const cplx z = w == cplx(0.0) ? cplx(0.0) : 0.5 * (w + 1.0 / w);
  cplx fn1 = w, fn = 1.0;  // f_{K+1}, f_K divided by w^K
  double logScale = 0.0;
  for (index_t n = K; n >= 0; --n) {
    cplx fm = ((z - c.b(n)) * fn - c.a(n) * fn1) / c.a(n - 1);
    fn1 = fn;
    fn = fm;
    double m = std::abs(fn);
    if (m > 1e150 || (m < 1e-150 && m > 0.0)) {
      fn /= m;
      fn1 /= m;
      logScale += std::log(m);
    }
  }
  // fn = f_{-1} w^{-K} e^{-logScale}; Omega = -f_{-1}.
  return std::log(fn) + logScale + static_cast<double>(K) * std::log(w);
}

cplx Scattering::determinant_zeta(cplx w) const {
  if (std::abs(w) > 1.0 + 1e-14) throw DomainError("|zeta| must be <= 1");
  if (std::abs(w) < 1e-300) return 1.0;
  // D = A (-2 w Omega); -Omega carries the 1/(2w) of the free case.
  cplx lw = std::log(w);
  return std::exp(logA_ + std::log(2.0) + lw + log_minus_omega(c_, K_, w));
}

cplx Scattering::omega(const SpectralArg& z) const {
  cplx w = zeta(z);
  return -std::exp(log_minus_omega(c_, K_, w));
}

cplx Scattering::determinant(const SpectralArg& z) const { return determinant_zeta(zeta(z)); }

const std::vector<double>& Scattering::eigenvalues() const {
  if (eig_) return *eig_;
  double G = 1.0;
  for (index_t n = 0; n <= K_ + 1; ++n) G = std::max(G, std::abs(c_.b(n)) + c_.a(n) + c_.a(n - 1));
  if (!c_.free_from()) G = std::max(G, 1.0 + 1e-6);
  const double muG = G > 1.0 ? G - std::sqrt(G * G - 1.0) : 1.0;
  std::vector<double> mus;
  const double lo = 0.5 * muG, hi = 1.0 - 1e-7;
  for (int i = 0; i <= opt_.eigenGrid; ++i) mus.push_back(lo + (hi - lo) * i / opt_.eigenGrid);
  for (int i = 0; i <= 600; ++i) mus.push_back(1.0 - std::pow(10.0, -1.0 - 6.0 * i / 600.0));
  std::sort(mus.begin(), mus.end());
  mus.erase(std::unique(mus.begin(), mus.end()), mus.end());
  std::vector<double> out;
  for (int side : {-1, 1}) {
    std::vector<double> pts;
    for (double m : mus) pts.push_back(side * m);
    std::sort(pts.begin(), pts.end());
    auto sgn = [&](double m) { return determinant_zeta(m).real() > 0.0 ? 1 : -1; };
    std::vector<int> s = grid_map(pts, sgn);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      if (s[i] == s[i + 1]) continue;
      double a = pts[i], b = pts[i + 1];
      int sa = s[i];
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        double mid = 0.5 * (a + b);
        if (sgn(mid) == sa) a = mid;
        else b = mid;
      }
      double mu = 0.5 * (a + b);
      out.push_back(0.5 * (mu + 1.0 / mu));
    }
  }
  std::sort(out.begin(), out.end());
  eig_ = out;
  return *eig_;
}

const ThresholdInfo& Scattering::threshold(int sign) const {
  if (sign != 1 && sign != -1) throw DomainError("threshold sign must be +1 or -1");
  auto& slot = thr_[sign > 0 ? 1 : 0];
  if (slot) return *slot;
  if (!c_.free_from()) {
    auto mom = [&](index_t m) { return cplx(m * (2.0 * std::abs(v_at(c_, m)) + std::abs(c_.b(m))), 0.0); };
    double t = tail_sum(mom, K_).real();
    if (!(t < opt_.thresholdTol))
      throw MomentConditionFail("first-moment tail beyond n=" + std::to_string(K_) + " is " + std::to_string(t));
  }
  ThresholdInfo info;
  info.sign = sign;
  const double s = sign;
  info.omegaAt = -std::exp(log_minus_omega(c_, K_, cplx(s, 0.0)));
  // (VP)_n = v_{n-1} P_{n-1} + b_n P_n + v_n P_{n+1}, with P at z = +-1.
  SolutionSeq P = eval_P(c_, SpectralArg::interior(cplx(s, 0.0)), K_ + 2);
  auto VP = [&](index_t n) {
    double r = c_.b(n) * P[n].real() + v_at(c_, n) * P[n + 1].real();
    if (n > 0) r += v_at(c_, n - 1) * P[n - 1].real();
    return r;
  };
  double om = -0.5 * s, f0 = 1.0, pw = 1.0;
  for (index_t n = 0; n <= K_ + 1; ++n) {
    double vp = VP(n);
    om += pw * vp;
    f0 += 2.0 * pw * s * static_cast<double>(n) * vp;
    pw *= s;
  }
  info.omegaSeries = om;
  info.resonant = std::abs(info.omegaAt) < opt_.thresholdTol;
  if (info.resonant) {
    info.f0inv = f0;
    cplx prevR, prevS;
    for (int k = 2; k <= 6; ++k) {
      SpectralArg z = SpectralArg::interior(cplx(s * (1.0 + std::pow(10.0, -k)), 0.0));
      cplx sq = sqrt_z2_minus_1(z);
      cplx r = omega(z) / sq;
      if (k == 6) info.ratioLimit = (r * prevS - prevR * sq) / (prevS - sq);
      prevR = r;
      prevS = sq;
    }
  }
  slot = info;
  return *slot;
}

void Scattering::ensure_nodes() const {
  if (nodes_) return;
  QuadRule q = gauss_chebyshev1(opt_.quadNodes);
  std::vector<double> th = q.theta;
  std::vector<cplx> D = grid_map(th, [&](double t) { return determinant_zeta(std::polar(1.0, -t)); });
  // Anchor at theta = pi/2 by descending the imaginary axis from i infinity.
  auto gA = [&](double t) { return determinant_zeta(cplx(0.0, -t)); };
  Tracked cur{std::arg(gA(1e-4)), gA(1e-4)};
  double ta = 1e-4;
  for (int i = 1; i <= 64; ++i) {
    double tb = std::pow(1e-4, 1.0 - i / 64.0);
    cur = advance(gA, ta, cur, tb, gA(tb));
    ta = tb;
  }
  auto gC = [&](double t) { return determinant_zeta(std::polar(1.0, -t)); };
  const Tracked anchor = cur;
  std::vector<Node> nodes(th.size());
  const double halfPi = 0.5 * kPi;
  // Increasing theta from pi/2, then decreasing.
  for (int dir : {1, -1}) {
    Tracked t = anchor;
    double tprev = halfPi;
    std::vector<size_t> order;
    for (size_t i = 0; i < th.size(); ++i)
      if ((dir > 0) == (th[i] >= halfPi)) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return dir * th[a] < dir * th[b]; });
    for (size_t i : order) {
      t = advance(gC, tprev, t, th[i], D[i]);
      tprev = th[i];
      nodes[i].xi = t.arg / kPi;
    }
  }
  const double pp = threshold(1).resonant ? 1.0 : 0.0, pm = threshold(-1).resonant ? 1.0 : 0.0;
  for (size_t i = 0; i < th.size(); ++i) {
    nodes[i].theta = th[i];
    nodes[i].lambda = q.nodes[i];
    // ln(tau/tau0) = -2 ln|2 Omega| = -2 ln(|D|/A), plus the resonant singular parts removed.
    double lr = -2.0 * (std::log(std::abs(D[i])) - logA_);
    double g = lr + pp * std::log(2.0 * (1.0 - q.nodes[i])) + pm * std::log(2.0 * (1.0 + q.nodes[i]));
    if (!std::isfinite(g) || std::abs(g) > 1e6)
      throw SzegoDivergence("ln(tau/tau0) is " + std::to_string(lr) + " at lambda=" + std::to_string(q.nodes[i]));
    nodes[i].logRatio = g;
  }
  nodes_ = std::move(nodes);
}

double Scattering::xi_limit(int sign) const {
  ensure_nodes();
  // Continue from the node closest to the threshold.
  const auto& nd = *nodes_;
  const Node& n0 = sign > 0 ? nd.front() : nd.back();
  const double eps = 1e-7, tEnd = sign > 0 ? eps : kPi - eps;
  auto gC = [&](double t) { return determinant_zeta(std::polar(1.0, -t)); };
  cplx v0 = gC(n0.theta);
  Tracked t{n0.xi * kPi, v0};
  double ta = n0.theta;
  for (int i = 1; i <= 40; ++i) {
    // Geometric approach to the endpoint.
    double frac = std::pow(eps / std::abs(n0.theta - (sign > 0 ? 0.0 : kPi)), i / 40.0);
    double tb = sign > 0 ? n0.theta * frac : kPi - (kPi - n0.theta) * frac;
    if (i == 40) tb = tEnd;
    t = advance(gC, ta, t, tb, gC(tb));
    ta = tb;
  }
  return t.arg / kPi;
}

ScatterData Scattering::spectral_shift(const std::vector<double>& grid) const {
  ensure_nodes();
  ScatterData out;
  out.grid = grid;
  out.A = std::exp(logA_);
  out.eigenvalues = eigenvalues();
  for (double l : out.eigenvalues) out.mu.push_back(l > 0 ? l - std::sqrt(l * l - 1.0) : l + std::sqrt(l * l - 1.0));
  std::vector<double> th;
  for (double l : grid) {
    if (!(l > -1.0 && l < 1.0)) throw DomainError("spectral_shift grid must lie in (-1, 1)");
    th.push_back(std::acos(l));
  }
  out.D = grid_map(th, [&](double t) { return determinant_zeta(std::polar(1.0, -t)); });
  // Track from the nearest quadrature node, whose xi is already continued.
  const auto& nd = *nodes_;
  auto gC = [&](double t) { return determinant_zeta(std::polar(1.0, -t)); };
  out.xi.resize(grid.size());
  out.tau.resize(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    auto it = std::min_element(nd.begin(), nd.end(),
                               [&](const Node& a, const Node& b) { return std::abs(a.theta - th[i]) < std::abs(b.theta - th[i]); });
    Tracked t{it->xi * kPi, gC(it->theta)};
    t = advance(gC, it->theta, t, th[i], out.D[i]);
    out.xi[i] = t.arg / kPi;
    double om = std::abs(out.D[i]) / (2.0 * out.A);
    out.tau[i] = std::sin(th[i]) / (2.0 * kPi * om * om);
  }
  out.xiLeft = xi_limit(-1);
  out.xiRight = xi_limit(1);
  out.p = 0.5 * ((threshold(1).resonant ? 1.0 : 0.0) + (threshold(-1).resonant ? 1.0 : 0.0));
  double s = 0.0;
  for (const Node& n : nd) s += std::abs(n.xi) * std::sin(n.theta);
  out.intAbsXi = s * kPi / static_cast<double>(nd.size());
  std::vector<double> below, above;
  for (double l : out.eigenvalues) (l < 0 ? below : above).push_back(l);
  below.push_back(-1.0);
  for (size_t k = 0; k + 1 < below.size(); ++k) out.intAbsXi += (k + 1) * (below[k + 1] - below[k]);
  std::sort(above.rbegin(), above.rend());
  above.push_back(1.0);
  for (size_t k = 0; k + 1 < above.size(); ++k) out.intAbsXi += (k + 1) * (above[k] - above[k + 1]);
  for (index_t n = 0; n <= K_; ++n) out.vNorm1 += 2.0 * std::abs(v_at(c_, n)) + std::abs(c_.b(n));
  return out;
}

double Scattering::trace_difference(int n) const {
  if (n < 1) throw DomainError("trace order must be >= 1");
  const index_t M = K_ + 2 * n + 4;
  auto apply = [&](const std::vector<double>& u, index_t lo, bool free) {
    std::vector<double> r(u.size(), 0.0);
    for (size_t i = 0; i < u.size(); ++i) {
      index_t k = lo + static_cast<index_t>(i);
      double a = free ? 0.5 : c_.a(k), b = free ? 0.0 : c_.b(k);
      double am = k == 0 ? 0.0 : (free ? 0.5 : c_.a(k - 1));
      double s = b * u[i];
      if (i + 1 < u.size() && k + 1 < M) s += a * u[i + 1];
      if (i > 0) s += am * u[i - 1];
      r[i] = s;
    }
    return r;
  };
  double tr = 0.0;
  for (index_t k = 0; k < M; ++k) {
    index_t lo = std::max<index_t>(0, k - n), hi = std::min<index_t>(M - 1, k + n);
    double diag[2];
    for (int f = 0; f < 2; ++f) {
      std::vector<double> u(static_cast<size_t>(hi - lo + 1), 0.0);
      u[static_cast<size_t>(k - lo)] = 1.0;
      for (int p = 0; p < n; ++p) u = apply(u, lo, f == 1);
      diag[f] = u[static_cast<size_t>(k - lo)];
    }
    tr += diag[0] - diag[1];
  }
  return tr;
}

IdentityValue Scattering::trace_identity(int n) const {
  ensure_nodes();
  IdentityValue v;
  v.lhs = trace_difference(n);
  // The part linear in theta carries the endpoint values and is integrated exactly;
  // the remainder vanishes at both ends, so the midpoint rule keeps its full order.
  const double xR = xi_limit(1), xL = xi_limit(-1), sgn = n % 2 ? -1.0 : 1.0;
  double In = 0.0;
  if (n % 2 == 0) {
    In = kPi;
    for (int k = n; k > 0; k -= 2) In *= (k - 1.0) / k;
  }
  v.rhs = xR * (1.0 - sgn) + (xL - xR) / kPi * (-kPi * sgn + In);
  double s = 0.0;
  for (const Node& nd : *nodes_) {
    double lin = xR + (xL - xR) * nd.theta / kPi;
    s += (nd.xi - lin) * std::pow(nd.lambda, n - 1) * std::sin(nd.theta);
  }
  v.rhs += n * s * kPi / static_cast<double>(nodes_->size());
  std::vector<double> below, above;
  for (double l : eigenvalues()) (l < 0 ? below : above).push_back(l);
  below.push_back(-1.0);
  for (size_t k = 0; k + 1 < below.size(); ++k)
    v.rhs += (k + 1) * (std::pow(below[k], n) - std::pow(below[k + 1], n));
  std::sort(above.rbegin(), above.rend());
  above.push_back(1.0);
  for (size_t k = 0; k + 1 < above.size(); ++k)
    v.rhs += (k + 1) * (std::pow(above[k], n) - std::pow(above[k + 1], n));
  return v;
}

double Scattering::log_weight_moment(int n) const {
  ensure_nodes();
  double s = 0.0;
  for (const Node& nd : *nodes_) s += nd.logRatio * std::cos(n * nd.theta);
  s /= static_cast<double>(nodes_->size());
  if (n == 0) return s;
  const double pp = threshold(1).resonant ? 1.0 : 0.0, pm = threshold(-1).resonant ? 1.0 : 0.0;
  return s + (pp + pm * (n % 2 ? -1.0 : 1.0)) / n;
}

cplx Scattering::poisson_log_weight(cplx w) const {
  ensure_nodes();
  cplx s = 0.0;
  for (const Node& nd : *nodes_) s += nd.logRatio * (1.0 - w * w) / (1.0 - 2.0 * w * nd.lambda + w * w);
  s /= 2.0 * static_cast<double>(nodes_->size());
  const double pp = threshold(1).resonant ? 1.0 : 0.0, pm = threshold(-1).resonant ? 1.0 : 0.0;
  return s - pp * std::log(1.0 - w) - pm * std::log(1.0 + w);
}

IdentityValue Scattering::case_sum_rule(int n) const {
  if (n < 0 || n > 4) throw DomainError("Case sum rule order must be in 0..4");
  IdentityValue v;
  std::vector<double> mu;
  for (double l : eigenvalues()) mu.push_back(l > 0 ? l - std::sqrt(l * l - 1.0) : l + std::sqrt(l * l - 1.0));
  if (n == 0) {
    v.lhs = logA_;
    for (double m : mu) v.lhs += std::log(std::abs(m));
    v.rhs = 0.5 * log_weight_moment(0);
    return v;
  }
  std::vector<double> t = chebyshev_t_coeffs(n);
  for (int k = 1; k <= n; ++k)
    if (t[static_cast<size_t>(k)] != 0.0) v.lhs += t[static_cast<size_t>(k)] * trace_difference(k);
  v.rhs = 0.5 * n * log_weight_moment(n);
  for (double m : mu) v.rhs -= 0.5 * (std::pow(m, n) - std::pow(m, -n));
  return v;
}

SzegoResult Scattering::szego_factorization(const std::vector<cplx>& zetas) const {
  ensure_nodes();
  SzegoResult r;
  r.zeta = zetas;
  std::vector<double> mu;
  for (double l : eigenvalues()) mu.push_back(l > 0 ? l - std::sqrt(l * l - 1.0) : l + std::sqrt(l * l - 1.0));
  const double A = std::exp(logA_);
  for (cplx w : zetas) {
    if (std::abs(w) >= 0.9) throw DomainError("szego_factorization needs |zeta| < 0.9");
    cplx Dl = determinant_zeta(w);
    cplx B = 1.0;
    for (double m : mu) B *= std::abs(m) / m * (m - w) / (1.0 - m * w);
    cplx S = (1.0 - w * w) / std::sqrt(2.0 * kPi) * std::exp(poisson_log_weight(w));
    r.Delta.push_back(Dl);
    r.B.push_back(B);
    r.S.push_back(S);
    r.residual = std::max(r.residual, std::abs(Dl - A * B * (1.0 - w * w) / (std::sqrt(2.0 * kPi) * S)));
  }
  return r;
}

cplx perturbation_determinant(const CoeffSequence& c, const SpectralArg& z, const ScatterOptions& opt) {
  return Scattering(c, opt).determinant(z);
}

ScatterData spectral_shift(const CoeffSequence& c, const std::vector<double>& grid, const ScatterOptions& opt) {
  return Scattering(c, opt).spectral_shift(grid);
}

ThresholdInfo threshold_analysis(const CoeffSequence& c, int sign, const ScatterOptions& opt) {
  return Scattering(c, opt).threshold(sign);
}

IdentityValue trace_identity(const CoeffSequence& c, int n, const ScatterOptions& opt) {
  return Scattering(c, opt).trace_identity(n);
}

IdentityValue case_sum_rule(const CoeffSequence& c, int n, const ScatterOptions& opt) {
  return Scattering(c, opt).case_sum_rule(n);
}

SzegoResult szego_factorization(const CoeffSequence& c, const std::vector<cplx>& zetas, const ScatterOptions& opt) {
  return Scattering(c, opt).szego_factorization(zetas);
}

}  // namespace js
