#pragma once
#include <optional>
#include <vector>

#include "js/jost.hpp"

namespace js {

struct ScatterOptions {
  /// Horizon for coefficients without an exact free tail.
  index_t nmax = 4000;
  /// Bound on the perturbation tail beyond the horizon.
  double shortRangeTol = 1e-10;
  /// |Omega(+-1)| below this counts as a threshold resonance.
  double thresholdTol = 1e-8;
  int quadNodes = 2048;
  /// Sign-change grid for eigenvalues in zeta on each side of 0.
  int eigenGrid = 4000;
};

struct ThresholdInfo {
  int sign = 1;
  cplx omegaAt;
  /// Omega(+-1) from the first-moment series; equals omegaAt up to rounding.
  cplx omegaSeries;
  bool resonant = false;
  std::optional<double> f0inv;
  /// Extrapolated limit of Omega(z)/sqrt(z^2-1) as z -> +-1 (resonant case only).
  std::optional<cplx> ratioLimit;
};

struct ScatterData {
  std::vector<double> grid;
  std::vector<double> xi;
  std::vector<cplx> D;
  std::vector<double> tau;
  double A = 1.0;
  std::vector<double> eigenvalues;
  std::vector<double> mu;
  /// One-sided limits xi(-1+0), xi(1-0).
  double xiLeft = 0.0, xiRight = 0.0;
  /// Resonance count p in {0, 1/2, 1}.
  double p = 0.0;
  double intAbsXi = 0.0;
  /// 2 sum |a_n - 1/2| + sum |b_n|.
  double vNorm1 = 0.0;
  double jump() const { return xiRight - xiLeft; }
};

struct IdentityValue {
  double lhs = 0.0, rhs = 0.0;
  double gap() const;
};

struct SzegoResult {
  std::vector<cplx> zeta, Delta, B, S;
  double residual = 0.0;
};

/// Short-range scattering quantities for one coefficient sequence. Eigenvalues,
/// threshold data and weight samples are computed once and reused.
class Scattering {
 public:
  explicit Scattering(const CoeffSequence& c, ScatterOptions opt = {});

  const CoeffSequence& coeffs() const { return c_; }
  index_t horizon() const { return K_; }
  double logA() const { return logA_; }

  cplx omega(const SpectralArg& z) const;
  /// D(z) = A (-2 zeta Omega), normalized to 1 at infinity.
  cplx determinant(const SpectralArg& z) const;
  /// D at z = (w + 1/w)/2, |w| < 1.
  cplx determinant_zeta(cplx w) const;

  const std::vector<double>& eigenvalues() const;
  const ThresholdInfo& threshold(int sign) const;

  /// xi(lambda) = arg D(lambda + i0)/pi, continued from D(i inf) = 1 down the imaginary axis.
  ScatterData spectral_shift(const std::vector<double>& grid) const;
  /// Tr(J^n - J0^n) against n int xi lambda^{n-1} plus the eigenvalue steps.
  IdentityValue trace_identity(int n) const;
  /// Order 0: ln A + sum ln|mu_k| against the Poisson integral at 0; order n >= 1 in the Chebyshev form.
  IdentityValue case_sum_rule(int n) const;
  SzegoResult szego_factorization(const std::vector<cplx>& zetas) const;

  /// Exact Tr(J^n - J0^n) on a window past the perturbation.
  double trace_difference(int n) const;
  /// (1/2pi) int ln(tau/tau0) (1 - w^2)/(1 - 2 w cos t + w^2) dt over (0, pi), both sides of the cut.
  cplx poisson_log_weight(cplx w) const;
  /// (1/pi) int_0^pi ln(tau/tau0)(cos t) cos(n t) dt.
  double log_weight_moment(int n) const;

 private:
  struct Node {
    double theta, lambda, logRatio, xi;
  };
  void ensure_nodes() const;
  double xi_limit(int sign) const;

  CoeffSequence c_;
  ScatterOptions opt_;
  index_t K_ = 0;
  double logA_ = 0.0;
  mutable std::optional<std::vector<double>> eig_;
  mutable std::optional<ThresholdInfo> thr_[2];
  mutable std::optional<std::vector<Node>> nodes_;
};

cplx perturbation_determinant(const CoeffSequence& c, const SpectralArg& z, const ScatterOptions& opt = {});
ScatterData spectral_shift(const CoeffSequence& c, const std::vector<double>& grid, const ScatterOptions& opt = {});
ThresholdInfo threshold_analysis(const CoeffSequence& c, int sign, const ScatterOptions& opt = {});
IdentityValue trace_identity(const CoeffSequence& c, int n, const ScatterOptions& opt = {});
IdentityValue case_sum_rule(const CoeffSequence& c, int n, const ScatterOptions& opt = {});
SzegoResult szego_factorization(const CoeffSequence& c, const std::vector<cplx>& zetas,
                                const ScatterOptions& opt = {});

}  // namespace js
