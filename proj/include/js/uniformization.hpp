#pragma once
#include <complex>
#include <vector>

#include "js/coeffs.hpp"
#include "js/xcomplex.hpp"

namespace js {

enum class Side { Interior, PlusI0, MinusI0 };

/// Spectral parameter with a boundary tag for evaluations on the cut.
struct SpectralArg {
  cplx value;
  Side side = Side::Interior;

  static SpectralArg interior(cplx z) { return {z, Side::Interior}; }
  static SpectralArg plus(double lambda) { return {cplx(lambda, 0.0), Side::PlusI0}; }
  static SpectralArg minus(double lambda) { return {cplx(lambda, 0.0), Side::MinusI0}; }
  SpectralArg conj() const;
};

inline constexpr double kBranchTol = 1e-12;

/// sqrt(z^2 - 1), positive for z > 1, analytic off [-1, 1].
cplx sqrt_z2_minus_1(const SpectralArg& z);
/// zeta(z) = z - sqrt(z^2 - 1), mapping C \ [-1, 1] onto the unit disc.
cplx zeta(const SpectralArg& z);
/// One-sided limit of zeta at the thresholds: +1 -> 1, -1 -> -1.
double zeta_threshold(int sign);

/// z_n: alpha_n z + beta_n for increasing regimes, (z - b_n)/(2 a_n) otherwise.
SpectralArg scaled_point(const CoeffSequence& c, const SpectralArg& z, index_t n, RegimeTag regime);

double alpha_n(const CoeffSequence& c, index_t n);
double beta_n(const CoeffSequence& c, index_t n);

/// Entry i of every vector holds the value at n = N0 + i, n <= nMax.
struct PhaseSums {
  index_t N0 = 0;
  /// Increasing regimes: sum of arccos(beta_m), m in [N0+1, n).
  /// Stabilizing regimes: sum of arccos(lambda_m), m in [N0, n).
  std::vector<double> phi;
  /// Sum of alpha_m / sqrt(|1 - beta_m^2|), m in [N0+1, n). Empty when stabilizing.
  std::vector<double> psi;
  /// Sum of arccosh|beta_m|, m in [N0, n). Filled only when every |beta_m| > 1.
  std::vector<double> varphi;
  /// Sum of arccos(lambda_m), m in [N0, n), lambda_m the scaled point of lambda.
  std::vector<double> phiLambda;
  double phi_at(index_t n) const { return phi.at(static_cast<size_t>(n - N0)); }
  double psi_at(index_t n) const { return psi.at(static_cast<size_t>(n - N0)); }
  double phi_lambda_at(index_t n) const { return phiLambda.at(static_cast<size_t>(n - N0)); }
};

PhaseSums phase_sums(const CoeffSequence& c, index_t N0, index_t nMax, double lambda,
                     RegimeTag regime = RegimeTag::IncreasingSmallDiag);

/// Theta_n^{(+-)} exp(L_n^{(+-)}(z; K)) for n in [N0, nMax]; sign = +1 or -1.
/// For |beta_inf| > 1 the sign is ignored.
std::vector<XComplex> theta_products(const CoeffSequence& c, index_t N0, index_t nMax, int sign, cplx z, int K,
                                     double betaInf);

}  // namespace js
