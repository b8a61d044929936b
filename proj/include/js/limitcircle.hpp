#pragma once
#include <vector>

#include "js/jost.hpp"

namespace js {

/// Boundary coefficients of P(z) and Q(z) in the basis f+, f- of Jost solutions:
/// P = sigma+ f+ + sigma- f-, Q = tau+ f+ + tau- f-.
struct ExtensionData {
  cplx z;
  cplx sigmaPlus, sigmaMinus, tauPlus, tauMinus;
  double kappaInf = 1.0;
  double betaInf = 0.0;
  /// Computed {f+, f-} at n = -1.
  cplx wronskian;
  /// 2i kappa^{-1} sqrt(1 - beta^2), the limit value of {f+, f-}.
  cplx wronskianLimit() const;
  /// |W (sigma+ tau- - sigma- tau+) - 1| with W = wronskianLimit().
  double identityResidual() const;
};

ExtensionData boundary_coefficients(const CoeffSequence& c, cplx z, const JostOptions& opt = {});

/// (R(z) e_j)_n: Q_n P_j for n >= j, P_n Q_j otherwise.
cplx quasiresolvent_element(const CoeffSequence& c, cplx z, index_t n, index_t j);
/// Entries 0..N of R(z) e_j.
std::vector<cplx> quasiresolvent_column(const CoeffSequence& c, cplx z, index_t j, index_t N);

/// gamma_omega = -(tau+ - omega tau-)/(sigma+ - omega sigma-); throws EigenvalueHit near a zero.
cplx nevanlinna_gamma(const ExtensionData& e, cplx omega);

/// <R_omega(z) e_m, e_n> = gamma_omega P_n P_m + (R(z) e_m)_n.
cplx extension_resolvent(const CoeffSequence& c, cplx omega, cplx z, index_t n, index_t m,
                         const JostOptions& opt = {});

struct ExtensionRoot {
  double lambda = 0.0;
  /// |sigma+ - omega sigma-| / (|sigma+| + |sigma-|) at the root.
  double residual = 0.0;
};

/// Real zeros of sigma+ - omega sigma- on [lo, hi]: sign changes of Im(omega^{-1/2} sigma+) and bisection.
std::vector<ExtensionRoot> extension_spectrum(const CoeffSequence& c, cplx omega, double lo = -20.0,
                                              double hi = 20.0, int grid = 4000, const JostOptions& opt = {});

/// Eigenvalues in [lo, hi] of an N x N truncation whose last diagonal entry encodes
/// u_N / u_{N-1} for u = omega a^{-1/2} Theta+ + a^{-1/2} Theta-, with the first-order
/// z-dependent phase correction. Iterated to self-consistency in z.
std::vector<double> truncated_extension_eigenvalues(const CoeffSequence& c, cplx omega, double lo, double hi,
                                                    index_t N = 3000, const JostOptions& opt = {});

struct BoundaryValues {
  cplx sPlus, sMinus;
};

/// s+-(u) for u = R_omega(z) e_j, from the z = 0 representation through Gamma(0; u) and
/// <J u, P(0)>. Sums run to N and are closed with the Green identity.
BoundaryValues boundary_map_resolvent(const CoeffSequence& c, cplx omega, cplx z, index_t j,
                                      const ExtensionData& atZ, const ExtensionData& at0, index_t N = 2000);

/// 2i kappa^{-1} sqrt(1 - beta^2) (s+(u) conj s+(v) - s-(u) conj s-(v)).
cplx boundary_pairing(const ExtensionData& e, const BoundaryValues& u, const BoundaryValues& v);

struct NormIdentity {
  double lhs = 0.0;  ///< |sigma+|^2 - |sigma-|^2
  std::vector<index_t> N;
  /// -Im z kappa (1 - beta^2)^{-1/2} sum_{n <= N} |P_n|^2
  std::vector<double> rhs;
  /// Polynomial extrapolation in N^{-1/2} through every ladder point.
  double extrapolated = 0.0;
};
NormIdentity norm_identity(const CoeffSequence& c, cplx z, const std::vector<index_t>& ladder,
                           const JostOptions& opt = {});

}  // namespace js
