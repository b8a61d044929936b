#pragma once
#include <functional>
#include <optional>
#include <vector>

#include "js/recurrence.hpp"

namespace js {

struct JostOptions {
  double tol = 1e-12;
  index_t nmax = 4000;
  int maxIter = 60;
  /// Raise TailTooLarge when the estimated remainder tail exceeds 100 tol.
  bool strictTail = true;
  /// Close the truncated sums with the quasi-static tail sum beyond nmax.
  bool tailClosure = true;
  enum class Method { Neumann, Sweep } method = Method::Neumann;
  double rho0 = 16.0;
  index_t probeDepth = 4096;
  /// Reused across a grid to avoid reclassifying.
  std::optional<RegimeReport> report;
};

struct JostResult {
  std::vector<cplx> u;  ///< u_n for n in [N0, Nmax]
  SolutionSeq f;
  cplx omega;
  XComplex omegaX;
  index_t N0 = 0;
  index_t Nmax = 0;
  int iterations = 0;
  double tailBound = 0.0;
  double residual = 0.0;
  RegimeTag regime = RegimeTag::ShortRange;
  SpectralArg z;
  /// Last Neumann increment norms, for the factorial-decay check.
  std::vector<double> iterateNorms;
  cplx u_at(index_t n) const { return u.at(static_cast<size_t>(n - N0)); }
};

/// Local coefficients of R_n D u_n - L_n D u_{n-1} = -r_n u_n, D u_n = u_{n+1} - u_n.
struct LocalTerms {
  cplx R, L, r, zeta;
};

/// Per-z kernel data on [N0, Nmax + 1]. Immutable once built.
struct KernelSpec {
  RegimeTag regime = RegimeTag::ShortRange;
  SpectralArg z;
  index_t N0 = 0, Nmax = 0;
  /// Non-Carleman branch: +1 or -1; 0 otherwise.
  int sign = 0;
  std::vector<cplx> zeta, R, L, r;
  std::vector<double> kappa;  ///< sqrt(a_{n+1}/a_n), increasing regimes
  std::vector<XComplex> ansatz;
  size_t idx(index_t n) const { return static_cast<size_t>(n - N0); }
};

LocalTerms local_terms(const CoeffSequence& c, RegimeTag regime, const SpectralArg& z, index_t n, int sign = 0);

KernelSpec make_kernel(const CoeffSequence& c, RegimeTag regime, const SpectralArg& z, index_t N0, index_t Nmax,
                       const RegimeReport& rep, int sign = 0);

/// Ansatz A_n for n >= N0 (a_n^{-1/2} products for increasing regimes, plain products when stabilizing).
XComplex ansatz(const CoeffSequence& c, const RegimeReport& rep, const SpectralArg& z, index_t N0, index_t n);

cplx remainder(const CoeffSequence& c, const SpectralArg& z, index_t n, RegimeTag regime);

/// The kernel G_{n,m}, m > n, in the form printed for the regime.
cplx volterra_kernel(const KernelSpec& spec, index_t n, index_t m);

/// Sum of F(m) over m > N using direct terms and a log-spaced integral with power-law tail.
cplx tail_sum(const std::function<cplx(index_t)>& F, index_t N);

JostResult solve_jost(const CoeffSequence& c, const SpectralArg& z, const JostOptions& opt = {});
JostResult solve_jost_shortrange(const CoeffSequence& c, const SpectralArg& z, const JostOptions& opt = {});

struct JostPair {
  JostResult plus, minus;
  cplx wronskian;  ///< {f+, f-}
  double kappaInf = 1.0;
  double betaInf = 0.0;
};
JostPair jost_pair_noncarleman(const CoeffSequence& c, cplx z, const JostOptions& opt = {});

/// g_n = f_n sum_{m=N0}^{n-1} (a_m f_m f_{m+1})^{-1}, extended to n = -1.
SolutionSeq second_solution(const JostResult& f, const CoeffSequence& c);

}  // namespace js
