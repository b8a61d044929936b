#pragma once
#include <vector>

#include "js/jost.hpp"

namespace js {

struct WeightSample {
  double lambda = 0.0;
  double tau = 0.0;
  /// |Omega(lambda + i0)|.
  double kappa = 0.0;
  /// -Omega(lambda + i0) = kappa e^{i eta}; unwrapped along grids.
  double eta = 0.0;
  RegimeTag regime = RegimeTag::ShortRange;
  cplx omega;
  /// Same weight with the prefactor taken from the computed {f(l+i0), f(l-i0)}.
  double tauWronskian = 0.0;
};

/// Essential-spectrum prefactor c with {f(l+i0), f(l-i0)} = 2ic:
/// sqrt(1 - beta_inf^2) for increasing coefficients, a_inf sin(theta_inf) when stabilizing.
double weight_prefactor(const RegimeReport& rep, double lambda);

/// tau = c / (pi |Omega(lambda + i0)|^2).
WeightSample spectral_weight(const CoeffSequence& c, double lambda, const JostOptions& opt = {});

/// Removes 2 pi jumps of eta, anchored at the first sample.
void unwrap_phase(std::vector<WeightSample>& samples);

/// <R(z) e_n, e_m> = P_{min} f_{max} / Omega.
cplx resolvent_element(const CoeffSequence& c, const SpectralArg& z, index_t n, index_t m,
                       const JostOptions& opt = {});

/// Real-axis prediction Im(conj(Omega) A_n) / c with A_n the Ansatz at lambda + i0.
/// Entry i holds the value at n = first + i.
struct RealPrediction {
  index_t first = 0;
  std::vector<double> values;
  double kappa = 0.0, eta = 0.0, prefactor = 0.0;
  double at(index_t n) const { return values.at(static_cast<size_t>(n - first)); }
};
RealPrediction predict_Pn_real_seq(const CoeffSequence& c, double lambda, index_t nMax, const JostOptions& opt = {});
double predict_Pn_real(const CoeffSequence& c, double lambda, index_t n, const JostOptions& opt = {});

/// Leading term of P_n(z) off the essential spectrum: -Omega h_n / W with h_n the growing
/// Ansatz and W = {A, h}; at zeros of Omega the decaying branch {P, g} A_n.
cplx predict_Pn_complex(const CoeffSequence& c, const SpectralArg& z, index_t n, const JostOptions& opt = {});

struct Eigenvalue {
  double lambda = 0.0;
  /// Distance to the nearest eigenvalue of a large truncated matrix.
  double oracleGap = 0.0;
  double mass = 0.0;
};

/// Zeros of Omega on [lo, hi] by sign changes on a grid and bisection to 1e-10.
std::vector<Eigenvalue> discrete_spectrum(const CoeffSequence& c, double lo, double hi, int grid,
                                          const JostOptions& opt = {});

/// Residue of -<R(z) e_0, e_0> at an eigenvalue, by Richardson in the offset.
double point_mass(const CoeffSequence& c, double lambda, const JostOptions& opt = {});

}  // namespace js
