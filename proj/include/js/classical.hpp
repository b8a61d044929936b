#pragma once
#include <string>
#include <utility>

#include "js/coeffs.hpp"
#include "js/uniformization.hpp"

namespace js {

struct ClassicalFamily {
  enum class Tag { Hermite, Laguerre, JacobiAB, ChebyshevFirst, ChebyshevSecond, Pollaczek };
  Tag tag = Tag::Hermite;
  double p1 = 0.0;  // Laguerre p, Jacobi alpha, Pollaczek alpha
  double p2 = 0.0;  // Jacobi beta, Pollaczek beta

  static ClassicalFamily hermite() { return {Tag::Hermite, 0, 0}; }
  static ClassicalFamily laguerre(double p);
  static ClassicalFamily jacobi(double alpha, double beta);
  static ClassicalFamily chebyshev_first() { return {Tag::ChebyshevFirst, -0.5, -0.5}; }
  static ClassicalFamily chebyshev_second() { return {Tag::ChebyshevSecond, 0.5, 0.5}; }
  static ClassicalFamily pollaczek(double alpha, double beta);

  std::string name() const;
  /// Support of the orthogonality measure.
  std::pair<double, double> support() const;
};

/// (a_n, b_n) in closed form.
std::pair<double, double> family_coeffs(const ClassicalFamily& f, index_t n);
CoeffSequence family_sequence(const ClassicalFamily& f);

/// Normalized density of the orthogonality measure.
double classical_weight(const ClassicalFamily& f, double lambda);

/// Normalization constant k of the Jacobi weight k (1-x)^a (1+x)^b.
double jacobi_norm(double alpha, double beta);

/// Leading term of the large-n asymptotics of the orthonormal polynomial.
/// Hermite: Plancherel-Rotach; Jacobi family: interior, exterior and edge
/// forms; Laguerre: oscillatory form on (0, inf), exponential form elsewhere.
cplx reference_asymptotic(const ClassicalFamily& f, const SpectralArg& z, index_t n);

}  // namespace js
