#pragma once
#include <vector>

namespace js {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// theta_k with nodes = cos(theta_k).
  std::vector<double> theta;
};

/// Gauss-Chebyshev rule of the first kind: weight (1 - x^2)^{-1/2} on (-1, 1).
QuadRule gauss_chebyshev1(int n = 2048);

/// Gauss-Chebyshev rule of the second kind: weight (1 - x^2)^{1/2} on (-1, 1).
QuadRule gauss_chebyshev2(int n = 2048);

/// Monomial coefficients of T_n, lowest degree first.
std::vector<double> chebyshev_t_coeffs(int n);

}  // namespace js
