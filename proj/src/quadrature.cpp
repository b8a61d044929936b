#include "js/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "js/errors.hpp"

namespace js {

QuadRule gauss_chebyshev1(int n) {
  if (n < 1) throw DomainError("quadrature needs n >= 1");
  QuadRule q;
  for (int k = 1; k <= n; ++k) {
    double t = (2.0 * k - 1.0) * std::numbers::pi / (2.0 * n);
    q.theta.push_back(t);
    q.nodes.push_back(std::cos(t));
    q.weights.push_back(std::numbers::pi / n);
  }
  return q;
}

QuadRule gauss_chebyshev2(int n) {
  if (n < 1) throw DomainError("quadrature needs n >= 1");
  QuadRule q;
  for (int k = 1; k <= n; ++k) {
    double t = k * std::numbers::pi / (n + 1.0);
    double s = std::sin(t);
    q.theta.push_back(t);
    q.nodes.push_back(std::cos(t));
    q.weights.push_back(std::numbers::pi / (n + 1.0) * s * s);
  }
  return q;
}

std::vector<double> chebyshev_t_coeffs(int n) {
  if (n < 0) throw DomainError("Chebyshev degree must be >= 0");
  std::vector<double> t0{1.0}, t1{0.0, 1.0};
  if (n == 0) return t0;
  for (int k = 1; k < n; ++k) {
    std::vector<double> t2(static_cast<size_t>(k) + 2, 0.0);
    for (size_t i = 0; i < t1.size(); ++i) t2[i + 1] += 2.0 * t1[i];
    for (size_t i = 0; i < t0.size(); ++i) t2[i] -= t0[i];
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

}  // namespace js
