#include "js/xcomplex.hpp"

#include <cmath>
#include <limits>

namespace js {

void XComplex::normalize() {
  double s = std::max(std::abs(m.real()), std::abs(m.imag()));
  if (s == 0.0 || !std::isfinite(s)) {
    if (s == 0.0) e = 0;
    return;
  }
  int k = 0;
  std::frexp(s, &k);
  m = cplx(std::ldexp(m.real(), -k), std::ldexp(m.imag(), -k));
  e += k;
}

cplx XComplex::value() const {
  if (e > 2000) return {m.real() * std::numeric_limits<double>::infinity(),
                        m.imag() * std::numeric_limits<double>::infinity()};
  if (e < -2000) return {0.0, 0.0};
  return {std::ldexp(m.real(), static_cast<int>(e)), std::ldexp(m.imag(), static_cast<int>(e))};
}

double XComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

XComplex operator*(const XComplex& a, const XComplex& b) { return XComplex(a.m * b.m, a.e + b.e); }

XComplex operator/(const XComplex& a, const XComplex& b) { return XComplex(a.m / b.m, a.e - b.e); }

XComplex operator+(const XComplex& a, const XComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::int64_t d = a.e - b.e;
  if (d > 60) return a;
  if (d < -60) return b;
  if (d >= 0) {
    cplx bm(std::ldexp(b.m.real(), static_cast<int>(-d)), std::ldexp(b.m.imag(), static_cast<int>(-d)));
    return XComplex(a.m + bm, a.e);
  }
  cplx am(std::ldexp(a.m.real(), static_cast<int>(d)), std::ldexp(a.m.imag(), static_cast<int>(d)));
  return XComplex(am + b.m, b.e);
}

XComplex operator-(const XComplex& a, const XComplex& b) { return a + (-b); }

XComplex conj(const XComplex& a) { return XComplex(std::conj(a.m), a.e); }

double abs_ratio(const XComplex& a, const XComplex& b) {
  if (a.is_zero()) return 0.0;
  return std::exp(a.log_abs() - b.log_abs());
}

}  // namespace js
