#pragma once
#include <complex>
#include <cstdint>

namespace js {

using cplx = std::complex<double>;

/// Complex number with a separate binary exponent: value = m * 2^e.
/// Used for sequences that grow or decay geometrically (P_n off the
/// spectrum, Ansatz products).
struct XComplex {
  cplx m{0.0, 0.0};
  std::int64_t e = 0;

  XComplex() = default;
  XComplex(cplx v) : m(v), e(0) { normalize(); }  // NOLINT
  XComplex(double v) : XComplex(cplx(v, 0.0)) {}   // NOLINT
  XComplex(cplx mant, std::int64_t ex) : m(mant), e(ex) { normalize(); }

  void normalize();
  bool is_zero() const { return m == cplx(0.0, 0.0); }
  /// Plain complex value; may overflow to inf or underflow to 0.
  cplx value() const;
  /// Natural log of the modulus; -inf for zero.
  double log_abs() const;
  /// True when the plain value is representable without over/underflow.
  bool representable() const { return e > -1000 && e < 1000; }

  XComplex operator-() const { return XComplex(-m, e); }
  friend XComplex operator*(const XComplex& a, const XComplex& b);
  friend XComplex operator/(const XComplex& a, const XComplex& b);
  friend XComplex operator+(const XComplex& a, const XComplex& b);
  friend XComplex operator-(const XComplex& a, const XComplex& b);
  XComplex& operator*=(const XComplex& b) { return *this = *this * b; }
  XComplex& operator+=(const XComplex& b) { return *this = *this + b; }
};

XComplex conj(const XComplex& a);
double abs_ratio(const XComplex& a, const XComplex& b);

}  // namespace js
