#include "js/classical.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "js/errors.hpp"

namespace js {

using std::numbers::pi;

ClassicalFamily ClassicalFamily::laguerre(double p) {
  if (!(p > -1.0)) throw DomainError("Laguerre needs p > -1");
  return {Tag::Laguerre, p, 0.0};
}

ClassicalFamily ClassicalFamily::jacobi(double alpha, double beta) {
  if (!(alpha > -1.0 && beta > -1.0)) throw DomainError("Jacobi needs alpha, beta > -1");
  return {Tag::JacobiAB, alpha, beta};
}

ClassicalFamily ClassicalFamily::pollaczek(double alpha, double beta) {
  if (!(alpha > std::abs(beta))) throw DomainError("Pollaczek needs alpha > |beta|");
  return {Tag::Pollaczek, alpha, beta};
}

std::string ClassicalFamily::name() const {
  std::ostringstream os;
  switch (tag) {
    case Tag::Hermite: return "hermite";
    case Tag::Laguerre: os << "laguerre:" << p1; break;
    case Tag::JacobiAB: os << "jacobi:" << p1 << ":" << p2; break;
    case Tag::ChebyshevFirst: return "cheb1";
    case Tag::ChebyshevSecond: return "cheb2";
    case Tag::Pollaczek: os << "pollaczek:" << p1 << ":" << p2; break;
  }
  return os.str();
}

std::pair<double, double> ClassicalFamily::support() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (tag == Tag::Hermite) return {-inf, inf};
  if (tag == Tag::Laguerre) return {0.0, inf};
  return {-1.0, 1.0};
}

namespace {

std::pair<double, double> jacobi_coeffs(double al, double be, index_t nn) {
  double n = static_cast<double>(nn);
  double s = al + be;
  if (nn == 0) {
    double b0 = (be - al) / (s + 2.0);
    double a0 = 2.0 / (s + 2.0) * std::sqrt((al + 1.0) * (be + 1.0) / (s + 3.0));
    return {a0, b0};
  }
  double t = 2.0 * n + s;
  double b = (be * be - al * al) / (t * (t + 2.0));
  double a = 2.0 / (t + 2.0) *
             std::sqrt((n + 1.0) * (n + al + 1.0) * (n + be + 1.0) * (n + s + 1.0) / ((t + 1.0) * (t + 3.0)));
  return {a, b};
}

}  // namespace

std::pair<double, double> family_coeffs(const ClassicalFamily& f, index_t nn) {
  if (nn < 0) throw DomainError("family_coeffs needs n >= 0");
  double n = static_cast<double>(nn);
  switch (f.tag) {
    case ClassicalFamily::Tag::Hermite: return {std::sqrt((n + 1.0) / 2.0), 0.0};
    case ClassicalFamily::Tag::Laguerre:
      return {std::sqrt((n + 1.0) * (n + 1.0 + f.p1)), 2.0 * n + f.p1 + 1.0};
    case ClassicalFamily::Tag::ChebyshevSecond: return {0.5, 0.0};
    case ClassicalFamily::Tag::ChebyshevFirst: return {nn == 0 ? std::sqrt(0.5) : 0.5, 0.0};
    case ClassicalFamily::Tag::JacobiAB: return jacobi_coeffs(f.p1, f.p2, nn);
    case ClassicalFamily::Tag::Pollaczek: {
      double A = f.p1, B = f.p2;
      return {(n + 1.0) / std::sqrt((2.0 * n + 2.0 * A + 1.0) * (2.0 * n + 2.0 * A + 3.0)),
              -2.0 * B / (2.0 * n + 2.0 * A + 1.0)};
    }
  }
  return {0.0, 0.0};
}

CoeffSequence family_sequence(const ClassicalFamily& f) {
  if (f.tag == ClassicalFamily::Tag::ChebyshevSecond) return CoeffSequence::free();
  if (f.tag == ClassicalFamily::Tag::ChebyshevFirst) return CoeffSequence::perturbed_free({{0, std::sqrt(0.5)}}, {});
  return CoeffSequence::from_rules(
      f.name(), [f](index_t n) { return family_coeffs(f, n).first; },
      [f](index_t n) { return family_coeffs(f, n).second; });
}

double jacobi_norm(double alpha, double beta) {
  double lb = std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0);
  return std::exp(-(alpha + beta + 1.0) * std::log(2.0) - lb);
}

double classical_weight(const ClassicalFamily& f, double l) {
  auto out_of_support = [&]() {
    std::ostringstream os;
    os << "lambda = " << l << " outside the support of " << f.name();
    throw DomainError(os.str());
  };
  switch (f.tag) {
    case ClassicalFamily::Tag::Hermite: return std::exp(-l * l) / std::sqrt(pi);
    case ClassicalFamily::Tag::Laguerre:
      if (!(l > 0.0)) out_of_support();
      return std::exp(f.p1 * std::log(l) - l - std::lgamma(f.p1 + 1.0));
    default: break;
  }
  if (!(l > -1.0 && l < 1.0)) out_of_support();
  switch (f.tag) {
    case ClassicalFamily::Tag::ChebyshevFirst: return 1.0 / (pi * std::sqrt((1.0 - l) * (1.0 + l)));
    case ClassicalFamily::Tag::ChebyshevSecond: return 2.0 / pi * std::sqrt((1.0 - l) * (1.0 + l));
    case ClassicalFamily::Tag::JacobiAB:
      return jacobi_norm(f.p1, f.p2) * std::pow(1.0 - l, f.p1) * std::pow(1.0 + l, f.p2);
    case ClassicalFamily::Tag::Pollaczek: {
      double th = std::acos(l);
      double xi = (f.p1 * std::cos(th) + f.p2) / std::sin(th);
      // (2 th - pi) xi - log cosh(pi xi), written to avoid overflow
      double ax = std::abs(pi * xi);
      double lc = ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
      return (f.p1 + 0.5) * std::exp((2.0 * th - pi) * xi - lc);
    }
    default: break;
  }
  return 0.0;
}

namespace {

cplx jacobi_asymptotic(double al, double be, const SpectralArg& z, index_t nn) {
  double n = static_cast<double>(nn);
  double k = jacobi_norm(al, be);
  cplx v = z.value;
  bool onCut = z.side != Side::Interior || (v.imag() == 0.0 && std::abs(v.real()) <= 1.0);
  if (onCut) {
    double l = v.real();
    if (l == 1.0 || l == -1.0) {
      double g = l > 0 ? al : be;
      double amp = std::pow(k, -0.5) * std::pow(2.0, -(al + be) / 2.0) * std::exp(-std::lgamma(g + 1.0)) *
                   std::pow(n, g + 0.5);
      return l > 0 ? amp : (nn % 2 ? -amp : amp);
    }
    if (!(std::abs(l) < 1.0)) throw DomainError("Jacobi interior form needs |lambda| < 1");
    double gam = (al + be + 1.0) / 2.0;
    double amp = std::sqrt(2.0 / (pi * k)) * std::pow(1.0 - l, -(1.0 + 2.0 * al) / 4.0) *
                 std::pow(1.0 + l, -(1.0 + 2.0 * be) / 4.0);
    return amp * std::cos((n + gam) * std::asin(l) - pi * (2.0 * n + be - al) / 4.0);
  }
  cplx zm = std::sqrt(v - 1.0), zp = std::sqrt(v + 1.0);
  cplx s = sqrt_z2_minus_1(SpectralArg::interior(v));
  cplx pre = std::pow(2.0 * pi * k, -0.5) * std::pow(2.0, -(al + be) / 2.0);
  cplx logv = std::log(pre) - (1.0 + 2.0 * al) / 4.0 * std::log(v - 1.0) - (1.0 + 2.0 * be) / 4.0 * std::log(v + 1.0) +
              (al + be) * std::log(zp + zm) + (n + 0.5) * std::log(v + s);
  return std::exp(logv);
}

}  // namespace

cplx reference_asymptotic(const ClassicalFamily& f, const SpectralArg& z, index_t nn) {
  double n = static_cast<double>(nn);
  cplx v = z.value;
  switch (f.tag) {
    case ClassicalFamily::Tag::Hermite: {
      double m = std::sqrt(2.0 * n + 1.0);
      return std::sqrt(2.0) * std::pow(pi, -0.25) * std::exp(v * v / 2.0) * std::pow(2.0 * n + 1.0, -0.25) *
             std::cos(m * v - pi * n / 2.0);
    }
    case ClassicalFamily::Tag::Laguerre: {
      double p = f.p1;
      double sg = nn % 2 ? -1.0 : 1.0;
      double c0 = sg * std::sqrt(std::tgamma(1.0 + p) / pi) * std::pow(n, -0.25);
      if (z.side != Side::Interior || (v.imag() == 0.0 && v.real() > 0.0)) {
        double l = v.real();
        if (!(l > 0.0)) throw DomainError("Laguerre oscillatory form needs lambda > 0");
        return c0 * std::pow(l, -p / 2.0 - 0.25) * std::exp(l / 2.0) *
               std::cos(2.0 * std::sqrt(n * l) - (2.0 * p + 1.0) / 4.0 * pi);
      }
      return 0.5 * c0 * std::pow(-v, -p / 2.0 - 0.25) * std::exp(v / 2.0) * std::exp(2.0 * std::sqrt(-n * v));
    }
    case ClassicalFamily::Tag::JacobiAB:
    case ClassicalFamily::Tag::ChebyshevFirst:
    case ClassicalFamily::Tag::ChebyshevSecond: return jacobi_asymptotic(f.p1, f.p2, z, nn);
    case ClassicalFamily::Tag::Pollaczek: break;
  }
  throw DomainError("no reference asymptotic for " + f.name());
}

}  // namespace js
