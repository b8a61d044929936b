#pragma once
#include <optional>
#include <string>
#include <vector>

#include "js/coeffs.hpp"
#include "js/uniformization.hpp"
#include "js/xcomplex.hpp"

namespace js {

struct RegimeReport {
  std::optional<double> betaInf;
  bool carleman = true;
  RegimeTag regime = RegimeTag::ShortRange;
  index_t N0 = 0;
  double epsMargin = 0.5;
  double rho0 = 16.0;
  /// Stabilizing limits a_n -> aInf, b_n -> bInf.
  double aInf = 0.5;
  double bInf = 0.0;
  /// Fitted growth exponent of a_n over the probe window.
  double exponent = 0.0;
  std::string heuristics;
};

/// Classifies by finite-horizon heuristics over n <= depth.
RegimeReport classify(const CoeffSequence& c, double rho0 = 16.0, index_t depth = 4096);

enum class SolutionLabel { FirstKindP, SecondKindQ, Jost, Growing, JostPlus, JostMinus };
std::string to_string(SolutionLabel l);

/// Values u_{-1..N} of a solution of the three-term relation.
class SolutionSeq {
 public:
  SolutionSeq() = default;
  SolutionSeq(std::vector<XComplex> values, SolutionLabel label) : v_(std::move(values)), label_(label) {}

  index_t start() const { return -1; }
  index_t last() const { return static_cast<index_t>(v_.size()) - 2; }
  SolutionLabel label() const { return label_; }
  const XComplex& x(index_t n) const { return v_.at(static_cast<size_t>(n + 1)); }
  cplx operator[](index_t n) const { return x(n).value(); }
  const std::vector<XComplex>& raw() const { return v_; }

  /// Largest relation residual relative to the largest neighboring term.
  double residual(const CoeffSequence& c, cplx z) const;
  /// Throws NoConvergence when residual exceeds tol.
  void check(const CoeffSequence& c, cplx z, double tol = 1e-10) const;

 private:
  std::vector<XComplex> v_;
  SolutionLabel label_ = SolutionLabel::FirstKindP;
};

/// Runs the recurrence forward from (u_{-1}, u_0) up to index N.
SolutionSeq run_forward(const CoeffSequence& c, cplx z, XComplex um1, XComplex u0, index_t N, SolutionLabel label);

SolutionSeq eval_P(const CoeffSequence& c, const SpectralArg& z, index_t N);
SolutionSeq eval_Q(const CoeffSequence& c, const SpectralArg& z, index_t N);

/// a_n (u_n v_{n+1} - u_{n+1} v_n).
cplx wronskian(const SolutionSeq& u, const SolutionSeq& v, const CoeffSequence& c, index_t n);
XComplex wronskian_x(const SolutionSeq& u, const SolutionSeq& v, const CoeffSequence& c, index_t n);

/// (J u)_n for n < u.size(); entries past the end are taken as zero.
std::vector<cplx> apply_jacobi(const CoeffSequence& c, const std::vector<cplx>& u);

struct LeadingCoeffs {
  std::vector<double> k;  ///< k_n = 1/(a_0...a_{n-1}); huge values saturate to inf
  std::vector<double> logk;
  std::vector<double> r;  ///< r_n = -(b_0 + ... + b_{n-1})
};
LeadingCoeffs leading_coeffs(const CoeffSequence& c, index_t N);

/// Monomial coefficients of P_0..P_N (row n holds P_n), for small N.
std::vector<std::vector<double>> monomial_coeffs(const CoeffSequence& c, index_t N);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
/// Nodes and weights from the N x N truncation.
GaussRule gauss_rule(const CoeffSequence& c, index_t N);

/// Discretized Stieltjes procedure; returns tabulated coefficients with a free tail.
CoeffSequence favard_from_measure(const std::vector<double>& nodes, const std::vector<double>& weights, index_t N);

struct MomentTable {
  std::vector<double> s;
  /// Hankel determinants d_0..d_K as exact rationals, stored as decimal strings and doubles.
  std::vector<std::string> hankelExact;
  std::vector<double> hankelDet;
};

MomentTable moments_from_operator(const CoeffSequence& c, index_t nMax);
/// Hankel determinant formula for P_n(z); n <= 10.
cplx hankel_polynomial(const MomentTable& m, index_t n, cplx z);

}  // namespace js
