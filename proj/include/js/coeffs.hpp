#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace js {

using index_t = std::int64_t;

enum class RegimeTag { IncreasingSmallDiag, IncreasingLargeDiag, NonCarleman, Stabilizing, ShortRange };

std::string to_string(RegimeTag r);

/// Recurrence coefficients a_n > 0, b_n for every n >= 0, with a_{-1} = 1.
class CoeffSequence {
 public:
  enum class Kind { ClosedForm, PerturbedFree, Tabulated };
  using Rule = std::function<double(index_t)>;

  CoeffSequence(Kind kind, std::string name, Rule a, Rule b);

  double a(index_t n) const { return n < 0 ? 1.0 : a_(n); }
  double b(index_t n) const { return n < 0 ? 0.0 : b_(n); }
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// For PerturbedFree: first index from which a = 1/2, b = 0 hold exactly.
  std::optional<index_t> free_from() const { return free_from_; }

  /// The same operator with b_n replaced by -b_n.
  CoeffSequence reflected() const;

  static CoeffSequence free();
  /// a_n = nu (n+1)^p, b_n = bb * a_n.
  static CoeffSequence power(double nu, double p, double bb = 0.0);
  /// a_n = 1/2 + c (n+1)^{-q}, b_n = d (n+1)^{-q}.
  static CoeffSequence stabilizing_power(double c, double q, double d = 0.0);
  /// a_n = r^n, b_n = 0.
  static CoeffSequence geometric(double r);
  /// Free coefficients with finitely many overrides.
  static CoeffSequence perturbed_free(const std::map<index_t, double>& a_over,
                                      const std::map<index_t, double>& b_over);
  /// Tabulated values continued by a tail rule: "free", "const:A:B",
  /// "power:NU:P" or "repeat".
  static CoeffSequence tabulated(std::vector<double> a, std::vector<double> b, const std::string& tail,
                                 const std::string& name = "tabulated");
  static CoeffSequence from_rules(std::string name, Rule a, Rule b) {
    return CoeffSequence(Kind::ClosedForm, std::move(name), std::move(a), std::move(b));
  }

 private:
  Kind kind_;
  std::string name_;
  Rule a_, b_;
  std::optional<index_t> free_from_;
};

/// Parses NAME[:params]; see README for the family list.
CoeffSequence parse_family(const std::string& spec);

/// Reads "n a_n b_n" lines ('#' starts a comment) and appends the tail rule.
CoeffSequence load_coeff_file(const std::string& path, const std::string& tail);

}  // namespace js
