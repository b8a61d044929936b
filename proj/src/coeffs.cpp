#include "js/coeffs.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "js/classical.hpp"
#include "js/errors.hpp"

namespace js {

std::string to_string(RegimeTag r) {
  switch (r) {
    case RegimeTag::IncreasingSmallDiag: return "IncreasingSmallDiag";
    case RegimeTag::IncreasingLargeDiag: return "IncreasingLargeDiag";
    case RegimeTag::NonCarleman: return "NonCarleman";
    case RegimeTag::Stabilizing: return "Stabilizing";
    case RegimeTag::ShortRange: return "ShortRange";
  }
  return "?";
}

CoeffSequence::CoeffSequence(Kind kind, std::string name, Rule a, Rule b)
    : kind_(kind), name_(std::move(name)), a_(std::move(a)), b_(std::move(b)) {}

CoeffSequence CoeffSequence::reflected() const {
  CoeffSequence r = *this;
  Rule b = b_;
  r.b_ = [b](index_t n) { return -b(n); };
  r.name_ = name_ + "/reflected";
  return r;
}

CoeffSequence CoeffSequence::free() {
  CoeffSequence c(Kind::PerturbedFree, "free", [](index_t) { return 0.5; }, [](index_t) { return 0.0; });
  c.free_from_ = 0;
  return c;
}

CoeffSequence CoeffSequence::power(double nu, double p, double bb) {
  if (!(nu > 0.0)) throw DomainError("power family needs nu > 0");
  std::ostringstream os;
  os << "power:" << nu << ":" << p << ":" << bb;
  return from_rules(
      os.str(), [nu, p](index_t n) { return nu * std::pow(static_cast<double>(n + 1), p); },
      [nu, p, bb](index_t n) { return bb * nu * std::pow(static_cast<double>(n + 1), p); });
}

CoeffSequence CoeffSequence::stabilizing_power(double c, double q, double d) {
  std::ostringstream os;
  os << "stab:" << c << ":" << q << ":" << d;
  if (0.5 + c <= 0.0) throw DomainError("stabilizing family needs a_0 > 0");
  return from_rules(
      os.str(), [c, q](index_t n) { return 0.5 + c * std::pow(static_cast<double>(n + 1), -q); },
      [d, q](index_t n) { return d * std::pow(static_cast<double>(n + 1), -q); });
}

CoeffSequence CoeffSequence::geometric(double r) {
  if (!(r > 0.0)) throw DomainError("geometric family needs r > 0");
  std::ostringstream os;
  os << "geom:" << r;
  return from_rules(
      os.str(), [r](index_t n) { return std::pow(r, static_cast<double>(n)); }, [](index_t) { return 0.0; });
}

CoeffSequence CoeffSequence::perturbed_free(const std::map<index_t, double>& a_over,
                                            const std::map<index_t, double>& b_over) {
  std::ostringstream os;
  os << "pf";
  index_t end = 0;
  for (auto [n, v] : a_over) {
    if (n < 0 || !(v > 0.0)) throw DomainError("perturbed_free needs n >= 0 and a_n > 0");
    os << ":a" << n << "=" << v;
    end = std::max(end, n + 1);
  }
  for (auto [n, v] : b_over) {
    if (n < 0) throw DomainError("perturbed_free needs n >= 0");
    os << ":b" << n << "=" << v;
    end = std::max(end, n + 1);
  }
  CoeffSequence c(
      Kind::PerturbedFree, os.str(),
      [a_over](index_t n) {
        auto it = a_over.find(n);
        return it == a_over.end() ? 0.5 : it->second;
      },
      [b_over](index_t n) {
        auto it = b_over.find(n);
        return it == b_over.end() ? 0.0 : it->second;
      });
  c.free_from_ = end;
  return c;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& ctx) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError("cannot parse number '" + s + "' in " + ctx);
  }
}

}  // namespace

CoeffSequence CoeffSequence::tabulated(std::vector<double> a, std::vector<double> b, const std::string& tail,
                                       const std::string& name) {
  if (a.empty() || a.size() != b.size()) throw DomainError("tabulated coefficients need equal non-empty columns");
  for (double v : a)
    if (!(v > 0.0)) throw DomainError("tabulated a_n must be positive");
  auto parts = split(tail, ':');
  if (parts.empty()) throw DomainError("missing tail rule");
  index_t N = static_cast<index_t>(a.size());
  Rule ta, tb;
  bool freeTail = false;
  if (parts[0] == "free" && parts.size() == 1) {
    ta = [](index_t) { return 0.5; };
    tb = [](index_t) { return 0.0; };
    freeTail = true;
  } else if (parts[0] == "const" && parts.size() == 3) {
    double A = to_double(parts[1], "tail rule"), B = to_double(parts[2], "tail rule");
    if (!(A > 0.0)) throw DomainError("const tail needs A > 0");
    ta = [A](index_t) { return A; };
    tb = [B](index_t) { return B; };
  } else if (parts[0] == "power" && (parts.size() == 3 || parts.size() == 4)) {
    double nu = to_double(parts[1], "tail rule"), p = to_double(parts[2], "tail rule");
    double bb = parts.size() == 4 ? to_double(parts[3], "tail rule") : 0.0;
    ta = [nu, p](index_t n) { return nu * std::pow(static_cast<double>(n + 1), p); };
    tb = [nu, p, bb](index_t n) { return bb * nu * std::pow(static_cast<double>(n + 1), p); };
  } else if (parts[0] == "repeat" && parts.size() == 1) {
    double A = a.back(), B = b.back();
    ta = [A](index_t) { return A; };
    tb = [B](index_t) { return B; };
  } else {
    throw DomainError("unknown tail rule '" + tail + "'");
  }
  auto av = std::make_shared<std::vector<double>>(std::move(a));
  auto bv = std::make_shared<std::vector<double>>(std::move(b));
  CoeffSequence c(
      Kind::Tabulated, name + "+" + tail,
      [av, ta, N](index_t n) { return n < N ? (*av)[static_cast<size_t>(n)] : ta(n); },
      [bv, tb, N](index_t n) { return n < N ? (*bv)[static_cast<size_t>(n)] : tb(n); });
  if (freeTail) {
    index_t end = N;
    while (end > 0 && (*av)[static_cast<size_t>(end - 1)] == 0.5 && (*bv)[static_cast<size_t>(end - 1)] == 0.0) --end;
    c.free_from_ = end;
  }
  return c;
}

CoeffSequence load_coeff_file(const std::string& path, const std::string& tail) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open coefficient file " + path);
  std::vector<double> a, b;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    double n, an, bn;
    if (!(ls >> n)) continue;
    if (!(ls >> an >> bn)) throw DomainError(path + ":" + std::to_string(lineNo) + ": expected 'n a_n b_n'");
    if (n != static_cast<double>(a.size()))
      throw DomainError(path + ":" + std::to_string(lineNo) + ": indices must be consecutive from 0");
    a.push_back(an);
    b.push_back(bn);
  }
  return CoeffSequence::tabulated(std::move(a), std::move(b), tail, path);
}

CoeffSequence parse_family(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.empty()) throw DomainError("empty family");
  const std::string& nm = parts[0];
  auto num = [&](size_t i) {
    if (i >= parts.size()) throw DomainError("family '" + spec + "' is missing parameter " + std::to_string(i));
    return to_double(parts[i], spec);
  };
  auto expect = [&](size_t lo, size_t hi) {
    if (parts.size() < lo + 1 || parts.size() > hi + 1)
      throw DomainError("family '" + spec + "' has the wrong number of parameters");
  };
  if (nm == "free" || nm == "cheb2") {
    expect(0, 0);
    return CoeffSequence::free();
  }
  if (nm == "cheb1") {
    expect(0, 0);
    return family_sequence(ClassicalFamily::chebyshev_first());
  }
  if (nm == "hermite") {
    expect(0, 0);
    return family_sequence(ClassicalFamily::hermite());
  }
  if (nm == "laguerre") {
    expect(1, 1);
    return family_sequence(ClassicalFamily::laguerre(num(1)));
  }
  if (nm == "jacobi") {
    expect(2, 2);
    return family_sequence(ClassicalFamily::jacobi(num(1), num(2)));
  }
  if (nm == "pollaczek") {
    expect(2, 2);
    return family_sequence(ClassicalFamily::pollaczek(num(1), num(2)));
  }
  if (nm == "power") {
    expect(2, 3);
    return CoeffSequence::power(num(1), num(2), parts.size() > 3 ? num(3) : 0.0);
  }
  if (nm == "stab") {
    expect(2, 3);
    return CoeffSequence::stabilizing_power(num(1), num(2), parts.size() > 3 ? num(3) : 0.0);
  }
  if (nm == "geom") {
    expect(1, 1);
    return CoeffSequence::geometric(num(1));
  }
  if (nm == "pf") {
    std::map<index_t, double> ao, bo;
    for (size_t i = 1; i < parts.size(); ++i) {
      const std::string& p = parts[i];
      auto eq = p.find('=');
      if (p.size() < 4 || eq == std::string::npos || (p[0] != 'a' && p[0] != 'b'))
        throw DomainError("perturbation '" + p + "' must look like a3=0.6 or b0=1.5");
      index_t n = static_cast<index_t>(to_double(p.substr(1, eq - 1), spec));
      double v = to_double(p.substr(eq + 1), spec);
      (p[0] == 'a' ? ao : bo)[n] = v;
    }
    return CoeffSequence::perturbed_free(ao, bo);
  }
  throw DomainError("unknown family '" + nm + "'");
}

}  // namespace js
