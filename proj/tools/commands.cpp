#include "commands.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "js/classical.hpp"
#include "js/errors.hpp"
#include "js/jost.hpp"
#include "js/limitcircle.hpp"
#include "js/parallel.hpp"
#include "js/scattering.hpp"
#include "js/spectral.hpp"

namespace jscli {

using js::cplx;
using js::index_t;
using nlohmann::json;

const std::vector<std::string> kSubcommands = {"classify", "polys",   "jost",      "weight",
                                               "resolvent", "spectrum", "asympt",   "scatter",
                                               "sumrules",  "szego",    "extensions", "classical-check"};

namespace {

// Rethrows a library error with the offending parameter prepended, keeping its exit code.
template <class F>
auto with_context(const std::string& ctx, F&& f) {
  try {
    return f();
  } catch (const js::Error& e) {
    throw js::Error(ctx + ": " + e.what(), e.exit_code());
  }
}

std::string lambda_ctx(double l) { return "lambda=" + format_double(l); }

js::CoeffSequence load_coeffs(const Options& o) {
  if (o.family.empty() == o.coeffsFile.empty()) throw js::DomainError("give exactly one of --family or --coeffs");
  if (!o.family.empty()) return with_context("--family " + o.family, [&] { return js::parse_family(o.family); });
  return with_context("--coeffs " + o.coeffsFile, [&] { return js::load_coeff_file(o.coeffsFile, o.tail); });
}

std::optional<js::ClassicalFamily> parse_classical(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.empty()) return std::nullopt;
  auto num = [&](size_t i) { return i < parts.size() ? std::stod(parts[i]) : 0.0; };
  const std::string& nm = parts[0];
  if (nm == "hermite") return js::ClassicalFamily::hermite();
  if (nm == "cheb1") return js::ClassicalFamily::chebyshev_first();
  if (nm == "cheb2" || nm == "free") return js::ClassicalFamily::chebyshev_second();
  if (nm == "laguerre" && parts.size() == 2) return js::ClassicalFamily::laguerre(num(1));
  if (nm == "jacobi" && parts.size() == 3) return js::ClassicalFamily::jacobi(num(1), num(2));
  if (nm == "pollaczek" && parts.size() == 3) return js::ClassicalFamily::pollaczek(num(1), num(2));
  return std::nullopt;
}

struct Ctx {
  const Options& o;
  js::CoeffSequence c;
  js::RegimeReport rep;
  js::JostOptions jopt;
  Result res;

  explicit Ctx(const Options& opts) : o(opts), c(load_coeffs(opts)) {
    if (o.nmax < 10) throw js::DomainError("--nmax must be at least 10");
    if (!(o.tol > 0.0)) throw js::DomainError("--tol must be positive");
    rep = js::classify(c);
    jopt.tol = o.tol;
    jopt.nmax = o.nmax;
    jopt.strictTail = o.strictTail;
    if (o.method == "sweep") {
      jopt.method = js::JostOptions::Method::Sweep;
    } else if (o.method != "neumann") {
      throw js::DomainError("--method must be neumann or sweep");
    }
    jopt.report = rep;
    res.report = rep;
  }
  bool nc() const { return rep.regime == js::RegimeTag::NonCarleman; }
  js::SpectralArg z(const std::string& fallback) const {
    const std::string& s = o.z.empty() ? fallback : o.z;
    return with_context("--z " + s, [&] { return parse_z(s); });
  }
  std::vector<double> grid() const {
    if (o.grid.empty()) throw js::DomainError("--grid lo:hi:count is required");
    return parse_grid(o.grid);
  }
  cplx omega() const {
    cplx w = with_context("--omega " + o.omega, [&] { return parse_complex(o.omega); });
    if (std::abs(std::abs(w) - 1.0) > 1e-12) throw js::DomainError("--omega must lie on the unit circle");
    return w;
  }
  index_t n_or(index_t d) const { return o.n < 0 ? d : static_cast<index_t>(o.n); }
};

void cmd_classify(Ctx& x) { x.res.summary = report_to_json(x.rep); }

void cmd_polys(Ctx& x) {
  js::SpectralArg z = x.z("0");
  index_t N = x.n_or(20);
  auto P = js::eval_P(x.c, z, N), Q = js::eval_Q(x.c, z, N);
  Table t{"polys", {"n", "re_P", "im_P", "log_abs_P", "re_Q", "im_Q", "log_abs_Q"}, {}};
  for (index_t n = 0; n <= N; ++n) {
    cplx p = P[n], q = Q[n];
    t.rows.push_back({static_cast<long long>(n), p.real(), p.imag(), P.x(n).log_abs(), q.real(), q.imag(),
                      Q.x(n).log_abs()});
  }
  x.res.tables.push_back(std::move(t));
  x.res.summary["z"] = complex_json(z.value);
  x.res.summary["wronskianPQ"] = complex_json(js::wronskian(P, Q, x.c, std::max<index_t>(0, N - 1)));
  x.res.summary["residualP"] = P.residual(x.c, z.value);
}

void jost_table(Ctx& x, const js::JostResult& r, const std::string& name) {
  Table t{name, {"n", "re_f", "im_f", "log_abs_f"}, {}};
  index_t last = std::min<index_t>(r.f.last(), x.n_or(50));
  for (index_t n = -1; n <= last; ++n) {
    cplx f = r.f[n];
    t.rows.push_back({static_cast<long long>(n), f.real(), f.imag(), r.f.x(n).log_abs()});
  }
  x.res.tables.push_back(std::move(t));
}

json jost_json(const js::JostResult& r) {
  return {{"omega", complex_json(r.omega)}, {"tailBound", r.tailBound}, {"residual", r.residual},
          {"iterations", r.iterations},     {"N0", r.N0},               {"Nmax", r.Nmax},
          {"regime", js::to_string(r.regime)}};
}

void cmd_jost(Ctx& x) {
  js::SpectralArg z = x.z("0+1i");
  x.res.summary["z"] = complex_json(z.value);
  if (x.nc()) {
    auto pr = with_context("--z", [&] { return js::jost_pair_noncarleman(x.c, z.value, x.jopt); });
    x.res.summary["plus"] = jost_json(pr.plus);
    x.res.summary["minus"] = jost_json(pr.minus);
    x.res.summary["wronskian"] = complex_json(pr.wronskian);
    x.res.summary["kappaInf"] = pr.kappaInf;
    jost_table(x, pr.plus, "jost_plus");
    jost_table(x, pr.minus, "jost_minus");
    return;
  }
  auto r = with_context("--z", [&] { return js::solve_jost(x.c, z, x.jopt); });
  x.res.summary.update(jost_json(r));
  jost_table(x, r, "jost");
}

void cmd_weight(Ctx& x) {
  auto g = x.grid();
  auto samples = js::grid_map(g, [&](double l) {
    return with_context(lambda_ctx(l), [&] { return js::spectral_weight(x.c, l, x.jopt); });
  });
  js::unwrap_phase(samples);
  auto cf = x.o.family.empty() ? std::nullopt : parse_classical(x.o.family);
  std::vector<std::string> hdr = {"lambda", "tau", "tau_wronskian", "kappa", "eta"};
  if (cf) hdr.push_back("tau_classical");
  Table t{"weight", hdr, {}};
  for (const auto& s : samples) {
    std::vector<Cell> row = {s.lambda, s.tau, s.tauWronskian, s.kappa, s.eta};
    if (cf) row.push_back(js::classical_weight(*cf, s.lambda));
    t.rows.push_back(std::move(row));
  }
  x.res.tables.push_back(std::move(t));
  x.res.summary["points"] = g.size();
}

void cmd_resolvent(Ctx& x) {
  js::SpectralArg z = x.z("0+1i");
  index_t n = x.n_or(0), m = static_cast<index_t>(x.o.m);
  cplx v;
  if (x.nc()) {
    js::JostOptions jo = x.jopt;
    jo.strictTail = false;
    v = with_context("--z", [&] { return js::extension_resolvent(x.c, x.omega(), z.value, n, m, jo); });
    x.res.summary["omega"] = complex_json(x.omega());
  } else {
    v = with_context("--z", [&] { return js::resolvent_element(x.c, z, n, m, x.jopt); });
  }
  x.res.summary["z"] = complex_json(z.value);
  x.res.summary["n"] = n;
  x.res.summary["m"] = m;
  x.res.summary["value"] = complex_json(v);
  x.res.tables.push_back({"resolvent", {"n", "m", "re_z", "im_z", "re", "im"},
                          {{static_cast<long long>(n), static_cast<long long>(m), z.value.real(), z.value.imag(),
                            v.real(), v.imag()}}});
}

void cmd_spectrum(Ctx& x) {
  auto g = x.grid();
  double lo = g.front(), hi = g.back();
  int cnt = static_cast<int>(g.size());
  if (x.nc()) {
    js::JostOptions jo = x.jopt;
    jo.strictTail = false;
    auto roots = js::extension_spectrum(x.c, x.omega(), lo, hi, cnt, jo);
    Table t{"spectrum", {"lambda", "residual"}, {}};
    for (const auto& r : roots) t.rows.push_back({r.lambda, r.residual});
    x.res.tables.push_back(std::move(t));
    x.res.summary["omega"] = complex_json(x.omega());
    x.res.summary["count"] = roots.size();
    return;
  }
  auto ev = js::discrete_spectrum(x.c, lo, hi, cnt, x.jopt);
  Table t{"spectrum", {"lambda", "oracle_gap", "mass"}, {}};
  for (const auto& e : ev) t.rows.push_back({e.lambda, e.oracleGap, e.mass});
  x.res.tables.push_back(std::move(t));
  x.res.summary["count"] = ev.size();
}

void cmd_asympt(Ctx& x) {
  auto ns = parse_int_list(x.o.ns);
  index_t maxN = 0;
  for (auto n : ns) {
    if (n < 1) throw js::DomainError("--ns entries must be positive");
    maxN = std::max<index_t>(maxN, n);
  }
  Table t{"asympt", {"re_z", "im_z", "n", "re_P", "im_P", "re_pred", "im_pred", "scaled_residual"}, {}};
  if (!x.o.z.empty()) {
    js::SpectralArg z = x.z("");
    auto P = js::eval_P(x.c, z, maxN);
    for (auto n : ns) {
      cplx pred = with_context("--z", [&] { return js::predict_Pn_complex(x.c, z, n, x.jopt); });
      cplx p = P[n];
      double rel = std::abs(p - pred) / std::abs(pred);
      t.rows.push_back({z.value.real(), z.value.imag(), n, p.real(), p.imag(), pred.real(), pred.imag(), rel});
    }
  } else {
    auto g = x.grid();
    auto rows = js::grid_map(g, [&](double l) {
      return with_context(lambda_ctx(l), [&] {
        auto P = js::eval_P(x.c, js::SpectralArg::interior(l), maxN);
        auto pred = js::predict_Pn_real_seq(x.c, l, maxN, x.jopt);
        std::vector<std::vector<Cell>> out;
        for (auto n : ns) {
          double p = P[n].real(), q = pred.at(n);
          out.push_back({l, 0.0, n, p, 0.0, q, 0.0, std::abs(p - q) * std::sqrt(x.c.a(n))});
        }
        return out;
      });
    });
    for (auto& r : rows)
      for (auto& row : r) t.rows.push_back(std::move(row));
  }
  x.res.tables.push_back(std::move(t));
}

js::ScatterOptions scatter_opts(const Options& o) {
  js::ScatterOptions so;
  so.nmax = o.nmax;
  return so;
}

json threshold_json(const js::Scattering& s, int sign) {
  try {
    const auto& th = s.threshold(sign);
    json j = {{"omegaAt", complex_json(th.omegaAt)},
              {"omegaSeries", complex_json(th.omegaSeries)},
              {"resonant", th.resonant}};
    if (th.f0inv) j["f0inv"] = *th.f0inv;
    if (th.ratioLimit) j["ratioLimit"] = complex_json(*th.ratioLimit);
    return j;
  } catch (const js::DomainError& e) {
    return {{"error", e.what()}};
  }
}

void cmd_scatter(Ctx& x) {
  auto g = x.grid();
  js::Scattering s(x.c, scatter_opts(x.o));
  auto d = s.spectral_shift(g);
  Table t{"scatter", {"lambda", "xi", "reD", "imD", "tau"}, {}};
  for (size_t i = 0; i < d.grid.size(); ++i)
    t.rows.push_back({d.grid[i], d.xi[i], d.D[i].real(), d.D[i].imag(), d.tau[i]});
  x.res.tables.push_back(std::move(t));
  auto& j = x.res.summary;
  j["A"] = d.A;
  j["eigenvalues"] = d.eigenvalues;
  j["xiLeft"] = d.xiLeft;
  j["xiRight"] = d.xiRight;
  j["jump"] = d.jump();
  j["p"] = d.p;
  j["levinson"] = static_cast<double>(d.eigenvalues.size()) + d.p;
  j["intAbsXi"] = d.intAbsXi;
  j["vNorm1"] = d.vNorm1;
  j["thresholdPlus"] = threshold_json(s, 1);
  j["thresholdMinus"] = threshold_json(s, -1);
}

void cmd_sumrules(Ctx& x) {
  auto [lo, hi] = parse_range(x.o.orders);
  if (lo < 0 || hi < lo) throw js::DomainError("--orders must be a..b with 0 <= a <= b");
  js::Scattering s(x.c, scatter_opts(x.o));
  Table t{"sumrules", {"kind", "order", "lhs", "rhs", "gap"}, {}};
  double worst = 0.0;
  for (int n = lo; n <= hi; ++n) {
    auto cs = s.case_sum_rule(n);
    t.rows.push_back({std::string("case"), static_cast<long long>(n), cs.lhs, cs.rhs, cs.gap()});
    worst = std::max(worst, cs.gap());
    if (n >= 1) {
      auto tr = s.trace_identity(n);
      t.rows.push_back({std::string("trace"), static_cast<long long>(n), tr.lhs, tr.rhs, tr.gap()});
      worst = std::max(worst, tr.gap());
    }
  }
  x.res.tables.push_back(std::move(t));
  x.res.summary["maxGap"] = worst;
}

void cmd_szego(Ctx& x) {
  if (!(x.o.radius > 0.0 && x.o.radius < 1.0)) throw js::DomainError("--radius must lie in (0, 1)");
  if (x.o.points < 1) throw js::DomainError("--points must be positive");
  std::vector<cplx> zs = {cplx(0.0, 0.0)};
  for (int k = 1; k <= 4; ++k)
    for (int j = 0; j < x.o.points; ++j)
      zs.push_back(std::polar(x.o.radius * k / 4.0, 2.0 * M_PI * (j + 0.5) / x.o.points));
  js::Scattering s(x.c, scatter_opts(x.o));
  auto r = s.szego_factorization(zs);
  Table t{"szego", {"re_zeta", "im_zeta", "re_Delta", "im_Delta", "re_B", "im_B", "re_S", "im_S"}, {}};
  for (size_t i = 0; i < r.zeta.size(); ++i)
    t.rows.push_back({r.zeta[i].real(), r.zeta[i].imag(), r.Delta[i].real(), r.Delta[i].imag(), r.B[i].real(),
                      r.B[i].imag(), r.S[i].real(), r.S[i].imag()});
  x.res.tables.push_back(std::move(t));
  x.res.summary["residual"] = r.residual;
}

void cmd_extensions(Ctx& x) {
  if (!x.nc()) throw js::DomainError("extensions needs non-Carleman coefficients, got " + js::to_string(x.rep.regime));
  js::JostOptions jo = x.jopt;
  jo.strictTail = false;
  cplx w = x.omega();
  js::SpectralArg z = x.z("0+1i");
  auto e = with_context("--z", [&] { return js::boundary_coefficients(x.c, z.value, jo); });
  auto& j = x.res.summary;
  j["z"] = complex_json(z.value);
  j["omega"] = complex_json(w);
  j["sigmaPlus"] = complex_json(e.sigmaPlus);
  j["sigmaMinus"] = complex_json(e.sigmaMinus);
  j["tauPlus"] = complex_json(e.tauPlus);
  j["tauMinus"] = complex_json(e.tauMinus);
  j["kappaInf"] = e.kappaInf;
  j["betaInf"] = e.betaInf;
  j["wronskian"] = complex_json(e.wronskian);
  j["wronskianLimit"] = complex_json(e.wronskianLimit());
  j["identityResidual"] = e.identityResidual();
  try {
    j["gamma"] = complex_json(js::nevanlinna_gamma(e, w));
  } catch (const js::EigenvalueHit& err) {
    j["gamma"] = err.what();
  }
  if (!x.o.grid.empty()) {
    auto g = x.grid();
    auto roots = js::extension_spectrum(x.c, w, g.front(), g.back(), static_cast<int>(g.size()), jo);
    Table t{"extensions", {"lambda", "residual"}, {}};
    for (const auto& r : roots) t.rows.push_back({r.lambda, r.residual});
    x.res.tables.push_back(std::move(t));
  }
}

void cmd_classical_check(Ctx& x) {
  auto cf = x.o.family.empty() ? std::nullopt : parse_classical(x.o.family);
  if (!cf) throw js::DomainError("classical-check needs --family hermite, laguerre:p, jacobi:a:b, cheb1 or cheb2");
  index_t n = x.n_or(5000);
  std::vector<js::SpectralArg> pts;
  if (!x.o.z.empty()) {
    pts.push_back(x.z(""));
  } else {
    for (double l : x.grid()) pts.push_back(js::SpectralArg::interior(l));
  }
  Table t{"classical_check", {"re_z", "im_z", "n", "re_P", "im_P", "re_ref", "im_ref", "rel_err"}, {}};
  auto rows = js::grid_map(pts, [&](const js::SpectralArg& z) {
    return with_context("z=" + format_double(z.value.real()) + "+" + format_double(z.value.imag()) + "i", [&] {
      cplx p = js::eval_P(x.c, z, n)[n];
      cplx r = js::reference_asymptotic(*cf, z, n);
      double scale = std::max(std::abs(r), 1e-300);
      std::vector<Cell> row = {z.value.real(), z.value.imag(), static_cast<long long>(n), p.real(), p.imag(),
                               r.real(), r.imag(), std::abs(p - r) / scale};
      return row;
    });
  });
  double worst = 0.0;
  for (auto& r : rows) {
    worst = std::max(worst, std::get<double>(r.back()));
    t.rows.push_back(std::move(r));
  }
  x.res.tables.push_back(std::move(t));
  x.res.summary["maxRelErr"] = worst;
}

}  // namespace

std::string coeff_spec(const Options& o) {
  if (!o.family.empty()) return "family " + o.family;
  return "file " + o.coeffsFile + " tail " + o.tail;
}

Result run_command(const std::string& name, const Options& o) {
  static const std::map<std::string, std::function<void(Ctx&)>> table = {
      {"classify", cmd_classify}, {"polys", cmd_polys},       {"jost", cmd_jost},
      {"weight", cmd_weight},     {"resolvent", cmd_resolvent}, {"spectrum", cmd_spectrum},
      {"asympt", cmd_asympt},     {"scatter", cmd_scatter},   {"sumrules", cmd_sumrules},
      {"szego", cmd_szego},       {"extensions", cmd_extensions}, {"classical-check", cmd_classical_check}};
  auto it = table.find(name);
  if (it == table.end()) throw js::DomainError("unknown subcommand " + name);
  Ctx x(o);
  it->second(x);
  return std::move(x.res);
}

}  // namespace jscli
