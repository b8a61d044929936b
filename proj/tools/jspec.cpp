#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "js/errors.hpp"
#include "js/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

// Subcommands whose main product is a handful of scalars.
bool summary_first(const std::string& name) { return name == "classify" || name == "jost" || name == "resolvent"; }

void add_flags(CLI::App* sub, jscli::Options& o) {
  auto* fam = sub->add_option("--family", o.family, "NAME[:params], e.g. hermite, jacobi:0.3:-0.2, pf:b0=1.5");
  auto* file = sub->add_option("--coeffs", o.coeffsFile, "file of 'n a_n b_n' lines");
  fam->excludes(file);
  sub->add_option("--tail", o.tail, "tail rule after the file: free, const:A:B, power:NU:P, repeat")->needs(file);
  sub->add_option("--grid", o.grid, "lo:hi:count");
  sub->add_option("--z", o.z, "re+imi[@+|@-]");
  sub->add_option("--omega", o.omega, "boundary parameter on the unit circle");
  sub->add_option("--orders", o.orders, "a..b");
  sub->add_option("--ns", o.ns, "comma separated degrees");
  sub->add_option("--tol", o.tol);
  sub->add_option("--nmax", o.nmax);
  sub->add_option("--n", o.n, "degree or row index");
  sub->add_option("--m", o.m, "column index");
  sub->add_option("--method", o.method, "neumann or sweep");
  sub->add_flag("--strict-tail", o.strictTail, "fail when the remainder tail exceeds 100*tol");
  sub->add_option("--radius", o.radius, "szego disc radius");
  sub->add_option("--points", o.points, "szego angles per circle");
  sub->add_option("--threads", o.threads, "worker threads (JS_THREADS otherwise)");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
}

std::string table_file(const jscli::Table& t, const std::string& fmt) { return t.name + "." + fmt; }

void write_table(std::ostream& os, const jscli::Table& t, const std::string& fmt) {
  if (fmt == "csv") {
    jscli::write_csv(os, t);
  } else {
    os << jscli::table_to_json(t).dump(2) << "\n";
  }
}

int execute(const std::string& name, const jscli::Options& o, const std::vector<std::string>& argv) {
  if (o.threads > 0) js::set_threads(o.threads);
  auto t0 = std::chrono::steady_clock::now();
  jscli::Result r = jscli::run_command(name, o);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (o.out.empty()) {
    if (o.format == "csv" && !r.tables.empty() && !summary_first(name)) {
      jscli::write_csv(std::cout, r.tables.front());
    } else {
      json j = {{"summary", r.summary}};
      for (const auto& t : r.tables) j["tables"][t.name] = jscli::table_to_json(t);
      std::cout << j.dump(2) << "\n";
    }
    return 0;
  }

  fs::create_directories(o.out);
  std::vector<std::string> files;
  for (const auto& t : r.tables) {
    std::string f = table_file(t, o.format);
    std::ofstream os(fs::path(o.out) / f, std::ios::binary);
    write_table(os, t, o.format);
    files.push_back(f);
  }
  {
    std::ofstream os(fs::path(o.out) / "summary.json", std::ios::binary);
    os << r.summary.dump(2) << "\n";
    files.push_back("summary.json");
  }
  json m;
  m["tool"] = "jspec";
  m["version"] = kVersion;
  m["subcommand"] = name;
  m["argv"] = argv;
  m["coefficients"] = jscli::coeff_spec(o);
  m["regime"] = r.report ? jscli::report_to_json(*r.report) : json(nullptr);
  m["tolerances"] = {{"tol", o.tol}};
  m["nmax"] = o.nmax;
  m["N0"] = r.report ? json(r.report->N0) : json(nullptr);
  m["convention"] = "a_{-1} = 1, P_{-1} = 0, P_0 = 1";
  m["threads"] = js::thread_count();
  m["outputs"] = files;
  m["wallSeconds"] = wall;
  std::ofstream os(fs::path(o.out) / "manifest.json", std::ios::binary);
  os << m.dump(2) << "\n";
  for (const auto& f : files) std::cout << (fs::path(o.out) / f).string() << "\n";
  return 0;
}

int run(std::vector<std::string> args) {
  CLI::App app{"Jost solutions, spectral measures and scattering data for Jacobi operators"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", kVersion);
  std::string replay;
  app.add_option("--replay", replay, "re-run the command recorded in a manifest.json");

  jscli::Options opts;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : jscli::kSubcommands) {
    subs[name] = app.add_subcommand(name);
    add_flags(subs[name], opts);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!replay.empty()) {
    std::ifstream is(replay);
    if (!is) throw js::DomainError("--replay: cannot open " + replay);
    json m = json::parse(is, nullptr, false);
    if (m.is_discarded() || !m.contains("argv")) throw js::DomainError("--replay: " + replay + " is not a manifest");
    return run(m["argv"].get<std::vector<std::string>>());
  }
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) return execute(name, opts, args);
  }
  std::cout << app.help();
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args);
  } catch (const js::Error& e) {
    std::cerr << "jspec: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "jspec: " << e.what() << "\n";
    return 1;
  }
}
