#pragma once
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"
#include "js/recurrence.hpp"

namespace jscli {

struct Options {
  std::string family;
  std::string coeffsFile;
  std::string tail = "free";
  std::string grid;
  std::string z;
  std::string omega = "1";
  std::string orders = "0..3";
  std::string ns = "200,2000,20000";
  double tol = 1e-12;
  long long nmax = 4000;
  /// Degree or index; -1 picks the subcommand default.
  long long n = -1;
  long long m = 0;
  std::string method = "neumann";
  /// Off by default: the tail closure covers what lies past --nmax and tailBound is reported.
  bool strictTail = false;
  double radius = 0.8;
  int points = 16;
  int threads = 0;
  std::string out;
  std::string format = "csv";
};

struct Result {
  std::vector<Table> tables;
  nlohmann::json summary = nlohmann::json::object();
  std::optional<js::RegimeReport> report;
};

extern const std::vector<std::string> kSubcommands;

/// Coefficient description recorded in the manifest.
std::string coeff_spec(const Options& o);
Result run_command(const std::string& name, const Options& o);

}  // namespace jscli
