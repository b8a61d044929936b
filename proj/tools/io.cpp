#include "io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <regex>

#include "js/errors.hpp"

namespace jscli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

double to_num(const std::string& s, const std::string& what) {
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw js::DomainError("cannot parse " + what + " '" + s + "'");
  return v;
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_field(t.header[i]);
  os << "\r\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
    os << "\r\n";
  }
}

nlohmann::json table_to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (size_t i = 0; i < row.size() && i < t.header.size(); ++i) {
      std::visit([&](const auto& v) { r[t.header[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

js::cplx parse_complex(const std::string& s) {
  static const std::regex full(R"(^\s*([+-]?[0-9.eE]+(?:[eE][+-]?[0-9]+)?)\s*([+-])\s*([0-9.eE]+(?:[eE][+-]?[0-9]+)?)?\s*i\s*$)");
  static const std::regex imag(R"(^\s*([+-]?[0-9.eE]*(?:[eE][+-]?[0-9]+)?)\s*i\s*$)");
  static const std::regex real(R"(^\s*([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, full)) {
    double im = m[3].matched && m[3].length() ? to_num(m[3], "imaginary part") : 1.0;
    return {to_num(m[1], "real part"), m[2] == "-" ? -im : im};
  }
  if (std::regex_match(s, m, real)) return {to_num(m[1], "number"), 0.0};
  if (std::regex_match(s, m, imag)) {
    std::string v = m[1];
    double im = v.empty() || v == "+" ? 1.0 : v == "-" ? -1.0 : to_num(v, "imaginary part");
    return {0.0, im};
  }
  throw js::DomainError("cannot parse complex number '" + s + "'");
}

js::SpectralArg parse_z(const std::string& s) {
  auto at = s.find('@');
  js::cplx v = parse_complex(s.substr(0, at));
  if (at == std::string::npos) return js::SpectralArg::interior(v);
  std::string side = s.substr(at + 1);
  if (v.imag() != 0.0) throw js::DomainError("--z " + s + ": a side tag needs a real value");
  if (side == "+" || side == "plus") return js::SpectralArg::plus(v.real());
  if (side == "-" || side == "minus") return js::SpectralArg::minus(v.real());
  throw js::DomainError("--z " + s + ": side must be @+ or @-");
}

std::vector<double> parse_grid(const std::string& s) {
  auto p1 = s.find(':'), p2 = s.find(':', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos) throw js::DomainError("--grid must be lo:hi:count, got '" + s + "'");
  double lo = to_num(s.substr(0, p1), "grid start"), hi = to_num(s.substr(p1 + 1, p2 - p1 - 1), "grid end");
  double cnt = to_num(s.substr(p2 + 1), "grid count");
  if (cnt < 1 || cnt != std::floor(cnt) || cnt > 1e7) throw js::DomainError("--grid count must be a positive integer");
  if (hi < lo) throw js::DomainError("--grid needs lo <= hi");
  int n = static_cast<int>(cnt);
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return g;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    int v = static_cast<int>(to_num(s, "order"));
    return {v, v};
  }
  return {static_cast<int>(to_num(s.substr(0, dots), "range start")),
          static_cast<int>(to_num(s.substr(dots + 2), "range end"))};
}

std::vector<long long> parse_int_list(const std::string& s) {
  std::vector<long long> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(static_cast<long long>(to_num(tok, "integer")));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

nlohmann::json complex_json(js::cplx v) { return {{"re", v.real()}, {"im", v.imag()}}; }

nlohmann::json report_to_json(const js::RegimeReport& r) {
  nlohmann::json j;
  j["regime"] = js::to_string(r.regime);
  j["betaInf"] = r.betaInf ? nlohmann::json(*r.betaInf) : nlohmann::json(nullptr);
  j["carleman"] = r.carleman;
  j["N0"] = r.N0;
  j["epsMargin"] = r.epsMargin;
  j["rho0"] = r.rho0;
  j["aInf"] = r.aInf;
  j["bInf"] = r.bInf;
  j["exponent"] = r.exponent;
  j["heuristics"] = r.heuristics;
  return j;
}

}  // namespace jscli
