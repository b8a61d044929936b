#pragma once
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "js/recurrence.hpp"
#include "js/uniformization.hpp"

namespace jscli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits, '.' separator, independent of the locale.
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& t);
nlohmann::json table_to_json(const Table& t);

/// "re+imi", "re-imi", "imi" or "re", optionally followed by "@+" or "@-".
js::SpectralArg parse_z(const std::string& s);
js::cplx parse_complex(const std::string& s);
/// "lo:hi:count", count >= 1 points with both ends included.
std::vector<double> parse_grid(const std::string& s);
/// "a..b" or a single integer.
std::pair<int, int> parse_range(const std::string& s);
std::vector<long long> parse_int_list(const std::string& s);

nlohmann::json report_to_json(const js::RegimeReport& r);
nlohmann::json complex_json(js::cplx v);

}  // namespace jscli
