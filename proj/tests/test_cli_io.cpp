#include <doctest.h>

#include <cmath>
#include <sstream>

#include "io.hpp"
#include "js/errors.hpp"

using namespace jscli;

TEST_CASE("doubles round-trip through 17 digits") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("CSV follows RFC 4180") {
  Table t{"x", {"a", "b,c"}, {{1.5, std::string("say \"hi\"")}, {2LL, std::string("plain")}}};
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "a,\"b,c\"\r\n1.5,\"say \"\"hi\"\"\"\r\n2,plain\r\n");
}

TEST_CASE("spectral arguments") {
  auto z = parse_z("0.5-2i");
  CHECK(z.value == js::cplx(0.5, -2.0));
  CHECK(z.side == js::Side::Interior);
  CHECK(parse_z("0+1i").value == js::cplx(0.0, 1.0));
  CHECK(parse_z("i").value == js::cplx(0.0, 1.0));
  CHECK(parse_z("-3").value == js::cplx(-3.0, 0.0));
  CHECK(parse_z("1e-3+2.5e1i").value == js::cplx(1e-3, 25.0));
  auto s = parse_z("0.3@+");
  CHECK(s.side == js::Side::PlusI0);
  CHECK(parse_z("0.3@-").side == js::Side::MinusI0);
  CHECK_THROWS_AS(parse_z("0.3+1i@+"), js::DomainError);
  CHECK_THROWS_AS(parse_z("abc"), js::DomainError);
}

TEST_CASE("grids and ranges") {
  auto g = parse_grid("-0.99:0.99:199");
  CHECK(g.size() == 199);
  CHECK(g.front() == -0.99);
  CHECK(g.back() == doctest::Approx(0.99));
  CHECK(parse_grid("2:2:1") == std::vector<double>{2.0});
  CHECK_THROWS_AS(parse_grid("0:1"), js::DomainError);
  CHECK_THROWS_AS(parse_grid("1:0:5"), js::DomainError);
  CHECK_THROWS_AS(parse_grid("0:1:2.5"), js::DomainError);
  CHECK(parse_range("0..3") == std::pair<int, int>{0, 3});
  CHECK(parse_range("2") == std::pair<int, int>{2, 2});
  CHECK(parse_int_list("200,2000") == std::vector<long long>{200, 2000});
}
