#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include "js/parallel.hpp"
#include "js/spectral.hpp"

using namespace js;

TEST_CASE("parallel and serial grid maps agree bit for bit") {
  auto c = CoeffSequence::stabilizing_power(0.3, 0.7);
  JostOptions o;
  o.strictTail = false;
  o.report = classify(c);
  std::vector<double> g;
  for (int i = 0; i < 24; ++i) g.push_back(-0.9 + 1.8 * i / 23.0);
  auto f = [&](double l) { return spectral_weight(c, l, o).tau; };
  auto a = grid_map(g, f, Exec::Serial);
  set_threads(3);
  auto b = grid_map(g, f, Exec::Parallel);
  set_threads(0);
  CHECK(a == b);
}

TEST_CASE("errors inside a grid map are rethrown") {
  std::vector<int> v = {1, 2, 3, 4};
  auto f = [](int x) {
    if (x == 3) throw std::runtime_error("three");
    return x;
  };
  CHECK_THROWS_AS(grid_map(v, f), std::runtime_error);
}

TEST_CASE("thread count") {
  set_threads(2);
  CHECK(thread_count() == 2);
  set_threads(0);
  CHECK(thread_count() >= 1);
}
