#include <doctest.h>

#include "circuitlab/rng.hpp"

using namespace circuitlab;

TEST_SUITE_BEGIN("rng");

TEST_CASE("identical stream address gives identical draws") {
  RngStream a(42, 7, "gates");
  RngStream b(42, 7, "gates");
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different purpose or realization decorrelates") {
  RngStream a(42, 7, "gates");
  RngStream b(42, 7, "measurements");
  RngStream c(42, 8, "gates");
  int equal_ab = 0, equal_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64();
    equal_ab += x == b.next_u64();
    equal_ac += x == c.next_u64();
  }
  CHECK(equal_ab == 0);
  CHECK(equal_ac == 0);
}

TEST_CASE("uniform_index stays in range and covers small sets") {
  RngStream r(1, 0, "t");
  bool seen[5] = {};
  for (int i = 0; i < 500; ++i) {
    const auto v = r.uniform_index(5);
    REQUIRE(v < 5);
    seen[v] = true;
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("normal moments are roughly standard") {
  RngStream r(3, 0, "n");
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sum2 += x * x;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sum2 / n - 1.0) < 0.03);
}

TEST_CASE("exponential has the right mean") {
  RngStream r(5, 0, "e");
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += r.exponential(2.0);
  CHECK(std::abs(sum / n - 0.5) < 0.02);
}

TEST_CASE("split streams are reproducible") {
  RngStream a(9, 1, "parent");
  RngStream b(9, 1, "parent");
  RngStream as = a.split(3, "child");
  RngStream bs = b.split(3, "child");
  for (int i = 0; i < 100; ++i) CHECK(as.next_u64() == bs.next_u64());
}

TEST_SUITE_END();
