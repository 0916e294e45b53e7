#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mgt/growth.hpp"
#include "mgt/limit.hpp"

using namespace mgt;

TEST_CASE("free group growth: gamma(n) = 2 * 3^n - 1") {
  FreeGroupOracle f2(2);
  GrowthTable t = growth_table(f2, 6);
  REQUIRE(t.gamma.size() == 7);
  Int pow = 1;
  for (unsigned n = 0; n <= 6; ++n) {
    CHECK(t.gamma[n] == 2 * pow - 1);
    pow *= 3;
  }
  REQUIRE(t.roots.size() == 6);
  for (unsigned n = 1; n <= 6; ++n) {
    double expected = std::pow(2.0 * std::pow(3.0, n) - 1.0, 1.0 / n);
    CHECK(t.roots[n - 1] == doctest::Approx(expected).epsilon(1e-12));
  }
  // Fekete: the certified upper bound is the minimum root, here the last one
  CHECK(omega_upper(t) == t.roots.back());
  CHECK(omega_upper(t) > 3.0);  // the rate itself is 3
  CHECK(omega_ratio_heuristic(t) ==
        doctest::Approx(1457.0 / 485.0).epsilon(1e-12));
}

TEST_CASE("linear growth of Z") {
  FreeGroupOracle z(1);
  GrowthTable t = growth_table(z, 8);
  for (unsigned n = 0; n <= 8; ++n) CHECK(t.gamma[n] == 2 * n + 1);
  CHECK(omega_upper(t) == t.roots.back());
  CHECK(omega_upper(t) < 1.5);
}

TEST_CASE("prefix stability: a longer table extends a shorter one") {
  auto bs = make_baumslag_solitar(2, 3);
  HnnOracle bso(bs);
  GrowthTable shorter = growth_table(bso, 3);
  GrowthTable longer = growth_table(bso, 5);
  for (unsigned n = 0; n <= 3; ++n) CHECK(shorter.gamma[n] == longer.gamma[n]);
}

TEST_CASE("quotient chain F2 -> BS(2,3) -> limit is monotone") {
  FreeGroupOracle f2(2);
  auto bs = make_baumslag_solitar(2, 3);
  HnnOracle bso(bs);
  LimitOracle limit(bs);

  GrowthTable gf = growth_table(f2, 5);
  GrowthTable gb = growth_table(bso, 5);
  GrowthTable gl = growth_table(limit, 5);

  for (bool ok : quotient_growth_check(gf, gb)) CHECK(ok);
  for (bool ok : quotient_growth_check(gb, gl)) CHECK(ok);

  // the proper quotient is eventually strictly smaller
  CHECK(gb.gamma[5] < gf.gamma[5]);
  CHECK(gl.gamma[5] < gb.gamma[5]);
}

TEST_CASE("quotient check flags a violation and rejects bad markings") {
  // arguments reversed: the "quotient" grows faster from n = 4 on
  FreeGroupOracle f2(2);
  auto bs = make_baumslag_solitar(2, 3);
  HnnOracle bso(bs);
  std::vector<bool> flags =
      quotient_growth_check(growth_table(bso, 5), growth_table(f2, 5));
  bool all = true;
  for (bool ok : flags) all = all && ok;
  CHECK_FALSE(all);

  FreeGroupOracle z(1);
  CHECK_THROWS_AS(quotient_growth_check(growth_table(z, 2), growth_table(f2, 2)),
                  std::invalid_argument);
}
