#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "mgt/algebra.hpp"

using namespace mgt;

namespace {

// Independent oracle: repeatedly scan for an adjacent inverse pair and erase.
std::vector<Letter> naive_reduce(std::vector<Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

std::vector<Letter> random_raw(std::mt19937& rng, int alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, alphabet - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Letter> w(len(rng));
  for (Letter& l : w) l = {gen(rng), sign(rng) ? 1 : -1};
  return w;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t d, int lo, int hi) {
  std::uniform_int_distribution<int> entry(lo, hi);
  IntMatrix m(d, d);
  for (;;) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = entry(rng);
    if (m.determinant() != 0) return m;
  }
}

}  // namespace

TEST_CASE("free_reduce basics") {
  CHECK(free_reduce({{0, 1}, {0, -1}}, 1).empty());
  FreeWord w = free_reduce({{0, 1}, {1, 1}, {1, -1}, {0, 1}}, 2);
  CHECK(w.letters() == std::vector<Letter>{{0, 1}, {0, 1}});
  CHECK_THROWS_AS(free_reduce({{3, 1}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(free_reduce({{0, 2}}, 2), std::invalid_argument);
}

TEST_CASE("free_reduce agrees with naive reducer and cancels inverses") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 10'000; ++trial) {
    auto raw = random_raw(rng, 3, 64);
    FreeWord w = free_reduce(raw, 3);
    CHECK(w.letters() == naive_reduce(raw));
    CHECK(w.length() <= raw.size());
    CHECK((w * w.inverse()).empty());
    // idempotent
    CHECK(free_reduce(w.letters(), 3) == w);
  }
}

TEST_CASE("free word concatenation inverse law") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    FreeWord u = free_reduce(random_raw(rng, 2, 20), 2);
    FreeWord v = free_reduce(random_raw(rng, 2, 20), 2);
    CHECK(((u * v) * (v.inverse() * u.inverse())).empty());
  }
}

TEST_CASE("hermite normal form: fixed cases") {
  HnfResult id = hermite_normal_form(IntMatrix::identity(3));
  CHECK(id.h == IntMatrix::identity(3));
  CHECK(id.u == IntMatrix::identity(3));

  IntMatrix row(1, 2);
  row(0, 0) = 2;
  row(0, 1) = 3;
  HnfResult r = hermite_normal_form(row);
  CHECK(r.h(0, 0) == 1);
  CHECK(r.h(0, 1) == 0);
}

TEST_CASE("hermite normal form: random reconstruction and unimodularity") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 500; ++trial) {
    IntMatrix m = random_matrix(rng, 2, -5, 5);
    HnfResult res = hermite_normal_form(m);
    CHECK(m * res.u == res.h);
    Int du = res.u.determinant();
    CHECK((du == 1 || du == -1));
    // lower triangular, positive pivots, reduced off-diagonal
    CHECK(res.h(0, 1) == 0);
    CHECK(res.h(0, 0) > 0);
    CHECK(res.h(1, 1) > 0);
    CHECK(res.h(1, 0) >= 0);
    CHECK(res.h(1, 0) < res.h(1, 1));
  }
}

TEST_CASE("hermite normal form: invariant under right unimodular action") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m = random_matrix(rng, 2, -4, 4);
    // random unimodular: product of elementary column operations
    IntMatrix t = IntMatrix::identity(2);
    std::uniform_int_distribution<int> coin(0, 2), shear(-3, 3);
    for (int step = 0; step < 4; ++step) {
      switch (coin(rng)) {
        case 0: t.swap_cols(0, 1); break;
        case 1: t.negate_col(0); break;
        default: t.add_col(1, 0, shear(rng)); break;
      }
    }
    CHECK(hermite_normal_form(m).h == hermite_normal_form(m * t).h);
  }
}

TEST_CASE("lattice membership: diagonal and scalar cases") {
  Monomorphism two(IntMatrix::from_rows({{2}}));
  auto hit = lattice_membership(two, {Int(4)});
  REQUIRE(hit.has_value());
  CHECK((*hit)[0] == 2);
  CHECK_FALSE(lattice_membership(two, {Int(3)}).has_value());

  Monomorphism diag(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  auto hit2 = lattice_membership(diag, {Int(2), Int(3)});
  REQUIRE(hit2.has_value());
  CHECK((*hit2)[0] == 1);
  CHECK((*hit2)[1] == 1);
}

TEST_CASE("lattice membership: exact round trip") {
  std::mt19937 rng(31415);
  std::uniform_int_distribution<int> entry(-7, 7);
  for (int trial = 0; trial < 500; ++trial) {
    Monomorphism l(random_matrix(rng, 2, -5, 5));
    LatticeVector x{Int(entry(rng)), Int(entry(rng))};
    auto back = lattice_membership(l, l.apply(x));
    REQUIRE(back.has_value());
    CHECK(*back == x);
  }
}

TEST_CASE("canonical residue: scalar cases") {
  Monomorphism two(IntMatrix::from_rows({{2}}));
  Residue r = canonical_residue(two, {Int(5)});
  CHECK(r.r[0] == 1);
  CHECK(r.x[0] == 2);

  Monomorphism three(IntMatrix::from_rows({{3}}));
  Residue r2 = canonical_residue(three, {Int(-1)});
  CHECK(r2.r[0] == 2);
  CHECK(r2.x[0] == -1);
}

TEST_CASE("canonical residue: coset invariance and residue count") {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    Monomorphism l(random_matrix(rng, 2, -4, 4));
    LatticeVector v{Int(entry(rng)), Int(entry(rng))};
    LatticeVector w{Int(entry(rng)), Int(entry(rng))};
    Residue a = canonical_residue(l, v);
    Residue b = canonical_residue(l, add(v, l.apply(w)));
    CHECK(a.r == b.r);
    // reconstruction v = L x + r
    CHECK(add(l.apply(a.x), a.r) == v);
  }

  Monomorphism l(IntMatrix::from_rows({{2, 1}, {-1, 3}}));
  std::set<std::string> residues;
  for (int x = -12; x <= 12; ++x)
    for (int y = -12; y <= 12; ++y) {
      Residue r = canonical_residue(l, {Int(x), Int(y)});
      residues.insert(r.r[0].str() + "," + r.r[1].str());
    }
  Int det = abs(l.det());
  CHECK(Int(residues.size()) <= det);
}

TEST_CASE("monomorphism rejects singular matrices") {
  CHECK_THROWS_AS(Monomorphism(IntMatrix::from_rows({{2, 4}, {1, 2}})),
                  std::invalid_argument);
}
