#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "mgt/cayley.hpp"
#include "mgt/limit.hpp"

using namespace mgt;

TEST_CASE("ball sizes: free groups and the running example") {
  FreeGroupOracle f2(2);
  CHECK(enumerate_ball(f2, 0).size() == 1);
  CHECK(enumerate_ball(f2, 1).size() == 5);
  CHECK(enumerate_ball(f2, 2).size() == 17);
  CHECK(enumerate_ball(f2, 3).size() == 53);

  auto bs = make_baumslag_solitar(2, 3);
  HnnOracle bso(bs);
  CHECK(enumerate_ball(bso, 1).size() == 5);
  CHECK(enumerate_ball(bso, 2).size() == 17);

  FreeGroupOracle z(1);
  CHECK(enumerate_ball(z, 4).size() == 9);
}

TEST_CASE("ball structure invariants") {
  auto bs = make_baumslag_solitar(2, 3);
  HnnOracle bso(bs);
  CayleyBall b = enumerate_ball(bso, 3);

  // vertices sorted by (distance, key); root first
  CHECK(b.dist[0] == 0);
  CHECK(b.keys[0] == bso.identity_key());
  for (std::size_t v = 1; v < b.size(); ++v) {
    CHECK(b.dist[v - 1] <= b.dist[v]);
    if (b.dist[v - 1] == b.dist[v]) CHECK(b.keys[v - 1] < b.keys[v]);
  }
  // geodesic words evaluate to their vertex and have length dist
  for (std::size_t v = 0; v < b.size(); ++v) {
    CHECK(bso.evaluate(b.words[v]) == b.keys[v]);
    CHECK(b.words[v].length() == b.dist[v]);
  }
  // edges sorted, endpoints in range, consistent with the oracle
  CHECK(std::is_sorted(b.edges.begin(), b.edges.end()));
  for (const auto& e : b.edges) {
    CHECK(e.src < b.size());
    CHECK(e.dst < b.size());
    CHECK(bso.multiply_keys(b.keys[e.src], bso.generator_key(e.gen)) ==
          b.keys[e.dst]);
    CHECK(b.out(e.src, e.gen) == e.dst);
    CHECK(b.in(e.dst, e.gen) == e.src);
  }
  // completeness: an s-edge is present iff both endpoints are inside
  for (std::size_t v = 0; v < b.size(); ++v)
    for (std::size_t s = 0; s < bso.marking_size(); ++s) {
      std::string img = bso.multiply_keys(b.keys[v], bso.generator_key(s));
      auto idx = b.find(img);
      CHECK(b.out(v, s).has_value() == idx.has_value());
    }
}

TEST_CASE("budget exceedance throws") {
  FreeGroupOracle f2(2);
  CHECK_THROWS_AS(enumerate_ball(f2, 4, 10), BudgetExceeded);
}

TEST_CASE("isomorphism: reflexive, and F2 vs BS(2,3) up to radius 2 only") {
  FreeGroupOracle f2(2);
  auto bs = make_baumslag_solitar(2, 3);
  HnnOracle bso(bs);

  CayleyBall f2b = enumerate_ball(f2, 3);
  auto self = ball_isomorphic(f2b, f2b);
  REQUIRE(self.has_value());
  for (std::size_t v = 0; v < f2b.size(); ++v) CHECK((*self)[v] == v);

  CHECK(ball_isomorphic(enumerate_ball(f2, 2), enumerate_ball(bso, 2))
            .has_value());
  CHECK_FALSE(ball_isomorphic(f2b, enumerate_ball(bso, 3)).has_value());
  CHECK(max_common_radius(f2, bso, 6) == 2);

  // the radius-3 refutation: both t^-1 a^2 (distance 3) and a^3 (distance 3)
  // lie in the BS ball and the relation closes a t-edge between them; no such
  // chord exists in the tree.
  CayleyBall bsb = enumerate_ball(bso, 3);
  FreeWord u;  // t^-1 a^2
  u.push({1, -1});
  u.push({0, 1});
  u.push({0, 1});
  FreeWord w;  // a^3
  w.push({0, 1});
  w.push({0, 1});
  w.push({0, 1});
  auto src = bsb.find(bso.evaluate(u));
  auto dst = bsb.find(bso.evaluate(w));
  REQUIRE(src.has_value());
  REQUIRE(dst.has_value());
  CHECK(bsb.out(*src, 1) == *dst);  // generator 1 = t
  // count of edges differs from the tree ball at equal vertex count
  CHECK(bsb.size() == f2b.size());
  CHECK(bsb.edges.size() > f2b.edges.size());
}

TEST_CASE("isomorphism rejects mismatched markings") {
  FreeGroupOracle f1(1), f2(2);
  CHECK_THROWS_AS(
      ball_isomorphic(enumerate_ball(f1, 1), enumerate_ball(f2, 1)),
      std::invalid_argument);
}

TEST_CASE("max_common_radius: self comparison saturates") {
  auto bs = make_baumslag_solitar(2, 3);
  HnnOracle bso(bs);
  CHECK(max_common_radius(bso, bso, 3) == 3);
}

TEST_CASE("marked copies lambda^i and the limit oracle") {
  auto bs = make_baumslag_solitar(2, 3);
  LimitOracle limit(bs);

  // frozen: BS(2,3) agrees with its limit up to radius 3, not 4
  CHECK(max_common_radius(HnnOracle(bs, 0), limit, 4) == 3);

  auto rows = convergence_profile(bs, limit, 0, 3, 4);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].i == 0);
  CHECK(rows[0].r_star == 3);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].i == static_cast<unsigned>(k));
    CHECK(rows[k - 1].r_star <= rows[k].r_star);  // nondecreasing
  }
  CHECK(rows[1].r_star == 4);
}

TEST_CASE("dot export is deterministic and complete") {
  auto bs = make_baumslag_solitar(2, 3);
  HnnOracle bso(bs);
  CayleyBall b = enumerate_ball(bso, 2);
  std::string dot = export_dot(b, bso.generator_names());
  CHECK(export_dot(b, bso.generator_names()) == dot);
  CHECK(dot.find("digraph") != std::string::npos);
  // one line per edge
  std::size_t arrows = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos;
       p = dot.find("->", p + 2))
    ++arrows;
  CHECK(arrows == b.edges.size());
}

TEST_CASE("canonical traversal order is an isomorphism invariant") {
  FreeGroupOracle f2(2);
  auto bs = make_baumslag_solitar(2, 3);
  HnnOracle bso(bs);

  CayleyBall a = enumerate_ball(f2, 2);
  CayleyBall b = enumerate_ball(bso, 2);
  std::vector<std::size_t> oa = canonical_traversal_order(a);
  std::vector<std::size_t> ob = canonical_traversal_order(b);
  REQUIRE(oa.size() == a.size());
  REQUIRE(ob.size() == b.size());

  // a permutation with nondecreasing distances
  std::set<std::size_t> seen(oa.begin(), oa.end());
  CHECK(seen.size() == oa.size());
  for (std::size_t k = 1; k < oa.size(); ++k)
    CHECK(a.dist[oa[k - 1]] <= a.dist[oa[k]]);

  // the forced isomorphism sends position k of one order to position k of the
  // other
  auto iso = ball_isomorphic(a, b);
  REQUIRE(iso.has_value());
  for (std::size_t k = 0; k < oa.size(); ++k) CHECK((*iso)[oa[k]] == ob[k]);
}
