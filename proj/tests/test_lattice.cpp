#include <doctest.h>

#include "support.hpp"
#include "weylns/error.hpp"
#include "weylns/lattice.hpp"

using namespace weylns;

TEST_CASE("fibral space rejects n below 3") {
  CHECK_THROWS_AS(FibralSpace(2), Error);
  try {
    FibralSpace bad(1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidParameters);
  }
}

TEST_CASE("gram agrees with the definition") {
  for (int n = 3; n <= 9; ++n) {
    const FibralSpace space(n);
    const auto g = oracle::gram(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(space.gram(i, j) == g[i][j]);
  }
}

TEST_CASE("fiber class spans the radical") {
  for (int n = 3; n <= 9; ++n) {
    const FibralSpace space(n);
    const auto f = FibralVector::fiber(space);
    oracle::Gen gen(static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < 50; ++trial) {
      const FibralVector x(space, gen.vector(n, -5, 5));
      CHECK(inner_product(f, x) == 0);
      CHECK(inner_product(x, x) <= 0);
    }
  }
}

TEST_CASE("inner product matches the oracle form") {
  oracle::Gen gen(11);
  for (int n = 3; n <= 8; ++n) {
    const auto g = oracle::gram(n);
    const FibralSpace space(n);
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = gen.vector(n, -6, 6), y = gen.vector(n, -6, 6);
      CHECK(inner_product(FibralVector(space, x), FibralVector(space, y)) == oracle::form(g, x, y));
    }
  }
}

TEST_CASE("vectors from different spaces do not mix") {
  const FibralVector a = FibralVector::basis(FibralSpace(3), 0);
  const FibralVector b = FibralVector::basis(FibralSpace(4), 0);
  CHECK_THROWS_AS(inner_product(a, b), Error);
  CHECK_THROWS_AS(a + b, Error);
}

TEST_CASE("arc roots") {
  const FibralSpace space(5);
  SUBCASE("support wraps around") {
    const ArcRoot a(space, 4, 3);
    CHECK(a.support() == std::vector<int>{4, 0, 1});
    CHECK(a.end() == 1);
    CHECK(a.contains(0));
    CHECK_FALSE(a.contains(2));
  }
  SUBCASE("lengths outside 1..n-1 are rejected") {
    CHECK_THROWS_AS(ArcRoot(space, 0, 0), Error);
    CHECK_THROWS_AS(ArcRoot(space, 0, 5), Error);
  }
  SUBCASE("arc_root(i, j) runs from i to j") {
    CHECK(arc_root(space, 3, 1) == ArcRoot(space, 3, 4));
    CHECK(arc_root(space, 2, 2) == ArcRoot(space, 2, 1));
  }
  SUBCASE("every arc is a root") {
    for (int n = 3; n <= 8; ++n)
      for (int s = 0; s < n; ++s)
        for (int l = 1; l < n; ++l) {
          const auto v = ArcRoot(FibralSpace(n), s, l).to_vector();
          CHECK(inner_product(v, v) == -2);
          CHECK(std::vector<Int>(v.coeffs().begin(), v.coeffs().end()) == oracle::arc(n, s, l));
        }
  }
}

TEST_CASE("reflection in a root") {
  oracle::Gen gen(3);
  for (int n = 3; n <= 7; ++n) {
    const FibralSpace space(n);
    const auto g = oracle::gram(n);
    for (int trial = 0; trial < 40; ++trial) {
      const auto root = ArcRoot(space, gen.index(n), 1 + gen.index(n - 1)).to_vector();
      const auto x = gen.vector(n, -4, 4);
      const auto got = reflect(root, FibralVector(space, x));
      const auto m = oracle::reflection(g, std::vector<Int>(root.coeffs().begin(), root.coeffs().end()));
      for (int i = 0; i < n; ++i) {
        Int expect = 0;
        for (int j = 0; j < n; ++j) expect += m[i][j] * x[j];
        CHECK(got[i] == expect);
      }
      CHECK(reflect(root, got) == FibralVector(space, x));
    }
  }
  const FibralSpace three(3);
  CHECK_THROWS_AS(reflect(FibralVector::fiber(three), FibralVector::basis(three, 0)), Error);
}

TEST_CASE("(-2)-vectors decompose as arc + rF") {
  const FibralSpace space(4);
  SUBCASE("frozen example") {
    const auto d = classify_minus_two(FibralVector(space, {3, 3, 2, 3}));
    REQUIRE(d);
    CHECK(d->arc == ArcRoot(space, 3, 3));
    CHECK(d->arc == arc_root(space, 3, 1));
    CHECK(d->r == 2);
  }
  SUBCASE("negative multiples of F") {
    const auto d = classify_minus_two(FibralVector(space, {-1, 0, -1, -1}));
    REQUIRE(d);
    CHECK(d->arc == ArcRoot(space, 1, 1));
    CHECK(d->r == -1);
  }
  SUBCASE("non-roots") {
    CHECK_FALSE(classify_minus_two(FibralVector(space, {1, 0, 1, 0})));
    CHECK_FALSE(classify_minus_two(FibralVector::fiber(space)));
    CHECK_FALSE(classify_minus_two(FibralVector(space, {0, 0, 0, 0})));
  }
  SUBCASE("round trip over random arcs and shifts") {
    oracle::Gen gen(99);
    for (int n = 3; n <= 9; ++n) {
      const FibralSpace sp(n);
      for (int trial = 0; trial < 60; ++trial) {
        const ArcRoot arc(sp, gen.index(n), 1 + gen.index(n - 1));
        const Int r = gen.integer(-20, 20);
        const auto v = arc.to_vector() + r * FibralVector::fiber(sp);
        const auto d = classify_minus_two(v);
        REQUIRE(d);
        CHECK(d->arc == arc);
        CHECK(d->r == r);
      }
    }
  }
}

TEST_CASE("render") {
  const FibralSpace space(5);
  CHECK(render(FibralVector(space, {2, 1, 0, 0, -3})) == "2·v0 + 1·v1 - 3·v4");
  CHECK(render(FibralVector(space, {0, 0, 0, 0, 0})) == "0");
  CHECK(render(FibralVector(space, {0, -1, 0, 0, 0}), 'w') == "-1·w1");
}
