#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qgdd/construct.hpp"
#include "qgdd/error.hpp"
#include "qgdd/grassmann.hpp"
#include "qgdd/spread.hpp"

using namespace qgdd;

TEST_CASE("gaussian binomials") {
  // Frozen from tests/oracles/oracle_q2.py.
  const std::vector<std::vector<int>> q2 = {
      {1, 1}, {1, 3, 1}, {1, 7, 7, 1}, {1, 15, 35, 15, 1}, {1, 31, 155, 155, 31, 1}, {1, 63, 651, 1395, 651, 63, 1}};
  for (unsigned v = 1; v <= 6; ++v)
    for (unsigned m = 0; m <= v; ++m) CHECK(gaussian_binomial(v, static_cast<int>(m), 2) == q2[v - 1][m]);
  CHECK(gaussian_binomial(6, 3, 3) == 33880);
  CHECK(gaussian_binomial(4, -1, 2) == 0);
  CHECK(gaussian_binomial(4, 5, 2) == 0);
  CHECK(gaussian_binomial(14, 7, 2) > BigInt(1) << 40);
}

TEST_CASE("rank and unrank are inverse bijections") {
  for (auto [q, v, k] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{
           {2, 6, 3}, {2, 5, 2}, {3, 4, 2}, {5, 3, 1}, {3, 5, 3}, {2, 4, 0}, {2, 4, 4}}) {
    CAPTURE(q);
    CAPTURE(v);
    CAPTURE(k);
    const GrassmannIndex ix(q, v, k);
    REQUIRE(ix.size() == gaussian_binomial(v, static_cast<int>(k), q));
    std::set<Subspace> seen;
    for (std::uint64_t r = 0; r < ix.size(); ++r) {
      const auto u = ix.unrank(r);
      CHECK(u.dim() == k);
      CHECK(Subspace::span(q, v, u.rows()) == u);
      CHECK(ix.rank(u) == r);
      seen.insert(u);
    }
    CHECK(seen.size() == ix.size());
  }
}

TEST_CASE("rank is independent of the enumeration path") {
  std::mt19937_64 rng(17);
  const GrassmannIndex ix(3, 7, 3);
  for (int t = 0; t < 300; ++t) {
    const auto u = test::random_subspace(rng, 3, 7, 3);
    CHECK(ix.unrank(ix.rank(u)) == u);
  }
  CHECK_THROWS_AS(ix.unrank(ix.size()), Error);
  CHECK_THROWS_AS(ix.rank(test::random_subspace(rng, 3, 7, 2)), Error);
}

TEST_CASE("iterator windows partition the enumeration") {
  const GrassmannIndex ix(2, 7, 3);
  const auto all = enumerate_k_subspaces(2, 7, 3);
  REQUIRE(all.size() == ix.size());
  for (std::uint64_t i = 0; i < all.size(); ++i) CHECK(ix.rank(all[i]) == i);
  std::vector<Subspace> joined;
  const std::uint64_t cuts[] = {0, 1, 500, 501, 7000, ix.size()};
  for (int c = 0; c + 1 < 6; ++c) {
    GrassmannIter it(ix, NoConstraint{}, cuts[c], cuts[c + 1]);
    while (auto u = it.next()) joined.push_back(*u);
  }
  CHECK(joined == all);
}

TEST_CASE("constrained enumeration") {
  const Subspace p = Subspace::span(2, 5, std::vector<Word>{3});
  const auto through = enumerate_k_subspaces(2, 5, 2, ThroughSubspace{p});
  CHECK(through.size() == gaussian_binomial(4, 1, 2));
  for (const auto& u : through) CHECK(contains(u, p));
  try {
    enumerate_k_subspaces(2, 6, 3, ScatteredWrt{nullptr});
    FAIL("expected ConstraintRequiresSpread");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConstraintRequiresSpread);
  }
  try {
    enumerate_k_subspaces(2, 14, 7);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooLarge);
  }
  CHECK_THROWS_AS(enumerate_k_subspaces(2, 3, 4), Error);
}

TEST_CASE("scattered count matches the oracle") {
  const auto spread = desarguesian_spread(2, 2, 3);
  const auto scattered = enumerate_k_subspaces(2, 6, 3, ScatteredWrt{&spread});
  CHECK(scattered.size() == 1080);
}

TEST_CASE("fat implies scattered, with equality for g = 2") {
  for (auto [q, g, s, k] : std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned>>{
           {2, 2, 3, 3}, {2, 2, 3, 2}, {3, 2, 3, 3}, {2, 2, 4, 3}, {2, 3, 2, 2}, {2, 3, 3, 3}}) {
    CAPTURE(q);
    CAPTURE(g);
    CAPTURE(s);
    CAPTURE(k);
    const Field ext = Field::create(q, g);
    const auto spread = desarguesian_spread(ext, s);
    std::uint64_t fat = 0, scattered = 0;
    GrassmannIter it(q, g * s, k);
    while (auto u = it.next()) {
      const bool f = is_fat(*u, ext);
      const bool sc = is_scattered(*u, spread);
      if (f) CHECK(sc);
      if (g == 2) CHECK(f == sc);
      fat += f;
      scattered += sc;
    }
    CHECK(fat == fat_count(q, g, s, k));
    if (g == 3 && k == 3) CHECK(scattered > fat);
  }
}

TEST_CASE("ext rank") {
  const Field ext = Field::create(2, 2);
  // Rows (1,0,0) and (a,0,0) over GF(4): one GF(4)-dimension.
  const auto u = Subspace::span(2, 6, std::vector<Word>{1, 2});
  CHECK(ext_rank(u, ext) == 1);
  CHECK_FALSE(is_fat(u, ext));
  CHECK_THROWS_AS(ext_rank(Subspace::span(2, 5, std::vector<Word>{1}), ext), Error);
}
