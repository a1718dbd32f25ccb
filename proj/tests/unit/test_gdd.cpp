#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qgdd/error.hpp"
#include "qgdd/gdd.hpp"
#include "qgdd/grassmann.hpp"
#include "qgdd/params.hpp"

using namespace qgdd;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return Errc::InvalidArgument;
}

std::shared_ptr<const Spread> line_spread_6() {
  return std::make_shared<const Spread>(desarguesian_spread(2, 2, 3));
}

}  // namespace

TEST_CASE("the reference design verifies") {
  const auto inst = test::reference_design();
  const auto r = verify(inst);
  CHECK(r.is_gdd);
  CHECK(r.lambda_observed == 2);
  CHECK(r.block_count == 180);
  CHECK(r.block_count_ok);
  CHECK(r.replication_ok);
  CHECK(r.line_histogram == std::map<std::uint64_t, std::uint64_t>{{2, 630}});
  CHECK(r.replication_histogram == std::map<std::uint64_t, std::uint64_t>{{20, 63}});
  CHECK(r.offending_lines.empty());
}

TEST_CASE("a deleted block shows up in the histogram") {
  auto inst = test::reference_design();
  inst.blocks.pop_back();
  const auto r = verify(inst);
  CHECK_FALSE(r.is_gdd);
  CHECK_FALSE(r.lambda_observed);
  CHECK(r.line_histogram == std::map<std::uint64_t, std::uint64_t>{{1, 7}, {2, 623}});
  CHECK(r.offending_lines.size() == 7);
}

TEST_CASE("double counting identities hold for arbitrary block sets") {
  const auto spread = line_spread_6();
  const auto scattered = scattered_subspaces(*spread, 3);
  REQUIRE(scattered.size() == 1080);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    GddInstance inst{{2, 6, 2, 3, 0}, spread, {}};
    for (const auto& b : scattered)
      if (rng() % 5 == 0) inst.blocks.push_back(b);
    const auto r = verify(inst);
    CHECK(r.total_coverage == r.block_count * 7);
    std::uint64_t by_lines = 0, lines = 0, by_points = 0, points = 0;
    for (auto [c, n] : r.line_histogram) by_lines += c * n, lines += n;
    for (auto [c, n] : r.replication_histogram) by_points += c * n, points += n;
    CHECK(by_lines == r.total_coverage);
    CHECK(lines == 630);
    CHECK(points == 63);
    CHECK(by_points == r.block_count * 7);
  }
}

TEST_CASE("verification errors") {
  const auto spread = test::SingerSetup{}.spread;
  GddInstance inst{{2, 6, 2, 3, 0}, spread, {Subspace::span(2, 6, std::vector<Word>{3, 16, 32})}};
  CHECK(verify(inst).block_count == 1);

  auto dup = inst;
  dup.blocks.push_back(dup.blocks.front());
  CHECK(code_of([&] { verify(dup); }) == Errc::DuplicateBlocks);

  auto wrong_dim = inst;
  wrong_dim.blocks.push_back(Subspace::span(2, 6, std::vector<Word>{1, 4}));
  CHECK(code_of([&] { verify(wrong_dim); }) == Errc::BlockDimensionMismatch);

  auto bad = inst;
  bad.blocks = {sum(spread->elements()[0], Subspace::span(2, 6, std::vector<Word>{spread->elements()[1].rows()[0]}))};
  CHECK(code_of([&] { verify(bad); }) == Errc::BlockMeetsGroupBadly);

  auto no_spread = inst;
  no_spread.spread.reset();
  CHECK(code_of([&] { verify(no_spread); }) == Errc::InvalidArgument);

  auto other = inst;
  other.spread = std::make_shared<const Spread>(desarguesian_spread(2, 2, 4));
  CHECK(code_of([&] { verify(other); }) == Errc::AmbientMismatch);
}

TEST_CASE("lambda_max closed forms match reference values") {
  CHECK(lambda_max_k3(6, 2, 2) == 12);
  CHECK(lambda_max_k3(6, 3, 2) == 6);
  CHECK(lambda_max_k3(8, 2, 2) == 60);
  CHECK(lambda_max_k3(8, 4, 2) == 42);
  CHECK(lambda_max_k3(9, 3, 2) == 118);
  CHECK(lambda_max_k3(10, 2, 2) == 252);
  CHECK(lambda_max_k3(10, 5, 2) == 210);
  CHECK(lambda_max_k3(12, 2, 2) == 1020);
  CHECK(lambda_max_k3(12, 3, 2) == 1014);
  CHECK(lambda_max_k3(12, 4, 2) == 1002);
  CHECK(lambda_max_k3(12, 6, 2) == 930);
  CHECK(lambda_max_k3(14, 2, 2) == 4092);
  CHECK(lambda_max_k3(14, 7, 2) == 3906);
  CHECK(lambda_max_g2k4(8, 2) == 480);
  CHECK(lambda_max_g2k4(10, 2) == 10080);
  CHECK(lambda_max_g2k4(12, 2) == 171360);
  CHECK(lambda_max_g2k4(14, 2) == 2782560);
  // q = 3
  CHECK(lambda_max_k3(6, 2, 3) == 36);
  CHECK(lambda_max_k3(6, 3, 3) == 24);
  CHECK(lambda_max_k3(8, 4, 3) == 312);
  CHECK(lambda_max_k3(9, 3, 3) == 1077);
  CHECK(lambda_max_k3(12, 4, 3) == 29472);
  CHECK(lambda_max_g2k4(8, 3) == 9720);
}

TEST_CASE("enumerated lambda_max agrees with the closed forms") {
  for (auto [q, g, s, k] : std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned>>{
           {2, 2, 3, 3}, {2, 3, 2, 3}, {3, 2, 3, 3}, {2, 2, 4, 3}, {2, 2, 4, 4}, {3, 3, 2, 3}}) {
    CAPTURE(q);
    CAPTURE(g);
    CAPTURE(s);
    CAPTURE(k);
    const auto spread = desarguesian_spread(q, g, s);
    const auto known = known_lambda_max(q, g * s, g, k).first;
    REQUIRE(known);
    CHECK(lambda_max_bruteforce(spread, k) == to_u64(*known));
  }
  const auto spread = desarguesian_spread(2, 2, 3);
  CHECK(code_of([&] { scattered_subspaces(spread, 3, 100); }) == Errc::TooLarge);
}

TEST_CASE("complete and supplementary designs") {
  const auto spread = line_spread_6();
  const auto complete = complete_gdd(spread, 3);
  CHECK(complete.params.lambda == 12);
  CHECK(complete.blocks.size() == 1080);
  CHECK(verify(complete).lambda_observed == 12);

  const auto sup = supplementary(test::reference_design());
  CHECK(sup.params.lambda == 10);
  CHECK(sup.blocks.size() == 900);
  const auto r = verify(sup);
  CHECK(r.is_gdd);
  CHECK(r.lambda_observed == 10);

  // Supplementing twice returns the original blocks.
  const auto back = supplementary(sup);
  CHECK(back.blocks == test::reference_design().blocks);
}

TEST_CASE("block lines are canonical and complete") {
  std::mt19937_64 rng(29);
  for (unsigned q : {2u, 3u, 5u})
    for (unsigned k : {2u, 3u, 4u}) {
      const BlockLines lines(q, k);
      CHECK(lines.size() == gaussian_binomial(k, 2, q));
      const auto block = test::random_subspace(rng, q, 6, k);
      std::set<Subspace> seen;
      lines.for_each(block, [&](const Subspace& l) {
        CHECK(Subspace::span(q, 6, l.rows()) == l);
        CHECK(contains(block, l));
        seen.insert(l);
      });
      CHECK(seen.size() == lines.size());
    }
}

TEST_CASE("point multisets of blocks are divisible") {
  std::mt19937_64 rng(31);
  for (unsigned q : {2u, 3u})
    for (int t = 0; t < 12; ++t) {
      const unsigned v = q == 2 ? 6 : 5;
      const unsigned k = 2 + rng() % 3;
      PointMultiset m{q, v, {}};
      const int n = 1 + rng() % 6;
      for (int i = 0; i < n; ++i) m.add(test::random_subspace(rng, q, v, k), 1 + rng() % 2);
      CAPTURE(q);
      CAPTURE(k);
      CHECK(qr_divisibility(m) >= k - 1);
      std::uint64_t top = 0;
      for (const auto& [p, w] : m.weights) top = std::max(top, w);
      const std::uint64_t lambda = top + rng() % 3;
      const auto comp = m.complement(lambda);
      CHECK(qr_divisibility(comp) >= k - 1);
      CHECK(comp.size() + m.size() == lambda * point_count(q, v));
    }
  PointMultiset single{2, 4, {}};
  single.add(Subspace::span(2, 4, std::vector<Word>{1}));
  CHECK(single.size() == 1);
  CHECK(qr_divisibility(single) == 0);
  PointMultiset whole{2, 4, {}};
  whole.add(Subspace::span(2, 4, std::vector<Word>{1, 2, 4, 8}));
  CHECK(qr_divisibility(whole) == 3);
  CHECK(qr_divisibility(PointMultiset{2, 4, {}}) == 3);
}

TEST_CASE("blocks of a design form a divisible multiset") {
  const auto inst = test::reference_design();
  PointMultiset m{2, 6, {}};
  for (const auto& b : inst.blocks) m.add(b);
  CHECK(m.size() == 180 * 7);
  CHECK(qr_divisibility(m) >= 2);
}
