#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qgdd/error.hpp"
#include "qgdd/grassmann.hpp"
#include "qgdd/km_search.hpp"

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

std::vector<Word> rows_of(const Matrix& m) { return {m.rows().begin(), m.rows().end()}; }

// A system with the given matrix and placeholder orbits.
KmSystem synthetic(const std::vector<std::vector<std::uint32_t>>& a) {
  KmSystem s;
  s.matrix = a;
  s.line_orbits.resize(a.size());
  s.block_orbits.resize(a.empty() ? 0 : a[0].size());
  return s;
}

std::set<std::vector<std::uint32_t>> brute_force(const std::vector<std::vector<std::uint32_t>>& a,
                                                 std::uint64_t lambda) {
  std::set<std::vector<std::uint32_t>> out;
  const std::size_t n = a[0].size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (const auto& row : a) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (mask >> j & 1) s += row[j];
      ok = ok && s == lambda;
    }
    if (!ok) continue;
    std::vector<std::uint32_t> sel;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) sel.push_back(static_cast<std::uint32_t>(j));
    out.insert(sel);
  }
  return out;
}

}  // namespace

TEST_CASE("Singer and Frobenius generators") {
  const Field ext = Field::create(2, 6);
  const auto sigma = singer_generator(ext);
  CHECK(rows_of(sigma) == std::vector<Word>{2, 4, 8, 16, 32, 27});
  CHECK(rows_of(sigma.pow(7)) == std::vector<Word>{54, 55, 53, 49, 57, 41});
  CHECK(sigma.pow(63).is_identity());
  CHECK_FALSE(sigma.pow(21).is_identity());
  const auto phi = frobenius_generator(ext);
  CHECK(phi.pow(6).is_identity());
  CHECK_FALSE(phi.pow(3).is_identity());
  // phi sigma phi^-1 = sigma^2
  CHECK(*phi.inverse() * sigma * phi == sigma.pow(2));
}

TEST_CASE("group parsing and closure") {
  const Field ext = Field::create(2, 6);
  CHECK(parse_group(ext, "sigma^7").order() == 9);
  CHECK(parse_group(ext, "sigma^21").order() == 3);
  CHECK(parse_group(ext, "sigma").order() == 63);
  CHECK(parse_group(ext, "sigma,phi").order() == 378);
  CHECK(parse_group(ext, "sigma^7, phi^2").order() == 27);
  CHECK(parse_group(ext, "1").order() == 1);
  CHECK(MatrixGroup::trivial(2, 6).order() == 1);
  for (const char* bad : {"tau", "sigma^", "sigma^x", "", "sigma,,phi"})
    CHECK(code_of([&] { parse_group(ext, bad); }) == Errc::InvalidArgument);
  const auto g = parse_group(ext, "sigma^7");
  for (const auto& a : g.elements())
    for (const auto& b : g.elements()) CHECK(std::binary_search(g.elements().begin(), g.elements().end(), a * b));
}

TEST_CASE("Singer spread and orbits") {
  const Field ext = Field::create(2, 6);
  const auto spread = singer_spread(ext, 2);
  CHECK(spread.size() == 21);
  CHECK(spread.elements()[0] == Subspace::span(2, 6, std::vector<Word>{1, 14}));
  const auto group = parse_group(ext, "sigma^7");
  CHECK(group.stabilizes(spread));
  CHECK(orbits(group, spread.elements()).size() == 7);

  const auto lines = enumerate_k_subspaces(2, 6, 2);
  std::vector<Subspace> free_lines;
  for (const auto& l : lines)
    if (!spread.covers_line(l)) free_lines.push_back(l);
  const auto line_orbits = orbits(group, free_lines, &spread);
  CHECK(line_orbits.size() == 70);
  for (const auto& o : line_orbits) {
    CHECK(o.length() == 9);
    CHECK(o.representative == o.members.front());
    CHECK(orbit_of(group, o.members.back()).members == o.members);
  }

  // A transvection does not preserve the spread.
  std::vector<Word> rows = {1 + 2, 2, 4, 8, 16, 32};
  const MatrixGroup shear(2, 6, {Matrix(2, 6, rows)});
  CHECK_FALSE(shear.stabilizes(spread));
  CHECK(code_of([&] { orbits(shear, free_lines, &spread); }) == Errc::GroupDoesNotStabilizeSpread);
}

TEST_CASE("Kramer-Mesner systems") {
  const Field ext = Field::create(2, 6);
  const auto spread = singer_spread(ext, 2);
  const auto sys = build_km_system(parse_group(ext, "sigma^7"), spread, 3);
  CHECK(sys.rows() == 70);
  CHECK(sys.cols() == 120);
  std::uint64_t blocks = 0;
  for (const auto& o : sys.block_orbits) blocks += o.length();
  CHECK(blocks == 1080);
  for (const auto& row : sys.matrix) {
    std::uint64_t s = 0;
    for (auto x : row) s += x;
    CHECK(s == 12);
  }
  const auto sys3 = build_km_system(parse_group(ext, "sigma^21"), singer_spread(ext, 3), 3);
  CHECK(sys3.rows() == 210);
  CHECK(sys3.cols() == 168);
}

TEST_CASE("exact solver finds every solution") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    const std::size_t rows = 2 + rng() % 4, cols = 4 + rng() % 10;
    std::vector<std::vector<std::uint32_t>> a(rows, std::vector<std::uint32_t>(cols));
    for (auto& r : a)
      for (auto& x : r) x = static_cast<std::uint32_t>(rng() % 3 == 0 ? rng() % 3 : 0);
    const std::uint64_t lambda = 1 + rng() % 3;
    const auto expected = brute_force(a, lambda);
    SolveOptions opt;
    opt.method = SolveMethod::Exact;
    opt.limit = 1 << 20;
    const auto got = solve_lambda_cover(synthetic(a), lambda, opt);
    CHECK(got.exhausted);
    CHECK(std::set<std::vector<std::uint32_t>>(got.selections.begin(), got.selections.end()) == expected);
    CHECK(got.selections.size() == expected.size());
  }
}

TEST_CASE("resumed search continues where it stopped") {
  std::mt19937_64 rng(43);
  std::vector<std::vector<std::uint32_t>> a(4, std::vector<std::uint32_t>(16));
  for (auto& r : a)
    for (auto& x : r) x = static_cast<std::uint32_t>(rng() % 2);
  const auto expected = brute_force(a, 3);
  REQUIRE(expected.size() > 2);
  const auto sys = synthetic(a);

  std::set<std::vector<std::uint32_t>> found;
  SolveOptions opt;
  opt.method = SolveMethod::Exact;
  opt.node_budget = 7;
  opt.limit = 1 << 20;
  for (int round = 0; round < 100000; ++round) {
    const auto r = solve_lambda_cover(sys, 3, opt);
    for (const auto& s : r.selections) CHECK(found.insert(s).second);
    if (r.exhausted) break;
    REQUIRE(r.state);
    opt.resume = r.state;
  }
  CHECK(found == expected);
}

TEST_CASE("solver on the Singer system") {
  const Field ext = Field::create(2, 6);
  const auto spread = std::make_shared<const Spread>(singer_spread(ext, 2));
  const auto sys = build_km_system(parse_group(ext, "sigma^7"), *spread, 3);
  for (auto method : {SolveMethod::Auto, SolveMethod::LocalSearch}) {
    SolveOptions opt;
    opt.method = method;
    const auto r = solve_lambda_cover(sys, 4, opt);
    REQUIRE(r.selections.size() == 1);
    GddInstance inst{{2, 6, 2, 3, 4}, spread, expand_selection(sys, r.selections[0])};
    CHECK(inst.blocks.size() == 360);
    CHECK(std::is_sorted(inst.blocks.begin(), inst.blocks.end()));
    CHECK(verify(inst).lambda_observed == 4);
  }
  // Row sums are 12, so lambda = 13 has no solution; the bound is found without search.
  SolveOptions opt;
  opt.method = SolveMethod::Exact;
  const auto none = solve_lambda_cover(sys, 13, opt);
  CHECK(none.selections.empty());
  CHECK(none.exhausted);
}

TEST_CASE("reconstruction from orbit generators") {
  const test::SingerSetup s;
  const auto inst = reconstruct_from_generators(s.group, s.spread, test::reference_generators());
  CHECK(inst.blocks.size() == 180);
  CHECK(inst.params.lambda == 2);
  CHECK(verify(inst).is_gdd);

  auto dependent = test::reference_generators();
  dependent[0] = {3, 3, 32};
  CHECK(code_of([&] { reconstruct_from_generators(s.group, s.spread, dependent); }) == Errc::DecodeError);
  auto out_of_range = test::reference_generators();
  out_of_range[0] = {64, 16, 32};
  CHECK(code_of([&] { reconstruct_from_generators(s.group, s.spread, out_of_range); }) == Errc::DecodeError);
  auto twice = test::reference_generators();
  twice.push_back(twice[0]);
  CHECK(code_of([&] { reconstruct_from_generators(s.group, s.spread, twice); }) == Errc::DuplicateBlocks);
}
