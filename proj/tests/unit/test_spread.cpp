#include "doctest.h"
#include "helpers.hpp"
#include "qgdd/error.hpp"
#include "qgdd/grassmann.hpp"
#include "qgdd/params.hpp"
#include "qgdd/spread.hpp"

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

}  // namespace

TEST_CASE("desarguesian spreads partition the points") {
  for (auto [q, g, s] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{
           {2, 2, 3}, {2, 3, 2}, {3, 2, 3}, {2, 2, 4}, {2, 4, 2}, {5, 2, 2}, {2, 3, 3}}) {
    CAPTURE(q);
    CAPTURE(g);
    CAPTURE(s);
    const auto spread = desarguesian_spread(q, g, s);
    CHECK(spread.size() == *group_count(q, g * s, g));
    CHECK(spread.element_dim() == g);
    CHECK(is_normal(spread));
    // Every point lies in the element reported for it.
    GrassmannIter it(q, g * s, 1);
    while (auto p = it.next()) CHECK(contains(spread[spread.element_of(*p)], *p));
  }
}

TEST_CASE("line coverage by the spread") {
  const auto spread = desarguesian_spread(2, 2, 3);
  std::uint64_t covered = 0, total = 0;
  GrassmannIter it(2, 6, 2);
  while (auto line = it.next()) {
    ++total;
    covered += spread.covers_line(*line);
  }
  CHECK(total == 651);
  CHECK(covered == 21);
  CHECK(total - covered == 630);
}

TEST_CASE("spread validation") {
  const auto good = desarguesian_spread(2, 2, 2);
  auto elements = good.elements();
  CHECK(Spread::from_elements(2, 4, elements).elements() == good.elements());

  auto dup = elements;
  dup.back() = dup.front();
  CHECK(code_of([&] { Spread::from_elements(2, 4, dup); }) == Errc::NotAPartition);

  auto short_list = elements;
  short_list.pop_back();
  CHECK(code_of([&] { Spread::from_elements(2, 4, short_list); }) == Errc::NotAPartition);

  // Replace an element with a line meeting another element.
  auto overlap = elements;
  overlap.back() = sum(Subspace::span(2, 4, elements[0].rows().subspan(0, 1)),
                       Subspace::span(2, 4, elements[1].rows().subspan(0, 1)));
  CHECK(code_of([&] { Spread::from_elements(2, 4, overlap); }) == Errc::NotAPartition);

  auto mixed = elements;
  mixed.back() = Subspace::span(2, 4, std::vector<Word>{1});
  CHECK(code_of([&] { Spread::from_elements(2, 4, mixed); }) == Errc::NotAPartition);

  CHECK(code_of([&] { good.element_of(Subspace::span(2, 5, std::vector<Word>{1})); }) == Errc::AmbientMismatch);
  CHECK(code_of([&] { desarguesian_spread(2, 5, 5); }) == Errc::FieldTooLarge);
}

TEST_CASE("spread from a Singer orbit") {
  const Field ext = Field::create(2, 6);
  const auto sigma = singer_generator(ext);
  const auto seed = Subspace::span(2, 6, std::vector<Word>{1, 14});
  const auto spread = spread_from_orbit(seed, sigma, 21);
  CHECK(spread.size() == 21);
  CHECK(is_normal(spread));
  CHECK(spread.elements() == singer_spread(ext, 2).elements());
  CHECK(code_of([&] { spread_from_orbit(seed, sigma, 20); }) == Errc::NotAPartition);
  // A line that is not a subfield coset does not give a spread.
  CHECK(code_of([&] { spread_from_orbit(Subspace::span(2, 6, std::vector<Word>{1, 2}), sigma, 21); }) ==
        Errc::NotAPartition);
}
