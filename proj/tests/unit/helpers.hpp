#pragma once

#include <random>
#include <vector>

#include "qgdd/design_io.hpp"
#include "qgdd/km_search.hpp"

namespace qgdd::test {

// Block orbit generators of a (6,2,3,2)_2 design under <sigma^7>.
inline const RowList& reference_generators() {
  static const RowList gens = {{3, 16, 32},  {15, 16, 32}, {4, 8, 32},   {5, 8, 32},   {19, 24, 32},
                               {7, 24, 32},  {10, 4, 32},  {18, 28, 32}, {17, 20, 32}, {1, 28, 32},
                               {17, 10, 32}, {25, 2, 32},  {13, 6, 32},  {29, 30, 32}, {33, 12, 16},
                               {38, 40, 16}, {2, 36, 16},  {1, 36, 16},  {11, 12, 16}, {19, 20, 8}};
  return gens;
}

struct SingerSetup {
  Field ext = Field::create(2, 6);
  MatrixGroup group = parse_group(ext, "sigma^7");
  std::shared_ptr<const Spread> spread = std::make_shared<const Spread>(singer_spread(ext, 2));
};

inline GddInstance reference_design() {
  SingerSetup s;
  return reconstruct_from_generators(s.group, s.spread, reference_generators());
}

inline Word random_word(std::mt19937_64& rng, unsigned q, unsigned v) {
  return std::uniform_int_distribution<Word>(0, vec::pow_q(q, v) - 1)(rng);
}

inline std::vector<Word> random_rows(std::mt19937_64& rng, unsigned q, unsigned v, unsigned n) {
  std::vector<Word> rows(n);
  for (auto& r : rows) r = random_word(rng, q, v);
  return rows;
}

inline Subspace random_subspace(std::mt19937_64& rng, unsigned q, unsigned v, unsigned k) {
  for (;;) {
    auto u = Subspace::span(q, v, random_rows(rng, q, v, k));
    if (u.dim() == k) return u;
  }
}

}  // namespace qgdd::test
