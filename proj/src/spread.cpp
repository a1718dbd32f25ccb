#include "qgdd/spread.hpp"

#include <algorithm>
#include <limits>

#include "qgdd/error.hpp"

namespace qgdd {

namespace {
constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();
}

Spread Spread::from_elements(unsigned q, unsigned v, std::vector<Subspace> elements) {
  if (elements.empty()) throw Error(Errc::NotAPartition, "empty spread");
  const unsigned g = elements.front().dim();
  if (g == 0) throw Error(Errc::NotAPartition, "spread elements must be nonzero");
  for (const auto& e : elements)
    if (e.q() != q || e.ambient() != v || e.dim() != g)
      throw Error(Errc::NotAPartition, "spread elements differ in field, ambient or dimension");
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw Error(Errc::NotAPartition, "repeated spread element");
  if (point_count(q, g) * elements.size() != point_count(q, v))
    throw Error(Errc::NotAPartition, "element count does not partition the points");

  Spread s;
  s.q_ = q;
  s.v_ = v;
  s.g_ = g;
  const Word space = vec::pow_q(q, v);
  const bool dense = space <= kDenseLookupLimit;
  if (dense) s.dense_.assign(space, kUnassigned);
  else s.sparse_.reserve(point_count(q, v));
  for (std::uint32_t i = 0; i < elements.size(); ++i) {
    bool clash = false;
    for_each_point(elements[i], [&](Word x) {
      x = vec::normalize(x, q, v);
      if (dense) {
        if (s.dense_[x] != kUnassigned) clash = true;
        s.dense_[x] = i;
      } else if (!s.sparse_.emplace(x, i).second) {
        clash = true;
      }
    });
    if (clash) throw Error(Errc::NotAPartition, "spread elements overlap");
  }
  s.elements_ = std::move(elements);
  return s;
}

std::size_t Spread::element_of(Word x) const {
  if (x == 0 || x >= vec::pow_q(q_, v_))
    throw Error(Errc::AmbientMismatch, "vector is zero or outside the ambient space");
  return lookup(vec::normalize(x, q_, v_));
}

std::size_t Spread::element_of(const Subspace& point) const {
  if (point.q() != q_ || point.ambient() != v_ || point.dim() != 1)
    throw Error(Errc::AmbientMismatch, "not a point of the spread's ambient space");
  return lookup(point.rows()[0]);
}

bool Spread::covers_line(const Subspace& line) const {
  if (line.q() != q_ || line.ambient() != v_ || line.dim() != 2)
    throw Error(Errc::AmbientMismatch, "not a line of the spread's ambient space");
  return lookup(line.rows()[0]) == lookup(line.rows()[1]);
}

Spread desarguesian_spread(const Field& ext, unsigned s) {
  const unsigned q = ext.q(), g = ext.degree();
  if (s == 0) throw Error(Errc::InvalidArgument, "s must be positive");
  const unsigned v = g * s;
  if (v > 63 || vec::pow_q(q, v) > Spread::kDenseLookupLimit)
    throw Error(Errc::FieldTooLarge, "q^(gs) exceeds 2^24");
  const std::uint64_t big_q = ext.order();
  std::vector<Subspace> elements;
  ExtVector x{std::vector<Elem>(s, 0)};
  std::vector<Word> rows(g);
  for (unsigned lead = 0; lead < s; ++lead) {
    const std::uint64_t tails = vec::pow_q(static_cast<unsigned>(big_q), s - 1 - lead);
    for (std::uint64_t t = 0; t < tails; ++t) {
      std::fill(x.coords.begin(), x.coords.end(), 0);
      x.coords[lead] = 1;
      std::uint64_t rest = t;
      for (unsigned j = lead + 1; j < s; ++j) {
        x.coords[j] = static_cast<Elem>(rest % big_q);
        rest /= big_q;
      }
      for (unsigned i = 0; i < g; ++i) {
        ExtVector y{x.coords};
        const Elem c = ext.exp(i);
        for (auto& e : y.coords) e = ext.mul(c, e);
        rows[i] = flatten_encoding(ext, y);
      }
      elements.push_back(Subspace::span(q, v, rows));
    }
  }
  return Spread::from_elements(q, v, std::move(elements));
}

Spread desarguesian_spread(unsigned q, unsigned g, unsigned s) {
  return desarguesian_spread(Field::create(q, g), s);
}

Spread spread_from_orbit(const Subspace& seed, const Matrix& generator, std::size_t expected_size) {
  if (generator.q() != seed.q() || generator.cols() != seed.ambient() ||
      generator.rows_count() != seed.ambient())
    throw Error(Errc::DimensionMismatch, "generator does not act on the seed's space");
  if (!generator.inverse()) throw Error(Errc::InvalidArgument, "generator is singular");
  std::vector<Subspace> orbit{seed};
  Subspace cur = apply(generator, seed);
  while (cur != seed && orbit.size() <= expected_size) {
    orbit.push_back(cur);
    cur = apply(generator, cur);
  }
  if (orbit.size() != expected_size)
    throw Error(Errc::NotAPartition, "orbit of the seed has " + std::to_string(orbit.size()) +
                                         " elements, expected " + std::to_string(expected_size));
  return Spread::from_elements(seed.q(), seed.ambient(), std::move(orbit));
}

bool is_normal(const Spread& spread) {
  const std::size_t n = spread.size();
  const std::uint64_t per_element = point_count(spread.q(), spread.element_dim());
  std::vector<std::uint64_t> hits(n, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Subspace span = sum(spread[i], spread[j]);
      touched.clear();
      for_each_point(span, [&](Word x) {
        const auto e = spread.lookup(vec::normalize(x, spread.q(), spread.ambient()));
        if (hits[e]++ == 0) touched.push_back(e);
      });
      bool ok = true;
      for (auto e : touched) {
        ok = ok && hits[e] == per_element;
        hits[e] = 0;
      }
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace qgdd
