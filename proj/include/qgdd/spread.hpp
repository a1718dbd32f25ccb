#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qgdd/field.hpp"
#include "qgdd/linalg.hpp"

namespace qgdd {

/// A (g-1)-spread of GF(q)^v: g-dimensional subspaces partitioning the points.
///
/// Elements are kept sorted by canonical encoding, so indices are stable. The
/// point -> element map is a dense array for q^v <= 2^24 and a hash map above.
class Spread {
 public:
  static constexpr std::uint64_t kDenseLookupLimit = std::uint64_t{1} << 24;

  /// Throws NotAPartition unless the elements have equal dimension and cover
  /// every point exactly once.
  static Spread from_elements(unsigned q, unsigned v, std::vector<Subspace> elements);

  unsigned q() const noexcept { return q_; }
  unsigned ambient() const noexcept { return v_; }
  unsigned element_dim() const noexcept { return g_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Subspace>& elements() const noexcept { return elements_; }
  const Subspace& operator[](std::size_t i) const noexcept { return elements_[i]; }

  /// Index of the element containing the nonzero vector x.
  std::size_t element_of(Word x) const;
  std::size_t element_of(const Subspace& point) const;

  /// Unchecked lookup of a normalised nonzero vector.
  std::uint32_t lookup(Word normalized) const noexcept {
    if (!dense_.empty()) return dense_[normalized];
    return sparse_.find(normalized)->second;
  }

  /// True iff the 2-subspace lies inside a spread element.
  bool covers_line(const Subspace& line) const;

 private:
  Spread() = default;

  unsigned q_ = 2, v_ = 0, g_ = 0;
  std::vector<Subspace> elements_;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<Word, std::uint32_t> sparse_;
};

/// The 1-dimensional GF(q^g)-subspaces of GF(q^g)^s, flattened over GF(q).
/// `ext` is GF(q^g); its primitive element fixes the basis (1, a, ..., a^(g-1)).
Spread desarguesian_spread(const Field& ext, unsigned s);
/// Same, with the default primitive polynomial for GF(q^g).
Spread desarguesian_spread(unsigned q, unsigned g, unsigned s);

/// Closure of `seed` under repeated application of `generator`. Throws
/// NotAPartition unless the closure is a spread with `expected_size` elements.
Spread spread_from_orbit(const Subspace& seed, const Matrix& generator, std::size_t expected_size);

/// For all elements U, W and every element X: X lies in <U,W> or meets it trivially.
bool is_normal(const Spread& spread);

}  // namespace qgdd
