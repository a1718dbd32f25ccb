#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "qgdd/bigint.hpp"
#include "qgdd/field.hpp"
#include "qgdd/linalg.hpp"

namespace qgdd {

class Spread;

/// Number of m-dimensional subspaces of GF(q)^v; 0 if m < 0 or m > v.
BigInt gaussian_binomial(unsigned v, int m, std::uint64_t q);

/// Bijection between the k-subspaces of GF(q)^v and [0, size()).
///
/// Subspaces are grouped by pivot pattern (patterns in colex order); within a
/// pattern the free entries of the canonical basis are read as a base-q number,
/// first free entry least significant. rank() and unrank() are inverse.
class GrassmannIndex {
 public:
  /// Throws TooLarge if the Grassmannian has more than 2^62 elements.
  GrassmannIndex(unsigned q, unsigned v, unsigned k);

  unsigned q() const noexcept { return q_; }
  unsigned ambient() const noexcept { return v_; }
  unsigned dim() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return offsets_.back(); }

  std::uint64_t rank(const Subspace& u) const;
  Subspace unrank(std::uint64_t r) const;

  std::size_t pattern_count() const noexcept { return offsets_.size() - 1; }
  std::uint64_t pattern_offset(std::size_t i) const noexcept { return offsets_[i]; }
  std::vector<unsigned> pattern(std::size_t i) const;
  std::size_t pattern_index(std::span<const unsigned> pivots) const noexcept;

 private:
  unsigned free_count(std::span<const unsigned> pivots) const noexcept;

  unsigned q_, v_, k_;
  std::vector<std::vector<std::uint64_t>> binom_;
  std::vector<std::uint64_t> offsets_;
  std::vector<Word> qpow_;
};

/// Optional restriction on enumerated subspaces.
struct NoConstraint {};
struct ThroughSubspace {
  Subspace fixed;
};
struct FatOnly {
  const Field* ext = nullptr;  // GF(q^g)
};
struct ScatteredWrt {
  const Spread* spread = nullptr;
};
using Constraint = std::variant<NoConstraint, ThroughSubspace, FatOnly, ScatteredWrt>;

/// Lazy single-consumer stream over the k-subspaces of GF(q)^v that satisfy a
/// constraint, in GrassmannIndex order. A rank window [begin, end) lets several
/// workers enumerate disjoint chunks.
class GrassmannIter {
 public:
  GrassmannIter(unsigned q, unsigned v, unsigned k, Constraint c = NoConstraint{});
  GrassmannIter(const GrassmannIndex& index, Constraint c, std::uint64_t begin, std::uint64_t end);
  GrassmannIter(const GrassmannIter&) = delete;
  GrassmannIter& operator=(const GrassmannIter&) = delete;

  std::optional<Subspace> next();

 private:
  void load_pattern();
  bool accept(const Subspace& u) const;

  std::optional<GrassmannIndex> owned_;
  const GrassmannIndex* index_;
  Constraint constraint_;
  std::uint64_t pos_, end_;
  std::size_t pattern_ = 0;
  std::uint64_t pattern_end_ = 0;
  std::vector<unsigned> pivots_;
  std::vector<std::pair<unsigned, Word>> free_;  // (row, q^column)
};

/// Streams larger than this are not materialised unless explicitly allowed.
inline constexpr std::uint64_t kMaterializeLimit = std::uint64_t{1} << 22;

std::vector<Subspace> enumerate_k_subspaces(unsigned q, unsigned v, unsigned k,
                                            Constraint c = NoConstraint{}, bool allow_large = false);

/// GF(q)-subspace of GF(q^g)^s whose basis stays independent over GF(q^g).
bool is_fat(const Subspace& u, const Field& ext);
/// Rank over GF(q^g) of the unflattened basis of U.
unsigned ext_rank(const Subspace& u, const Field& ext);

/// Meets every spread element in dimension at most 1.
bool is_scattered(const Subspace& u, const Spread& spread);

}  // namespace qgdd
