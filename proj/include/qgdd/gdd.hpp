#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgdd/bigint.hpp"
#include "qgdd/grassmann.hpp"
#include "qgdd/linalg.hpp"
#include "qgdd/spread.hpp"

namespace qgdd {

struct GddParams {
  unsigned q = 2, v = 0, g = 0, k = 0;
  std::uint64_t lambda = 0;

  bool operator==(const GddParams&) const = default;
};

/// Spread plus a simple block set. The spread is shared because the dense
/// point lookup can be large.
struct GddInstance {
  GddParams params;
  std::shared_ptr<const Spread> spread;
  std::vector<Subspace> blocks;
};

struct VerificationReport {
  bool is_gdd = false;
  std::optional<std::uint64_t> lambda_observed;
  /// coverage count -> number of lines not covered by the spread
  std::map<std::uint64_t, std::uint64_t> line_histogram;
  /// At most kMaxWitnesses lines whose coverage differs from the most common one.
  std::vector<Subspace> offending_lines;

  std::uint64_t block_count = 0;
  std::uint64_t total_coverage = 0;  // sum of coverage over all lines
  /// Block count and per-point replication predicted from lambda_observed.
  std::optional<BigInt> expected_block_count;
  std::optional<BigInt> expected_replication;
  bool block_count_ok = false;
  bool replication_ok = false;
  std::map<std::uint64_t, std::uint64_t> replication_histogram;  // blocks through a point -> points

  static constexpr std::size_t kMaxWitnesses = 16;
};

/// Checks the coverage condition. Throws BlockDimensionMismatch, DuplicateBlocks,
/// or BlockMeetsGroupBadly (a block contains a line of some spread element).
VerificationReport verify(const GddInstance& instance);

/// Coverage counts of all lines by the given blocks, indexed by
/// GrassmannIndex(q, v, 2) rank.
std::vector<std::uint32_t> line_coverage(const GrassmannIndex& lines, const std::vector<Subspace>& blocks);

/// The 2-subspaces of a block, generated from a precomputed list of RREF
/// coefficient pairs; each result is already canonical.
class BlockLines {
 public:
  BlockLines(unsigned q, unsigned k);
  template <class F>
  void for_each(const Subspace& block, F&& f) const {
    const auto rows = block.rows();
    Word buf[2];
    for (const auto& [a, b] : pairs_) {
      buf[0] = combine_rows(rows, a, block.ambient());
      buf[1] = combine_rows(rows, b, block.ambient());
      f(Subspace::from_canonical(q_, block.ambient(), {buf[0], buf[1]}));
    }
  }
  std::size_t size() const noexcept { return pairs_.size(); }

 private:
  Word combine_rows(std::span<const Word> rows, Word coeffs, unsigned v) const noexcept;

  unsigned q_, k_;
  std::vector<std::pair<Word, Word>> pairs_;  // coefficient rows over GF(q)^k
};

BigInt lambda_max_k3(unsigned v, unsigned g, unsigned q);
/// Valid for the Desarguesian 1-spread only.
BigInt lambda_max_g2k4(unsigned v, unsigned q);

inline constexpr std::uint64_t kBruteForceGuard = std::uint64_t{1} << 23;

/// All k-subspaces scattered with respect to the spread, in GrassmannIndex order.
/// Throws TooLarge if the Grassmannian exceeds `guard`.
std::vector<Subspace> scattered_subspaces(const Spread& spread, unsigned k,
                                          std::uint64_t guard = kBruteForceGuard);

/// Coverage of the uncovered lines by all scattered k-subspaces if constant.
std::optional<std::uint64_t> lambda_max_bruteforce(const Spread& spread, unsigned k,
                                                   std::uint64_t guard = kBruteForceGuard);

/// The complete GDD: all scattered k-subspaces. Throws NoLambdaMax if their
/// coverage is not constant.
GddInstance complete_gdd(std::shared_ptr<const Spread> spread, unsigned k,
                         std::uint64_t guard = kBruteForceGuard);

/// Scattered k-subspaces not among the instance's blocks, with index lambda_max - lambda.
GddInstance supplementary(const GddInstance& instance, std::uint64_t guard = kBruteForceGuard);

/// Point multiset; keys are normalised point encodings.
struct PointMultiset {
  unsigned q = 2, v = 0;
  std::map<Word, std::uint64_t> weights;

  void add(const Subspace& u, std::uint64_t times = 1);
  std::uint64_t size() const noexcept;
  /// lambda - w(P) at every point; requires lambda >= max weight.
  PointMultiset complement(std::uint64_t lambda) const;
};

/// Largest r with #P == #(P meet H) mod q^r for every hyperplane H. The empty
/// multiset returns v - 1.
unsigned qr_divisibility(const PointMultiset& points);

}  // namespace qgdd
