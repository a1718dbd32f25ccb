#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgdd/field.hpp"
#include "qgdd/gdd.hpp"
#include "qgdd/linalg.hpp"
#include "qgdd/spread.hpp"

namespace qgdd {

/// Multiplication by the primitive element of GF(q^v) in the basis 1, a, ..., a^(v-1):
/// row i is the encoding of a^(i+1).
Matrix singer_generator(const Field& ext);
/// x -> x^q in the same basis: row i is the encoding of a^(iq).
Matrix frobenius_generator(const Field& ext);

/// Group generated by invertible matrices. Elements are materialised on demand,
/// up to kMaxElements.
class MatrixGroup {
 public:
  static constexpr std::size_t kMaxElements = 1'000'000;

  MatrixGroup(unsigned q, unsigned v, std::vector<Matrix> generators);
  static MatrixGroup trivial(unsigned q, unsigned v);

  unsigned q() const noexcept { return q_; }
  unsigned ambient() const noexcept { return v_; }
  const std::vector<Matrix>& generators() const noexcept { return generators_; }

  /// Closure, sorted. Throws TooLarge above kMaxElements.
  const std::vector<Matrix>& elements() const;
  std::uint64_t order() const { return elements().size(); }

  /// Every generator maps every spread element onto a spread element.
  bool stabilizes(const Spread& spread) const;

 private:
  unsigned q_, v_;
  std::vector<Matrix> generators_;
  mutable std::optional<std::vector<Matrix>> elements_;
};

/// Parses "sigma^7", "sigma,phi^4", "sigma^21", or "1" for the trivial group;
/// sigma and phi are taken over `ext` = GF(q^v). Throws InvalidArgument.
MatrixGroup parse_group(const Field& ext, const std::string& spec);

/// The orbit of the subfield GF(q^g) of GF(q^v) under the Singer cycle.
Spread singer_spread(const Field& ext, unsigned g);

struct Orbit {
  Subspace representative;         // smallest member
  std::vector<Subspace> members;   // sorted
  std::uint64_t length() const noexcept { return members.size(); }
};

Orbit orbit_of(const MatrixGroup& group, const Subspace& u);

/// Partition of `objects` into orbits, sorted by representative. Objects are
/// assumed closed under the group. With a spread, throws
/// GroupDoesNotStabilizeSpread unless the group maps it onto itself.
std::vector<Orbit> orbits(const MatrixGroup& group, const std::vector<Subspace>& objects,
                          const Spread* spread = nullptr);

/// Kramer-Mesner system: entry (i, j) counts the blocks of block orbit j that
/// contain the representative of line orbit i.
struct KmSystem {
  GddParams params;  // lambda unused
  std::vector<Orbit> line_orbits;
  std::vector<Orbit> block_orbits;
  std::vector<std::vector<std::uint32_t>> matrix;

  std::size_t rows() const noexcept { return line_orbits.size(); }
  std::size_t cols() const noexcept { return block_orbits.size(); }
};

KmSystem build_km_system(const MatrixGroup& group, const Spread& spread, unsigned k,
                         std::uint64_t guard = kBruteForceGuard);

/// Position of a depth-first search, sufficient to continue it later.
struct SearchState {
  std::vector<std::pair<std::uint32_t, std::uint8_t>> path;  // (column, 0 = taken / 1 = skipped)
  bool backtrack_first = false;
  bool complemented = false;
};

enum class SolveMethod {
  Auto,         // backtracking slice, then tabu search, then backtracking again
  Exact,        // backtracking only
  LocalSearch,  // tabu search only
};

struct SolveOptions {
  std::size_t limit = 1;
  std::uint64_t node_budget = 100'000'000;  // nodes plus local search moves
  std::optional<SearchState> resume;
  SolveMethod method = SolveMethod::Auto;
  std::uint64_t exact_slice = 200'000;  // Auto: nodes before switching to local search
  std::uint64_t seed = 1;
};

struct SolveResult {
  std::vector<std::vector<std::uint32_t>> selections;  // chosen column indices, ascending
  bool exhausted = false;       // the whole tree was searched
  std::uint64_t nodes = 0;
  std::optional<SearchState> state;  // backtracking position when stopped early
  bool local_search = false;    // the selection came from tabu search
};

/// 0/1 vectors x with A x = lambda * 1. Backtracking branches on the row with
/// the fewest completions and scans columns by index; tabu search is seeded.
/// Both are deterministic, and every selection is checked exactly. Auto with
/// limit > 1 backtracks only.
SolveResult solve_lambda_cover(const KmSystem& system, std::uint64_t lambda, const SolveOptions& options = {});

/// Blocks of the chosen orbits, sorted.
std::vector<Subspace> expand_selection(const KmSystem& system, const std::vector<std::uint32_t>& selection);

/// Union of the orbits of the given block generators. lambda is derived from the
/// block count. Throws DecodeError, DuplicateBlocks, GroupDoesNotStabilizeSpread.
GddInstance reconstruct_from_generators(const MatrixGroup& group, std::shared_ptr<const Spread> spread,
                                        const std::vector<std::vector<Word>>& generators);

}  // namespace qgdd
