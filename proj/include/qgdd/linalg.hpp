#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qgdd {

/// A row vector over GF(q) carried as its base-q integer encoding:
/// digit j (little-endian) is the entry in column j. For q = 2 this is the
/// bit-packed row.
using Word = std::uint64_t;

/// Largest supported prime for subspace arithmetic; digits are stored in a byte.
inline constexpr unsigned kMaxLinalgPrime = 251;

namespace vec {

Word pow_q(unsigned q, unsigned e) noexcept;
unsigned digit(Word x, unsigned q, unsigned j) noexcept;
/// x + c*y, entrywise over GF(q), for vectors of length v.
Word axpy(Word x, Word y, unsigned c, unsigned q, unsigned v) noexcept;
Word scale(Word x, unsigned c, unsigned q, unsigned v) noexcept;
/// Column of the first nonzero entry, or v for the zero vector.
unsigned leading(Word x, unsigned q, unsigned v) noexcept;
/// Scales x so its first nonzero entry is 1.
Word normalize(Word x, unsigned q, unsigned v) noexcept;
unsigned dot(Word x, Word y, unsigned q, unsigned v) noexcept;
std::vector<std::uint8_t> to_digits(Word x, unsigned q, unsigned v);
Word from_digits(std::span<const std::uint8_t> digits, unsigned q);

unsigned inv_mod(unsigned c, unsigned q) noexcept;

}  // namespace vec

/// A subspace of GF(q)^v in canonical form: the reduced row echelon basis with
/// pivots ordered left to right (lowest column first) and pivot entries 1.
/// Two subspaces are equal iff their row encodings are equal.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(unsigned q, unsigned v);
  /// Span of the given row encodings. Dependent and zero rows are dropped.
  static Subspace span(unsigned q, unsigned v, std::span<const Word> rows);
  /// Span of digit rows; entries are reduced mod q so -1 may be passed.
  static Subspace span_digits(unsigned q, unsigned v, const std::vector<std::vector<int>>& rows);
  /// Trusts that `rows` is already canonical.
  static Subspace from_canonical(unsigned q, unsigned v, std::vector<Word> rows) noexcept;

  unsigned q() const noexcept { return q_; }
  unsigned ambient() const noexcept { return v_; }
  unsigned dim() const noexcept { return static_cast<unsigned>(rows_.size()); }
  std::span<const Word> rows() const noexcept { return rows_; }
  const std::vector<Word>& encoding() const noexcept { return rows_; }
  /// Pivot column of each row.
  std::vector<unsigned> pivots() const;

  auto operator<=>(const Subspace&) const = default;

 private:
  Subspace(unsigned q, unsigned v, std::vector<Word> rows) : q_(q), v_(v), rows_(std::move(rows)) {}

  std::uint32_t q_ = 2;
  std::uint32_t v_ = 0;
  std::vector<Word> rows_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept;
};

/// Brings rows to canonical form in place; returns the rank. The first `rank`
/// entries of `rows` hold the canonical basis afterwards.
unsigned rref(std::vector<Word>& rows, unsigned q, unsigned v);

/// Span of digit rows of length v. Throws DimensionMismatch on ragged input.
Subspace canonicalize(unsigned q, unsigned v, const std::vector<std::vector<std::uint8_t>>& rows);

/// Residue of x after elimination against the canonical basis of U.
Word reduce(const Subspace& u, Word x) noexcept;

unsigned sum_dim(const Subspace& u, const Subspace& w);
Subspace sum(const Subspace& u, const Subspace& w);
Subspace intersect(const Subspace& u, const Subspace& w);
bool contains(const Subspace& u, const Subspace& w);
bool contains(const Subspace& u, Word x);

/// (U+P)/P in V/P, coordinatised by dropping the pivot column of P after
/// reducing against P. The result lives in GF(q)^(v-1).
Subspace project_through_point(const Subspace& u, const Subspace& p);

/// Linear combination sum_i c[i] * rows[i].
Word combine(const Subspace& u, std::span<const std::uint8_t> coeffs) noexcept;

/// Calls f(x) for every normalised nonzero vector x of U, i.e. once per point.
template <class F>
void for_each_point(const Subspace& u, F&& f);
std::vector<Word> points(const Subspace& u);
/// Number of points of a k-dimensional space, (q^k-1)/(q-1).
std::uint64_t point_count(unsigned q, unsigned k) noexcept;

/// Dense matrix over GF(q); rows stored as encodings of length `cols`.
class Matrix {
 public:
  Matrix() = default;
  Matrix(unsigned q, unsigned cols, std::vector<Word> rows);

  static Matrix identity(unsigned q, unsigned n);

  unsigned q() const noexcept { return q_; }
  unsigned rows_count() const noexcept { return static_cast<unsigned>(rows_.size()); }
  unsigned cols() const noexcept { return cols_; }
  std::span<const Word> rows() const noexcept { return rows_; }

  /// Row vector times matrix.
  Word apply(Word x) const noexcept;
  /// Product: first this, then `rhs` (row-vector convention).
  Matrix operator*(const Matrix& rhs) const;
  Matrix pow(std::uint64_t e) const;
  std::optional<Matrix> inverse() const;
  bool is_identity() const noexcept;

  auto operator<=>(const Matrix&) const = default;

 private:
  std::uint32_t q_ = 2;
  std::uint32_t cols_ = 0;
  std::vector<Word> rows_;
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const noexcept;
};

/// Image of U under x -> x*M, canonicalised.
Subspace apply(const Matrix& m, const Subspace& u);

template <class F>
void for_each_point(const Subspace& u, F&& f) {
  const auto rows = u.rows();
  const unsigned k = u.dim();
  if (k == 0) return;
  const unsigned q = u.q();
  if (q == 2) {
    // Gray code walk over all nonzero combinations.
    Word x = 0;
    const std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t m = 1; m < n; ++m) {
      x ^= rows[static_cast<unsigned>(__builtin_ctzll(m))];
      f(x);
    }
    return;
  }
  std::vector<std::uint8_t> c(k);
  for (unsigned lead = 0; lead < k; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    while (true) {
      f(combine(u, c));
      unsigned j = lead + 1;
      while (j < k && c[j] == q - 1) c[j++] = 0;
      if (j >= k) break;
      ++c[j];
    }
  }
}

}  // namespace qgdd
