#include "qgdd/linalg.hpp"

#include <bit>
#include <string>
#include <utility>

#include "qgdd/error.hpp"

namespace qgdd {

namespace vec {

Word pow_q(unsigned q, unsigned e) noexcept {
  Word r = 1;
  while (e--) r *= q;
  return r;
}

unsigned digit(Word x, unsigned q, unsigned j) noexcept {
  if (q == 2) return static_cast<unsigned>((x >> j) & 1u);
  return static_cast<unsigned>((x / pow_q(q, j)) % q);
}

Word axpy(Word x, Word y, unsigned c, unsigned q, unsigned v) noexcept {
  if (q == 2) return (c & 1u) ? x ^ y : x;
  if (c % q == 0) return x;
  Word out = 0, p = 1;
  for (unsigned j = 0; j < v; ++j) {
    const auto dx = static_cast<unsigned>(x % q);
    const auto dy = static_cast<unsigned>(y % q);
    out += ((dx + c * dy) % q) * p;
    x /= q;
    y /= q;
    p *= q;
  }
  return out;
}

Word scale(Word x, unsigned c, unsigned q, unsigned v) noexcept { return axpy(0, x, c, q, v); }

unsigned leading(Word x, unsigned q, unsigned v) noexcept {
  if (x == 0) return v;
  if (q == 2) return static_cast<unsigned>(std::countr_zero(x));
  unsigned j = 0;
  while (x % q == 0) {
    x /= q;
    ++j;
  }
  return j;
}

Word normalize(Word x, unsigned q, unsigned v) noexcept {
  if (q == 2 || x == 0) return x;
  const unsigned lead = leading(x, q, v);
  const unsigned d = digit(x, q, lead);
  return d == 1 ? x : scale(x, inv_mod(d, q), q, v);
}

unsigned dot(Word x, Word y, unsigned q, unsigned v) noexcept {
  if (q == 2) return static_cast<unsigned>(std::popcount(x & y) & 1);
  unsigned acc = 0;
  for (unsigned j = 0; j < v; ++j) {
    acc = (acc + static_cast<unsigned>(x % q) * static_cast<unsigned>(y % q)) % q;
    x /= q;
    y /= q;
  }
  return acc;
}

std::vector<std::uint8_t> to_digits(Word x, unsigned q, unsigned v) {
  std::vector<std::uint8_t> d(v);
  for (unsigned j = 0; j < v; ++j) {
    d[j] = static_cast<std::uint8_t>(x % q);
    x /= q;
  }
  return d;
}

Word from_digits(std::span<const std::uint8_t> digits, unsigned q) {
  Word x = 0;
  for (std::size_t j = digits.size(); j-- > 0;) x = x * q + digits[j];
  return x;
}

unsigned inv_mod(unsigned c, unsigned q) noexcept {
  // Fermat: c^(q-2).
  unsigned r = 1, b = c % q, e = q - 2;
  while (e) {
    if (e & 1u) r = (r * b) % q;
    b = (b * b) % q;
    e >>= 1;
  }
  return r;
}

}  // namespace vec

namespace {

bool fits(unsigned q, unsigned v) {
  // q^v must be representable; q^v - 1 is the largest encoding.
  long double bound = 1;
  for (unsigned i = 0; i < v; ++i) bound *= q;
  return bound <= 18446744073709551615.0L;
}

void check_ambient(unsigned q, unsigned v) {
  if (q < 2 || q > kMaxLinalgPrime)
    throw Error(Errc::InvalidArgument, "unsupported q = " + std::to_string(q));
  if (!fits(q, v)) throw Error(Errc::DimensionMismatch, "q^v does not fit in 64 bits");
}

// Gauss-Jordan on a row-major digit matrix; pivots ordered left to right.
unsigned rref_digits(std::vector<std::uint8_t>& m, std::size_t nrows, std::size_t ncols,
                     unsigned q) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
    std::size_t piv = rank;
    while (piv < nrows && m[piv * ncols + col] == 0) ++piv;
    if (piv == nrows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < ncols; ++j) std::swap(m[piv * ncols + j], m[rank * ncols + j]);
    const unsigned inv = vec::inv_mod(m[rank * ncols + col], q);
    for (std::size_t j = 0; j < ncols; ++j)
      m[rank * ncols + j] = static_cast<std::uint8_t>((m[rank * ncols + j] * inv) % q);
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == rank) continue;
      const unsigned f = m[i * ncols + col];
      if (f == 0) continue;
      const unsigned nf = q - f;
      for (std::size_t j = 0; j < ncols; ++j)
        m[i * ncols + j] = static_cast<std::uint8_t>((m[i * ncols + j] + nf * m[rank * ncols + j]) % q);
    }
    ++rank;
  }
  return static_cast<unsigned>(rank);
}

unsigned rref_binary(std::vector<Word>& rows, unsigned v) {
  std::size_t rank = 0;
  const std::size_t n = rows.size();
  for (unsigned col = 0; col < v && rank < n; ++col) {
    const Word bit = Word{1} << col;
    std::size_t piv = rank;
    while (piv < n && !(rows[piv] & bit)) ++piv;
    if (piv == n) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != rank && (rows[i] & bit)) rows[i] ^= rows[rank];
    ++rank;
  }
  return static_cast<unsigned>(rank);
}

}  // namespace

unsigned rref(std::vector<Word>& rows, unsigned q, unsigned v) {
  if (q == 2) return rref_binary(rows, v);
  const std::size_t n = rows.size();
  std::vector<std::uint8_t> m(n * v);
  for (std::size_t i = 0; i < n; ++i) {
    Word x = rows[i];
    for (unsigned j = 0; j < v; ++j) {
      m[i * v + j] = static_cast<std::uint8_t>(x % q);
      x /= q;
    }
  }
  const unsigned rank = rref_digits(m, n, v, q);
  for (std::size_t i = 0; i < n; ++i)
    rows[i] = vec::from_digits(std::span(m).subspan(i * v, v), q);
  return rank;
}

Subspace Subspace::zero(unsigned q, unsigned v) {
  check_ambient(q, v);
  return Subspace(q, v, {});
}

Subspace Subspace::span(unsigned q, unsigned v, std::span<const Word> rows) {
  check_ambient(q, v);
  const Word limit = v == 0 ? 1 : vec::pow_q(q, v - 1);
  std::vector<Word> r(rows.begin(), rows.end());
  for (Word x : r) {
    // x < q^v, checked without forming q^v.
    if (v == 0 ? x != 0 : x / limit >= q)
      throw Error(Errc::DimensionMismatch,
                  "row encoding " + std::to_string(x) + " exceeds ambient dimension " + std::to_string(v));
  }
  const unsigned rank = rref(r, q, v);
  r.resize(rank);
  return Subspace(q, v, std::move(r));
}

Subspace Subspace::span_digits(unsigned q, unsigned v, const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<std::uint8_t>> d;
  d.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::uint8_t> r(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
      r[j] = static_cast<std::uint8_t>(((row[j] % static_cast<int>(q)) + static_cast<int>(q)) % static_cast<int>(q));
    d.push_back(std::move(r));
  }
  return canonicalize(q, v, d);
}

Subspace Subspace::from_canonical(unsigned q, unsigned v, std::vector<Word> rows) noexcept {
  return Subspace(q, v, std::move(rows));
}

std::vector<unsigned> Subspace::pivots() const {
  std::vector<unsigned> p(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) p[i] = vec::leading(rows_[i], q_, v_);
  return p;
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (std::uint64_t{s.q()} << 32) ^ s.ambient();
  for (Word w : s.rows()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

Subspace canonicalize(unsigned q, unsigned v, const std::vector<std::vector<std::uint8_t>>& rows) {
  check_ambient(q, v);
  std::vector<Word> enc;
  enc.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != v)
      throw Error(Errc::DimensionMismatch,
                  "row of length " + std::to_string(r.size()) + " in ambient dimension " + std::to_string(v));
    for (auto d : r)
      if (d >= q) throw Error(Errc::DimensionMismatch, "digit out of range");
    enc.push_back(vec::from_digits(r, q));
  }
  return Subspace::span(q, v, enc);
}

Word reduce(const Subspace& u, Word x) noexcept {
  const unsigned q = u.q(), v = u.ambient();
  if (q == 2) {
    for (Word r : u.rows())
      if (x & (r & (~r + 1))) x ^= r;  // r & -r isolates the pivot bit
    return x;
  }
  for (Word r : u.rows()) {
    const unsigned p = vec::leading(r, q, v);
    const unsigned d = vec::digit(x, q, p);
    if (d) x = vec::axpy(x, r, q - d, q, v);
  }
  return x;
}

namespace {
void require_same(const Subspace& u, const Subspace& w) {
  if (u.q() != w.q() || u.ambient() != w.ambient())
    throw Error(Errc::DimensionMismatch, "subspaces live in different ambient spaces");
}
}  // namespace

unsigned sum_dim(const Subspace& u, const Subspace& w) {
  require_same(u, w);
  std::vector<Word> r(u.rows().begin(), u.rows().end());
  r.insert(r.end(), w.rows().begin(), w.rows().end());
  return rref(r, u.q(), u.ambient());
}

Subspace sum(const Subspace& u, const Subspace& w) {
  require_same(u, w);
  std::vector<Word> r(u.rows().begin(), u.rows().end());
  r.insert(r.end(), w.rows().begin(), w.rows().end());
  return Subspace::span(u.q(), u.ambient(), r);
}

Subspace intersect(const Subspace& u, const Subspace& w) {
  require_same(u, w);
  // Zassenhaus: reduce [u|u ; w|0]; rows with zero left half span U ∩ W.
  const unsigned q = u.q(), v = u.ambient();
  const std::size_t n = u.dim() + w.dim(), cols = 2 * std::size_t{v};
  std::vector<std::uint8_t> m(n * cols, 0);
  std::size_t i = 0;
  for (Word r : u.rows()) {
    const auto d = vec::to_digits(r, q, v);
    std::copy(d.begin(), d.end(), m.begin() + static_cast<std::ptrdiff_t>(i * cols));
    std::copy(d.begin(), d.end(), m.begin() + static_cast<std::ptrdiff_t>(i * cols + v));
    ++i;
  }
  for (Word r : w.rows()) {
    const auto d = vec::to_digits(r, q, v);
    std::copy(d.begin(), d.end(), m.begin() + static_cast<std::ptrdiff_t>(i * cols));
    ++i;
  }
  const unsigned rank = rref_digits(m, n, cols, q);
  std::vector<Word> out;
  for (std::size_t r = 0; r < rank; ++r) {
    bool left_zero = true;
    for (unsigned j = 0; j < v && left_zero; ++j) left_zero = m[r * cols + j] == 0;
    if (left_zero) out.push_back(vec::from_digits(std::span(m).subspan(r * cols + v, v), q));
  }
  return Subspace::span(q, v, out);
}

bool contains(const Subspace& u, const Subspace& w) {
  require_same(u, w);
  if (w.dim() > u.dim()) return false;
  for (Word r : w.rows())
    if (reduce(u, r) != 0) return false;
  return true;
}

bool contains(const Subspace& u, Word x) { return reduce(u, x) == 0; }

Subspace project_through_point(const Subspace& u, const Subspace& p) {
  if (p.dim() != 1) throw Error(Errc::NotAPoint, "projection centre must be 1-dimensional");
  if (u.q() != p.q() || u.ambient() != p.ambient())
    throw Error(Errc::AmbientMismatch, "point and subspace live in different spaces");
  const unsigned q = u.q(), v = u.ambient();
  const Word pv = p.rows()[0];
  const unsigned c = vec::leading(pv, q, v);
  const Word low_mod = vec::pow_q(q, c);
  std::vector<Word> out;
  out.reserve(u.dim());
  for (Word r : u.rows()) {
    const unsigned d = vec::digit(r, q, c);
    const Word red = d ? vec::axpy(r, pv, q - d, q, v) : r;
    // drop column c
    out.push_back(red % low_mod + (red / (low_mod * q)) * low_mod);
  }
  return Subspace::span(q, v - 1, out);
}

Word combine(const Subspace& u, std::span<const std::uint8_t> coeffs) noexcept {
  const unsigned q = u.q(), v = u.ambient();
  Word x = 0;
  const auto rows = u.rows();
  for (std::size_t i = 0; i < rows.size() && i < coeffs.size(); ++i)
    if (coeffs[i]) x = vec::axpy(x, rows[i], coeffs[i], q, v);
  return x;
}

std::vector<Word> points(const Subspace& u) {
  std::vector<Word> out;
  out.reserve(point_count(u.q(), u.dim()));
  for_each_point(u, [&](Word x) { out.push_back(x); });
  return out;
}

std::uint64_t point_count(unsigned q, unsigned k) noexcept { return (vec::pow_q(q, k) - 1) / (q - 1); }

Matrix::Matrix(unsigned q, unsigned cols, std::vector<Word> rows)
    : q_(q), cols_(cols), rows_(std::move(rows)) {
  check_ambient(q, cols);
}

Matrix Matrix::identity(unsigned q, unsigned n) {
  std::vector<Word> r(n);
  for (unsigned i = 0; i < n; ++i) r[i] = vec::pow_q(q, i);
  return Matrix(q, n, std::move(r));
}

Word Matrix::apply(Word x) const noexcept {
  Word out = 0;
  if (q_ == 2) {
    while (x) {
      out ^= rows_[static_cast<unsigned>(std::countr_zero(x))];
      x &= x - 1;
    }
    return out;
  }
  for (std::size_t i = 0; i < rows_.size() && x; ++i) {
    const auto d = static_cast<unsigned>(x % q_);
    x /= q_;
    if (d) out = vec::axpy(out, rows_[i], d, q_, cols_);
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (q_ != rhs.q_ || cols_ != rhs.rows_count())
    throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
  std::vector<Word> r(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) r[i] = rhs.apply(rows_[i]);
  return Matrix(q_, rhs.cols_, std::move(r));
}

Matrix Matrix::pow(std::uint64_t e) const {
  Matrix result = identity(q_, cols_);
  Matrix base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::optional<Matrix> Matrix::inverse() const {
  const std::size_t n = rows_.size();
  if (n != cols_) return std::nullopt;
  const std::size_t w = 2 * n;
  std::vector<std::uint8_t> m(n * w, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = vec::to_digits(rows_[i], q_, cols_);
    std::copy(d.begin(), d.end(), m.begin() + static_cast<std::ptrdiff_t>(i * w));
    m[i * w + n + i] = 1;
  }
  if (rref_digits(m, n, w, q_) < n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (m[i * w + i] != 1) return std::nullopt;
  std::vector<Word> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = vec::from_digits(std::span(m).subspan(i * w + n, n), q_);
  return Matrix(q_, cols_, std::move(r));
}

bool Matrix::is_identity() const noexcept {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i] != vec::pow_q(q_, static_cast<unsigned>(i))) return false;
  return rows_.size() == cols_;
}

std::size_t MatrixHash::operator()(const Matrix& m) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ m.cols();
  for (Word w : m.rows()) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

Subspace apply(const Matrix& m, const Subspace& u) {
  if (m.q() != u.q() || m.rows_count() != u.ambient() || m.cols() != u.ambient())
    throw Error(Errc::DimensionMismatch, "matrix does not act on this space");
  std::vector<Word> r(u.dim());
  for (unsigned i = 0; i < u.dim(); ++i) r[i] = m.apply(u.rows()[i]);
  return Subspace::span(u.q(), u.ambient(), r);
}

}  // namespace qgdd
