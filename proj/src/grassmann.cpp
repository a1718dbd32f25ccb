#include "qgdd/grassmann.hpp"

#include <algorithm>
#include <string>

#include "qgdd/error.hpp"
#include "qgdd/spread.hpp"

namespace qgdd {

BigInt gaussian_binomial(unsigned v, int m, std::uint64_t q) {
  if (m < 0 || static_cast<unsigned>(m) > v) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < m; ++i) {
    num *= big_pow(q, v - static_cast<unsigned>(i)) - 1;
    den *= big_pow(q, static_cast<unsigned>(i) + 1) - 1;
  }
  return num / den;
}

GrassmannIndex::GrassmannIndex(unsigned q, unsigned v, unsigned k) : q_(q), v_(v), k_(k) {
  if (k > v) throw Error(Errc::InvalidArgument, "k exceeds ambient dimension");
  if (gaussian_binomial(v, static_cast<int>(k), q) > (BigInt(1) << 62))
    throw Error(Errc::TooLarge, "Grassmannian too large to index");
  binom_.assign(v + 1, std::vector<std::uint64_t>(k + 2, 0));
  for (unsigned n = 0; n <= v; ++n) {
    binom_[n][0] = 1;
    for (unsigned r = 1; r <= std::min(n, k + 1); ++r)
      binom_[n][r] = binom_[n - 1][r - 1] + (r <= n - 1 ? binom_[n - 1][r] : 0);
  }
  qpow_.resize(v + 1);
  for (unsigned i = 0; i <= v; ++i) qpow_[i] = vec::pow_q(q, i);
  const std::uint64_t patterns = binom_[v][k];
  offsets_.assign(patterns + 1, 0);
  for (std::uint64_t i = 0; i < patterns; ++i) {
    const auto p = pattern(static_cast<std::size_t>(i));
    offsets_[i + 1] = offsets_[i] + vec::pow_q(q, free_count(p));
  }
}

std::vector<unsigned> GrassmannIndex::pattern(std::size_t i) const {
  std::vector<unsigned> p(k_);
  std::uint64_t r = i;
  unsigned c = v_;
  for (unsigned t = k_; t-- > 0;) {
    --c;
    while (binom_[c][t + 1] > r) --c;
    p[t] = c;
    r -= binom_[c][t + 1];
  }
  return p;
}

std::size_t GrassmannIndex::pattern_index(std::span<const unsigned> pivots) const noexcept {
  std::uint64_t r = 0;
  for (unsigned t = 0; t < pivots.size(); ++t) r += binom_[pivots[t]][t + 1];
  return static_cast<std::size_t>(r);
}

unsigned GrassmannIndex::free_count(std::span<const unsigned> pivots) const noexcept {
  unsigned f = 0;
  for (unsigned t = 0; t < k_; ++t) f += v_ - pivots[t] - k_ + t;
  return f;
}

std::uint64_t GrassmannIndex::rank(const Subspace& u) const {
  if (u.q() != q_ || u.ambient() != v_ || u.dim() != k_)
    throw Error(Errc::DimensionMismatch, "subspace does not belong to this Grassmannian");
  const auto piv = u.pivots();
  std::uint64_t local = 0, place = 1;
  std::size_t next_pivot = 0;
  for (unsigned t = 0; t < k_; ++t) {
    const Word row = u.rows()[t];
    next_pivot = t + 1;
    for (unsigned j = piv[t] + 1; j < v_; ++j) {
      if (next_pivot < k_ && piv[next_pivot] == j) {
        ++next_pivot;
        continue;
      }
      local += vec::digit(row, q_, j) * place;
      place *= q_;
    }
  }
  return offsets_[pattern_index(piv)] + local;
}

Subspace GrassmannIndex::unrank(std::uint64_t r) const {
  if (r >= size()) throw Error(Errc::InvalidArgument, "rank out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), r);
  const auto idx = static_cast<std::size_t>(it - offsets_.begin() - 1);
  const auto piv = pattern(idx);
  std::uint64_t local = r - offsets_[idx];
  std::vector<Word> rows(k_);
  for (unsigned t = 0; t < k_; ++t) {
    rows[t] = qpow_[piv[t]];
    std::size_t next_pivot = t + 1;
    for (unsigned j = piv[t] + 1; j < v_; ++j) {
      if (next_pivot < k_ && piv[next_pivot] == j) {
        ++next_pivot;
        continue;
      }
      rows[t] += (local % q_) * qpow_[j];
      local /= q_;
    }
  }
  return Subspace::from_canonical(q_, v_, std::move(rows));
}

namespace {
void validate(const Constraint& c) {
  if (const auto* s = std::get_if<ScatteredWrt>(&c); s && s->spread == nullptr)
    throw Error(Errc::ConstraintRequiresSpread, "scattered enumeration needs a spread");
  if (const auto* f = std::get_if<FatOnly>(&c); f && f->ext == nullptr)
    throw Error(Errc::InvalidArgument, "fat enumeration needs the extension field");
}
}  // namespace

GrassmannIter::GrassmannIter(unsigned q, unsigned v, unsigned k, Constraint c)
    : owned_(std::in_place, q, v, k), index_(&*owned_), constraint_(std::move(c)), pos_(0),
      end_(owned_->size()) {
  validate(constraint_);
}

GrassmannIter::GrassmannIter(const GrassmannIndex& index, Constraint c, std::uint64_t begin,
                             std::uint64_t end)
    : index_(&index), constraint_(std::move(c)), pos_(begin), end_(std::min(end, index.size())) {
  validate(constraint_);
}

void GrassmannIter::load_pattern() {
  const auto& ix = *index_;
  pivots_ = ix.pattern(pattern_);
  pattern_end_ = ix.pattern_offset(pattern_ + 1);
  free_.clear();
  const unsigned k = ix.dim(), v = ix.ambient(), q = ix.q();
  for (unsigned t = 0; t < k; ++t) {
    std::size_t next_pivot = t + 1;
    for (unsigned j = pivots_[t] + 1; j < v; ++j) {
      if (next_pivot < k && pivots_[next_pivot] == j) {
        ++next_pivot;
        continue;
      }
      free_.emplace_back(t, vec::pow_q(q, j));
    }
  }
}

bool GrassmannIter::accept(const Subspace& u) const {
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NoConstraint>) return true;
        else if constexpr (std::is_same_v<T, ThroughSubspace>) return contains(u, c.fixed);
        else if constexpr (std::is_same_v<T, FatOnly>) return is_fat(u, *c.ext);
        else return is_scattered(u, *c.spread);
      },
      constraint_);
}

std::optional<Subspace> GrassmannIter::next() {
  const auto& ix = *index_;
  const unsigned q = ix.q(), k = ix.dim();
  while (pos_ < end_) {
    if (pos_ >= pattern_end_) {
      std::size_t lo = 0, hi = ix.pattern_count();
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (ix.pattern_offset(mid) <= pos_ ? lo : hi) = mid;
      }
      pattern_ = lo;
      load_pattern();
    }
    std::uint64_t local = pos_ - ix.pattern_offset(pattern_);
    std::vector<Word> rows(k);
    for (unsigned t = 0; t < k; ++t) rows[t] = vec::pow_q(q, pivots_[t]);
    for (const auto& [t, place] : free_) {
      rows[t] += (local % q) * place;
      local /= q;
    }
    ++pos_;
    auto u = Subspace::from_canonical(q, ix.ambient(), std::move(rows));
    if (accept(u)) return u;
  }
  return std::nullopt;
}

std::vector<Subspace> enumerate_k_subspaces(unsigned q, unsigned v, unsigned k, Constraint c,
                                            bool allow_large) {
  if (k > v) throw Error(Errc::InvalidArgument, "k exceeds ambient dimension");
  const BigInt total = gaussian_binomial(v, static_cast<int>(k), q);
  if (!allow_large && total > kMaterializeLimit)
    throw Error(Errc::TooLarge, to_string(total) + " subspaces exceed the materialisation limit");
  GrassmannIter it(q, v, k, std::move(c));
  std::vector<Subspace> out;
  while (auto u = it.next()) out.push_back(std::move(*u));
  return out;
}

unsigned ext_rank(const Subspace& u, const Field& ext) {
  const unsigned g = ext.degree();
  if (u.q() != ext.q() || u.ambient() % g != 0)
    throw Error(Errc::AmbientMismatch, "ambient space is not GF(q^g)^s for this field");
  const unsigned s = u.ambient() / g;
  const unsigned n = u.dim();
  std::vector<std::vector<Elem>> m(n);
  for (unsigned i = 0; i < n; ++i) m[i] = unflatten_encoding(ext, u.rows()[i], s).coords;
  unsigned rank = 0;
  for (unsigned col = 0; col < s && rank < n; ++col) {
    unsigned piv = rank;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[piv], m[rank]);
    const Elem inv = ext.inv(m[rank][col]);
    for (unsigned i = rank + 1; i < n; ++i) {
      if (m[i][col] == 0) continue;
      const Elem f = ext.mul(m[i][col], inv);
      for (unsigned j = col; j < s; ++j) m[i][j] = ext.sub(m[i][j], ext.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

bool is_fat(const Subspace& u, const Field& ext) {
  const unsigned rank = ext_rank(u, ext);
  return rank == u.dim();
}

bool is_scattered(const Subspace& u, const Spread& spread) {
  if (u.q() != spread.q() || u.ambient() != spread.ambient())
    throw Error(Errc::AmbientMismatch, "subspace and spread live in different spaces");
  if (u.dim() <= 1) return true;
  const unsigned q = u.q(), v = u.ambient();
  std::vector<std::uint32_t> hit;
  hit.reserve(point_count(q, u.dim()));
  for_each_point(u, [&](Word x) { hit.push_back(spread.lookup(vec::normalize(x, q, v))); });
  std::sort(hit.begin(), hit.end());
  return std::adjacent_find(hit.begin(), hit.end()) == hit.end();
}

}  // namespace qgdd
