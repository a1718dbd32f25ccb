#include "qgdd/field.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "qgdd/error.hpp"

namespace qgdd {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Conway polynomials, low-degree first. g = 1 is computed (least primitive root).
const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>>& conway_table() {
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table = {
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{2, 9}, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {{2, 10}, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
      {{2, 11}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{2, 12}, {1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1}},
      {{2, 13}, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
      {{3, 7}, {1, 0, 2, 0, 0, 0, 0, 1}},
      {{3, 8}, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{5, 4}, {2, 4, 4, 0, 1}},
      {{5, 5}, {3, 4, 0, 0, 0, 1}},
      {{7, 2}, {3, 6, 1}},
      {{7, 3}, {4, 0, 6, 1}},
      {{7, 4}, {3, 4, 5, 0, 1}},
      {{11, 2}, {2, 7, 1}},
      {{11, 3}, {9, 2, 0, 1}},
      {{13, 2}, {2, 12, 1}},
      {{13, 3}, {11, 2, 0, 1}},
  };
  return table;
}

std::vector<std::uint32_t> powers_of(unsigned q, unsigned g) {
  std::vector<std::uint32_t> p(g + 1, 1);
  for (unsigned i = 1; i <= g; ++i) p[i] = p[i - 1] * q;
  return p;
}

// Multiplication by the root x of the monic `poly` on encoded elements.
Elem times_x(Elem e, unsigned q, std::span<const unsigned> poly,
             const std::vector<std::uint32_t>& qp) {
  const unsigned g = static_cast<unsigned>(poly.size()) - 1;
  const unsigned top = (e / qp[g - 1]) % q;
  Elem out = 0;
  for (unsigned i = 0; i < g; ++i) {
    const unsigned prev = i == 0 ? 0 : (e / qp[i - 1]) % q;
    const auto d = static_cast<Elem>((prev + (q - (std::uint64_t{top} * poly[i]) % q)) % q);
    out += d * qp[i];
  }
  return out;
}

// Fills exp/log; returns false unless x has multiplicative order q^g - 1.
bool build_tables(unsigned q, std::span<const unsigned> poly, std::vector<Elem>& exp,
                  std::vector<std::uint32_t>& log) {
  const unsigned g = static_cast<unsigned>(poly.size()) - 1;
  const auto qp = powers_of(q, g);
  const Elem order = qp[g];
  exp.assign(order - 1, 0);
  log.assign(order, 0);
  std::vector<bool> seen(order, false);
  Elem cur = 1;
  for (Elem i = 0; i + 1 < order; ++i) {
    if (cur == 0 || seen[cur]) return false;
    seen[cur] = true;
    exp[i] = cur;
    log[cur] = i;
    cur = times_x(cur, q, poly, qp);
  }
  return cur == 1;
}

}  // namespace

bool is_primitive_poly(unsigned q, std::span<const unsigned> poly) {
  if (poly.size() < 2 || poly.back() != 1) return false;
  for (unsigned c : poly)
    if (c >= q) return false;
  std::vector<Elem> exp;
  std::vector<std::uint32_t> log;
  return build_tables(q, poly, exp, log);
}

std::vector<unsigned> default_primitive_poly(unsigned q, unsigned g) {
  if (!is_prime(q)) throw Error(Errc::NonPrimeModulus, "q = " + std::to_string(q));
  if (g == 0) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
  if (auto it = conway_table().find({q, g}); it != conway_table().end()) return it->second;
  if (g == 1) {
    for (unsigned r = 1; r < q; ++r) {
      std::vector<unsigned> p = {(q - r) % q, 1};
      if (is_primitive_poly(q, p)) return p;
    }
  }
  // First primitive polynomial with constant-to-top coefficients counted as a
  // base-q integer.
  const auto qp = powers_of(q, g);
  std::vector<unsigned> p(g + 1, 0);
  p[g] = 1;
  for (std::uint64_t n = 1; n < qp[g]; ++n) {
    for (unsigned i = 0; i < g; ++i) p[i] = (n / qp[i]) % q;
    if (p[0] != 0 && is_primitive_poly(q, p)) return p;
  }
  throw Error(Errc::NonPrimitivePolynomial, "no primitive polynomial found");
}

Field Field::create(unsigned q, unsigned g, std::optional<std::vector<unsigned>> poly) {
  if (!is_prime(q)) throw Error(Errc::NonPrimeModulus, "q = " + std::to_string(q));
  if (g == 0) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t order = 1;
  for (unsigned i = 0; i < g; ++i) {
    order *= q;
    if (order > kMaxOrder)
      throw Error(Errc::FieldTooLarge, "q^g exceeds 2^20");
  }

  std::vector<unsigned> p;
  if (poly) {
    p = *poly;
    if (p.size() != g + 1 || p.back() % q == 0)
      throw Error(Errc::DimensionMismatch, "polynomial must have degree " + std::to_string(g));
    for (auto& c : p) c %= q;
    // Normalise to monic.
    if (p.back() != 1) {
      unsigned inv = 1;
      while ((std::uint64_t{inv} * p.back()) % q != 1) ++inv;
      for (auto& c : p) c = static_cast<unsigned>((std::uint64_t{c} * inv) % q);
    }
  } else {
    p = default_primitive_poly(q, g);
  }

  Field f;
  f.q_ = q;
  f.g_ = g;
  f.order_ = static_cast<Elem>(order);
  f.poly_ = p;
  f.qpow_ = powers_of(q, g);
  if (!build_tables(q, p, f.exp_, f.log_))
    throw Error(Errc::NonPrimitivePolynomial, "polynomial is not primitive over GF(" +
                                                  std::to_string(q) + ")");
  return f;
}

std::shared_ptr<const Field> Field::make_shared(unsigned q, unsigned g,
                                                std::optional<std::vector<unsigned>> poly) {
  return std::make_shared<const Field>(create(q, g, std::move(poly)));
}

unsigned Field::digit(Elem x, unsigned i) const noexcept { return (x / qpow_[i]) % q_; }

Elem Field::add(Elem x, Elem y) const noexcept {
  if (q_ == 2) return x ^ y;
  if (g_ == 1) return (x + y) % q_;
  Elem out = 0;
  for (unsigned i = 0; i < g_; ++i) out += ((digit(x, i) + digit(y, i)) % q_) * qpow_[i];
  return out;
}

Elem Field::neg(Elem x) const noexcept {
  if (q_ == 2) return x;
  if (g_ == 1) return (q_ - x) % q_;
  Elem out = 0;
  for (unsigned i = 0; i < g_; ++i) out += ((q_ - digit(x, i)) % q_) * qpow_[i];
  return out;
}

Elem Field::sub(Elem x, Elem y) const noexcept { return add(x, neg(y)); }

Elem Field::pow(Elem x, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (x == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[x]) * (e % (order_ - 1))) % (order_ - 1)];
}

std::vector<std::uint8_t> flatten(const Field& ext, const ExtVector& x) {
  const unsigned g = ext.degree();
  std::vector<std::uint8_t> out(x.coords.size() * g);
  for (std::size_t i = 0; i < x.coords.size(); ++i)
    for (unsigned t = 0; t < g; ++t)
      out[i * g + t] = static_cast<std::uint8_t>(ext.digit(x.coords[i], t));
  return out;
}

ExtVector unflatten(const Field& ext, std::span<const std::uint8_t> digits) {
  const unsigned g = ext.degree();
  if (digits.size() % g != 0)
    throw Error(Errc::DimensionMismatch, "length is not a multiple of the extension degree");
  ExtVector x;
  x.coords.resize(digits.size() / g);
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    Elem e = 0;
    for (unsigned t = g; t-- > 0;) e = e * ext.q() + digits[i * g + t];
    x.coords[i] = e;
  }
  return x;
}

std::uint64_t flatten_encoding(const Field& ext, const ExtVector& x) {
  std::uint64_t enc = 0;
  for (std::size_t i = x.coords.size(); i-- > 0;) enc = enc * ext.order() + x.coords[i];
  return enc;
}

ExtVector unflatten_encoding(const Field& ext, std::uint64_t enc, unsigned s) {
  ExtVector x;
  x.coords.resize(s);
  for (unsigned i = 0; i < s; ++i) {
    x.coords[i] = static_cast<Elem>(enc % ext.order());
    enc /= ext.order();
  }
  return x;
}

}  // namespace qgdd
