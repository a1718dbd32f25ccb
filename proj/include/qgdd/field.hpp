#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace qgdd {

/// Field element of GF(q^g), encoded as the integer sum c_i q^i where c_i is the
/// coefficient of a^i and a is the primitive element. Prime-field constants
/// 0..q-1 keep their natural value.
using Elem = std::uint32_t;

bool is_prime(std::uint64_t n) noexcept;

/// Exact arithmetic in GF(q^g) for prime q, backed by discrete exp/log tables.
///
/// Immutable after construction, so one instance can be shared by any number
/// of readers.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  /// Builds GF(q^g). Without `poly` the built-in default primitive polynomial is
  /// used; (2,6) defaults to 1+x+x^3+x^4+x^6. Coefficients are low-degree first.
  static Field create(unsigned q, unsigned g = 1,
                      std::optional<std::vector<unsigned>> poly = std::nullopt);
  static std::shared_ptr<const Field> make_shared(
      unsigned q, unsigned g = 1, std::optional<std::vector<unsigned>> poly = std::nullopt);

  unsigned q() const noexcept { return q_; }
  unsigned degree() const noexcept { return g_; }
  Elem order() const noexcept { return order_; }
  const std::vector<unsigned>& primitive_poly() const noexcept { return poly_; }

  /// The primitive element a (a root of primitive_poly()).
  Elem generator() const noexcept { return exp(1); }

  Elem add(Elem x, Elem y) const noexcept;
  Elem sub(Elem x, Elem y) const noexcept;
  Elem neg(Elem x) const noexcept;
  Elem mul(Elem x, Elem y) const noexcept {
    if (x == 0 || y == 0) return 0;
    std::uint32_t e = log_[x] + log_[y];
    if (e >= order_ - 1) e -= order_ - 1;
    return exp_[e];
  }
  /// x must be nonzero.
  Elem inv(Elem x) const noexcept { return exp_[(order_ - 1 - log_[x]) % (order_ - 1)]; }
  Elem div(Elem x, Elem y) const noexcept { return mul(x, inv(y)); }
  Elem pow(Elem x, std::uint64_t e) const noexcept;

  /// a^i, any i >= 0.
  Elem exp(std::uint64_t i) const noexcept { return exp_[i % (order_ - 1)]; }
  /// Discrete log base a; x must be nonzero.
  std::uint32_t log(Elem x) const noexcept { return log_[x]; }

  /// Coefficient of a^i in x.
  unsigned digit(Elem x, unsigned i) const noexcept;

 private:
  Field() = default;

  unsigned q_ = 0;
  unsigned g_ = 0;
  Elem order_ = 0;
  std::vector<unsigned> poly_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> qpow_;
};

/// Built-in primitive polynomial (monic, low-degree first) for GF(q^g).
/// Conway polynomials for the common small fields, otherwise the first primitive
/// polynomial in a fixed enumeration order.
std::vector<unsigned> default_primitive_poly(unsigned q, unsigned g);

/// True iff `poly` (monic, degree g) is primitive over GF(q).
bool is_primitive_poly(unsigned q, std::span<const unsigned> poly);

/// A vector of GF(q^g)^s.
struct ExtVector {
  std::vector<Elem> coords;

  bool operator==(const ExtVector&) const = default;
};

/// Expands each GF(q^g) coordinate into g consecutive GF(q) digits, coefficient
/// of a^0 first. Result has length g*s.
std::vector<std::uint8_t> flatten(const Field& ext, const ExtVector& x);
ExtVector unflatten(const Field& ext, std::span<const std::uint8_t> digits);

/// Same identification on the integer encodings: the flattened base-q encoding
/// equals sum_i coords[i] * (q^g)^i.
std::uint64_t flatten_encoding(const Field& ext, const ExtVector& x);
ExtVector unflatten_encoding(const Field& ext, std::uint64_t enc, unsigned s);

}  // namespace qgdd
