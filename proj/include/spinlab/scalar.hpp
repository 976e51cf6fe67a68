#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace spinlab {

class InvalidField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FieldMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DivideByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Prime field descriptor: characteristic 0 means ℚ, otherwise GF(p) for an odd prime p.
class FieldSpec {
 public:
  constexpr FieldSpec() = default;

  constexpr std::uint32_t characteristic() const { return p_; }
  constexpr bool is_rational() const { return p_ == 0; }

  std::string name() const;

  friend constexpr bool operator==(FieldSpec, FieldSpec) = default;

 private:
  friend FieldSpec make_field(std::int64_t p);
  constexpr explicit FieldSpec(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// Throws InvalidField for p = 2, composite p, negative p or p too large for the
/// single-word residue arithmetic.
FieldSpec make_field(std::int64_t p);

inline constexpr FieldSpec kRationals{};

/// Exact element of ℚ or GF(p).
///
/// Rationals are kept reduced with a positive denominator. Small values live in
/// two int64 words; anything that overflows is promoted to a shared GMP rational.
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(FieldSpec f) { return Scalar(f); }
  static Scalar one(FieldSpec f) { return from_integer(1, f); }
  static Scalar from_integer(std::int64_t n, FieldSpec f);
  static Scalar from_fraction(std::int64_t num, std::int64_t den, FieldSpec f);
  static Scalar from_mpq(const mpq_class& q, FieldSpec f);

  FieldSpec field() const { return field_; }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

  /// Residue in [0, p); only meaningful in characteristic p.
  std::uint32_t residue() const;
  mpq_class to_mpq() const;

  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Fused `*this += a * b`, the inner-loop operation of elimination and bracket accumulation.
  void add_product(const Scalar& a, const Scalar& b);

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Reduce a rational scalar into GF(p). Throws DivideByZero if p divides the denominator.
  Scalar reduce_mod(FieldSpec target) const;

  /// "num/den" in characteristic 0, the decimal residue in characteristic p.
  std::string to_string() const;
  static Scalar parse(const std::string& text, FieldSpec f);

 private:
  explicit Scalar(FieldSpec f) : field_(f) {}

  void check_same_field(const Scalar& o) const;
  void set_small_or_big(__int128 num, __int128 den);
  void set_big(mpq_class q);
  void normalize_big();

  FieldSpec field_{};
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

Scalar embed_integer(std::int64_t n, FieldSpec f);

enum class ArithOp { add, sub, mul, div };
Scalar arith(const Scalar& a, const Scalar& b, ArithOp op);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Modular inverse of a in GF(p), a != 0.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

bool is_prime(std::int64_t n);

}  // namespace spinlab
