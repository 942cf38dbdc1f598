#pragma once

// Exact ground-field arithmetic: the rationals, or a prime field F_p.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace procell {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Describes the ground field. `p == 0` denotes the rationals.
class Field {
 public:
  constexpr Field() = default;

  static Field rationals() { return Field{}; }
  /// Throws std::invalid_argument unless p is a prime below 2^32.
  static Field prime(std::uint64_t p);
  /// Parses "q" or "gf:p".
  static Field parse(std::string_view text);

  bool is_rational() const noexcept { return p_ == 0; }
  std::uint64_t characteristic() const noexcept { return p_; }
  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit constexpr Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

/// An element of a Field. Values are immutable; binary operations on values
/// from different fields throw FieldMismatch.
class Scalar {
 public:
  /// Rational zero.
  Scalar() = default;
  Scalar(const Field& field, long long value);
  Scalar(const Field& field, const Rational& value);

  static Scalar zero(const Field& field) { return Scalar(field, 0); }
  static Scalar one(const Field& field) { return Scalar(field, 1); }
  /// Parses the canonical text form: "num/den" (den omitted when 1) for the
  /// rationals, a decimal residue for F_p. F_p also accepts negative integers
  /// and "a/b", reduced into the field.
  static Scalar parse(const Field& field, std::string_view text);

  const Field& field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Canonical text form; parse(field(), to_string()) == *this.
  std::string to_string() const;

  /// Throws DivisionByZero when zero.
  Scalar inverse() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Structural equality; both values must belong to the same field.
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Only meaningful for the rationals.
  const Rational& rational() const noexcept { return rational_; }
  /// Only meaningful for F_p.
  std::uint64_t residue() const noexcept { return residue_; }

 private:
  void require_same_field(const Scalar& other) const;

  Field field_;
  Rational rational_;          // used when field_.is_rational()
  std::uint64_t residue_ = 0;  // in [0, p) otherwise
};

/// Scalar inverse as a free function.
inline Scalar scalar_inv(const Scalar& x) { return x.inverse(); }

std::ostream& operator<<(std::ostream& os, const Scalar& x);

}  // namespace procell
