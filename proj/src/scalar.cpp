#include "procell/scalar.hpp"

#include "procell/error.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace procell {
namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t reduce(const BigInt& v, std::uint64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  while (e) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer literal");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  if (i == text.size()) throw ParseError("malformed integer literal '" + std::string(text) + "'");
  for (std::size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9') throw ParseError("malformed integer literal '" + std::string(text) + "'");
  BigInt value(std::string(text.substr(i)));
  return text[0] == '-' ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
    throw std::invalid_argument("field characteristic must be a prime below 2^32, got " + std::to_string(p));
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.substr(0, 3) == "gf:") {
    std::uint64_t p = 0;
    auto digits = text.substr(3);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw ParseError("malformed field descriptor '" + std::string(text) + "'");
    try {
      return prime(p);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("unknown field descriptor '" + std::string(text) + "' (expected q or gf:p)");
}

std::string Field::to_string() const { return is_rational() ? "q" : "gf:" + std::to_string(p_); }

Scalar::Scalar(const Field& field, long long value) : Scalar(field, Rational(value)) {}

Scalar::Scalar(const Field& field, const Rational& value) : field_(field) {
  if (field_.is_rational()) {
    rational_ = value;
    return;
  }
  const auto p = field_.characteristic();
  const auto num = reduce(boost::multiprecision::numerator(value), p);
  const auto den = reduce(boost::multiprecision::denominator(value), p);
  if (den == 0) throw DivisionByZero();
  residue_ = mul_mod(num, pow_mod(den, p - 2, p), p);
}

Scalar Scalar::parse(const Field& field, std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  BigInt num = parse_integer(trim(text.substr(0, slash)));
  BigInt den = 1;
  if (slash != std::string_view::npos) den = parse_integer(trim(text.substr(slash + 1)));
  if (den == 0) throw DivisionByZero();
  if (field.is_rational()) return Scalar(field, Rational(num, den));
  const auto p = field.characteristic();
  const auto d = reduce(den, p);
  if (d == 0) throw DivisionByZero();
  Scalar s;
  s.field_ = field;
  s.residue_ = mul_mod(reduce(num, p), pow_mod(d, p - 2, p), p);
  return s;
}

bool Scalar::is_zero() const { return field_.is_rational() ? rational_ == 0 : residue_ == 0; }

bool Scalar::is_one() const { return field_.is_rational() ? rational_ == 1 : residue_ == 1; }

std::string Scalar::to_string() const {
  if (!field_.is_rational()) return std::to_string(residue_);
  const auto& num = boost::multiprecision::numerator(rational_);
  const auto& den = boost::multiprecision::denominator(rational_);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar r = *this;
  if (field_.is_rational())
    r.rational_ = 1 / rational_;
  else
    r.residue_ = pow_mod(residue_, field_.characteristic() - 2, field_.characteristic());
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_rational())
    r.rational_ = -rational_;
  else if (residue_ != 0)
    r.residue_ = field_.characteristic() - residue_;
  return r;
}

void Scalar::require_same_field(const Scalar& other) const {
  if (!(field_ == other.field_))
    throw FieldMismatch("scalar field mismatch: " + field_.to_string() + " vs " + other.field_.to_string());
}

Scalar& Scalar::operator+=(const Scalar& other) {
  require_same_field(other);
  if (field_.is_rational()) {
    rational_ += other.rational_;
  } else {
    const auto p = field_.characteristic();
    residue_ = (residue_ + other.residue_) % p;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  require_same_field(other);
  if (field_.is_rational())
    rational_ *= other.rational_;
  else
    residue_ = mul_mod(residue_, other.residue_, field_.characteristic());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  require_same_field(other);
  return *this *= other.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.require_same_field(b);
  return a.field_.is_rational() ? a.rational_ == b.rational_ : a.residue_ == b.residue_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

}  // namespace procell
