#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gcvx::kernel {

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Always held in canonical form: the denominator is positive and coprime to
/// the numerator. Values are immutable; every operator returns a fresh value.
class Rational {
 public:
  Rational() = default;
  Rational(long value);  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);

  /// Parses "p/q", "p" or "-p/q". Throws DomainError on malformed text or q = 0.
  static Rational parse(std::string_view text);

  /// Canonical "p/q" text; integers carry an explicit "/1".
  [[nodiscard]] std::string str() const;

  [[nodiscard]] std::string numerator_str() const;
  [[nodiscard]] std::string denominator_str() const;
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool in_unit_interval() const;
  [[nodiscard]] Rational abs() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  /// Throws DomainError on division by zero.
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  [[nodiscard]] std::size_t hash() const;

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

/// (1 - alpha) * a + alpha * b.
Rational mix(const Rational& a, const Rational& b, const Rational& alpha);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b);
std::string to_string(const Vec& v);

}  // namespace gcvx::kernel

template <>
struct std::hash<gcvx::kernel::Rational> {
  std::size_t operator()(const gcvx::kernel::Rational& r) const noexcept { return r.hash(); }
};
