#include "gcvx/rational.hpp"

#include <ostream>

#include "gcvx/errors.hpp"

namespace gcvx::kernel {

Rational::Rational(long value) : q_(value) {}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw DomainError("malformed rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::numerator_str() const { return q_.get_num().get_str(); }
std::string Rational::denominator_str() const { return q_.get_den().get_str(); }

bool Rational::in_unit_interval() const { return sign() >= 0 && q_ <= 1; }

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return Rational(mpq_class(a.q_ / b.q_));
}
Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int c = cmp(a.q_, b.q_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::size_t Rational::hash() const {
  // Canonical form makes the text a faithful key.
  return std::hash<std::string>{}(str());
}

Rational mix(const Rational& a, const Rational& b, const Rational& alpha) {
  return (Rational(1) - alpha) * a + alpha * b;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DomainError("dot product of vectors with different dimensions");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out + ")";
}

}  // namespace gcvx::kernel
