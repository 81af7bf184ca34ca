#pragma once

// Exact scalars of the form  sum_m q_m * sqrt(m)  with q_m rational and m
// squarefree. Square roots of distinct squarefree integers are linearly
// independent over Q, so the sparse map representation is canonical and
// equality is map equality.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace graphint {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Splits n > 0 as k^2 * m with m squarefree; returns {k, m}.
inline std::pair<std::uint64_t, std::uint64_t> square_decompose(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("square_decompose(0)");
  std::uint64_t k = 1, m = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      k *= p;
    }
    if (n % p == 0) {
      n /= p;
      m *= p;
    }
  }
  return {k, m * n};
}

inline bool is_squarefree(std::uint64_t m) { return m > 0 && square_decompose(m).first == 1; }

namespace detail {

/// Rational number stored as a reduced int64 fraction while it fits (the
/// numerator kept away from INT64_MIN), and as an arbitrary-precision Rational
/// otherwise. The small form is used exactly when the value fits, so
/// representations are canonical.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(std::int64_t n) {  // NOLINT(google-explicit-constructor)
    if (n == INT64_MIN)
      big_ = std::make_unique<Rational>(n);
    else
      num_ = n;
  }
  explicit Coefficient(const Rational& q) { assign(q); }

  Coefficient(const Coefficient& o)
      : num_(o.num_), den_(o.den_), big_(o.big_ ? std::make_unique<Rational>(*o.big_) : nullptr) {}
  Coefficient(Coefficient&&) noexcept = default;
  Coefficient& operator=(const Coefficient& o) {
    if (this != &o) *this = Coefficient(o);
    return *this;
  }
  Coefficient& operator=(Coefficient&&) noexcept = default;

  bool is_zero() const noexcept { return !big_ && num_ == 0; }

  Rational to_rational() const {
    if (big_) return *big_;
    return Rational(Integer(num_), Integer(den_));
  }
  double to_double() const {
    return big_ ? big_->convert_to<double>() : static_cast<double>(num_) / static_cast<double>(den_);
  }

  Coefficient operator-() const {
    if (!big_ && num_ != INT64_MIN) return Coefficient(-num_, den_, Reduced{});
    return Coefficient(Rational(-to_rational()));
  }

  friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    if (!a.big_ && !b.big_) {
      std::int64_t g = std::gcd(a.den_, b.den_);
      __int128 n = static_cast<__int128>(a.num_) * (b.den_ / g) + static_cast<__int128>(b.num_) * (a.den_ / g);
      __int128 d = static_cast<__int128>(a.den_ / g) * b.den_;
      return from_wide(n, d);
    }
    return Coefficient(Rational(a.to_rational() + b.to_rational()));
  }
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b) { return a + (-b); }

  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Coefficient();
      // Cross-cancelling first keeps the result reduced.
      std::int64_t g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
      std::int64_t n, d;
      if (!__builtin_mul_overflow(a.num_ / g1, b.num_ / g2, &n) &&
          !__builtin_mul_overflow(a.den_ / g2, b.den_ / g1, &d))
        return Coefficient(n, d, Reduced{});
    }
    return Coefficient(Rational(a.to_rational() * b.to_rational()));
  }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }

  std::string str() const {
    if (big_) return to_string(*big_);
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  struct Reduced {};
  Coefficient(std::int64_t n, std::int64_t d, Reduced) : num_(n), den_(d) {}

  static unsigned __int128 ugcd(unsigned __int128 a, unsigned __int128 b) {
    while (b) {
      auto t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Coefficient from_wide(__int128 n, __int128 d) {
    if (n == 0) return Coefficient();
    unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(-n) : static_cast<unsigned __int128>(n);
    unsigned __int128 g = ugcd(un, static_cast<unsigned __int128>(d));
    n /= static_cast<__int128>(g);
    d /= static_cast<__int128>(g);
    if (n > INT64_MIN && n <= INT64_MAX && d <= INT64_MAX)
      return Coefficient(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d), Reduced{});
    Coefficient c;
    c.big_ = std::make_unique<Rational>(wide_to_integer(n), wide_to_integer(d));
    return c;
  }

  static Integer wide_to_integer(__int128 x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
    Integer r = Integer(static_cast<std::uint64_t>(u >> 64));
    r <<= 64;
    r += Integer(static_cast<std::uint64_t>(u));
    return neg ? Integer(-r) : r;
  }

  void assign(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const Integer& n = numerator(q);
    const Integer& d = denominator(q);
    if (n > INT64_MIN && n <= INT64_MAX && d <= INT64_MAX) {
      num_ = n.convert_to<std::int64_t>();
      den_ = d.convert_to<std::int64_t>();
      big_.reset();
    } else {
      big_ = std::make_unique<Rational>(q);
    }
  }

  std::int64_t num_ = 0, den_ = 1;
  std::unique_ptr<Rational> big_;
};

}  // namespace detail

class RadicalScalar {
 public:
  using Term = std::pair<std::uint64_t, Rational>;  // (squarefree radicand, coefficient)

  RadicalScalar() = default;
  RadicalScalar(long long q) {  // NOLINT(google-explicit-constructor)
    if (q != 0) terms_.emplace_back(1, detail::Coefficient(static_cast<std::int64_t>(q)));
  }
  RadicalScalar(const Rational& q) {  // NOLINT(google-explicit-constructor)
    if (q != 0) terms_.emplace_back(1, detail::Coefficient(q));
  }

  /// q * sqrt(n) for any n >= 0 (reduced to squarefree form).
  static RadicalScalar sqrt(std::uint64_t n, const Rational& q = 1) {
    if (n == 0 || q == 0) return {};
    auto [k, m] = square_decompose(n);
    RadicalScalar r;
    r.terms_.emplace_back(m, detail::Coefficient(Rational(q * Rational(Integer(k)))));
    return r;
  }

  /// 1 / sqrt(n) = sqrt(n) / n, for n > 0.
  static RadicalScalar inv_sqrt(std::uint64_t n) {
    if (n == 0) throw std::domain_error("inv_sqrt(0)");
    return sqrt(n, Rational(Integer(1), Integer(n)));
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1); }
  /// The coefficient of sqrt(1).
  Rational rational_part() const {
    return (!terms_.empty() && terms_[0].first == 1) ? terms_[0].second.to_rational() : Rational(0);
  }
  /// (radicand, coefficient) pairs in increasing radicand order.
  std::vector<Term> terms() const {
    std::vector<Term> out;
    for (const auto& [m, q] : terms_) out.emplace_back(m, q.to_rational());
    return out;
  }

  double to_double() const {
    double s = 0;
    for (const auto& [m, q] : terms_) s += q.to_double() * std::sqrt(static_cast<double>(m));
    return s;
  }

  RadicalScalar& operator+=(const RadicalScalar& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    if (terms_.size() == 1 && o.terms_.size() == 1 && terms_[0].first == o.terms_[0].first) {
      terms_[0].second = terms_[0].second + o.terms_[0].second;
      if (terms_[0].second.is_zero()) terms_.clear();
      return *this;
    }
    Storage out;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == terms_.end() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        auto s = a->second + b->second;
        if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  RadicalScalar& operator-=(const RadicalScalar& o) { return *this += -o; }

  RadicalScalar operator-() const {
    RadicalScalar r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
  friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }

  /// sqrt(a) * sqrt(b) = g * sqrt((a/g)(b/g)) with g = gcd(a, b); the
  /// radicand stays squarefree because a/g and b/g are coprime squarefree.
  friend RadicalScalar operator*(const RadicalScalar& x, const RadicalScalar& y) {
    RadicalScalar r;
    if (x.is_zero() || y.is_zero()) return r;
    if (x.terms_.size() == 1 && y.terms_.size() == 1) {
      r.terms_.push_back(mul_term(x.terms_[0], y.terms_[0]));
      return r;
    }
    for (const auto& a : x.terms_)
      for (const auto& b : y.terms_) {
        RadicalScalar t;
        t.terms_.push_back(mul_term(a, b));
        r += t;
      }
    return r;
  }
  RadicalScalar& operator*=(const RadicalScalar& o) { return *this = *this * o; }

  friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
    return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end());
  }

  /// Canonical text: terms in increasing radicand order, "q*sqrt(m)" or "q" for m = 1.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, q] : terms_) {
      std::string t = q.str();
      if (m != 1) t += "*sqrt(" + std::to_string(m) + ")";
      if (!out.empty() && t.front() != '-') out += '+';
      out += t;
    }
    return out;
  }

 private:
  using InnerTerm = std::pair<std::uint64_t, detail::Coefficient>;
  using Storage = boost::container::small_vector<InnerTerm, 1>;

  static InnerTerm mul_term(const InnerTerm& a, const InnerTerm& b) {
    std::uint64_t g = std::gcd(a.first, b.first);
    std::uint64_t m;
    if (__builtin_mul_overflow(a.first / g, b.first / g, &m)) throw std::overflow_error("radicand overflow");
    return {m, a.second * b.second * detail::Coefficient(static_cast<std::int64_t>(g))};
  }

  Storage terms_;  // sorted by radicand, no zero coefficients
};

}  // namespace graphint
