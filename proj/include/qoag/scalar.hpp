#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "qoag/error.hpp"

namespace qoag {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Exact rational number. Values whose numerator and denominator fit in
// 64 bits stay inline; anything larger is promoted to a shared BigRational.
// The representation is canonical, so equality is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : num_(v) {}
  Scalar(long v) : num_(v) {}
  Scalar(long long v) : num_(v) {}
  explicit Scalar(const BigInt& v) { assign(BigRational(v)); }
  explicit Scalar(const BigRational& v) { assign(v); }

  static Scalar fraction(long long n, long long d) {
    if (d == 0) throw std::domain_error("zero denominator");
    return from_i128(n, d);
  }

  // Accepts "12", "-3", "5/4", " -7/2 ".
  static Scalar parse(std::string_view s) {
    auto trim = [](std::string_view t) {
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
      return t;
    };
    s = trim(s);
    auto parse_int = [](std::string_view t) {
      if (t.empty()) throw std::invalid_argument("empty number");
      std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
      if (i == t.size()) throw std::invalid_argument("bad number");
      for (std::size_t j = i; j < t.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(t[j]))) throw std::invalid_argument("bad number: " + std::string(t));
      return BigInt(std::string(t[0] == '+' ? t.substr(1) : t));
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Scalar(parse_int(s));
    BigInt n = parse_int(trim(s.substr(0, slash)));
    BigInt d = parse_int(trim(s.substr(slash + 1)));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Scalar(BigRational(n, d));
  }

  bool is_big() const { return static_cast<bool>(big_); }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const {
    return big_ ? boost::multiprecision::denominator(*big_) == 1 : den_ == 1;
  }
  int sign() const {
    if (big_) return big_->sign();
    return (num_ > 0) - (num_ < 0);
  }

  BigInt numerator() const { return big_ ? BigInt(boost::multiprecision::numerator(*big_)) : BigInt(num_); }
  BigInt denominator() const { return big_ ? BigInt(boost::multiprecision::denominator(*big_)) : BigInt(den_); }
  BigRational to_big() const { return big_ ? *big_ : BigRational(num_, den_); }

  std::optional<long long> to_int64() const {
    if (big_ || den_ != 1) return std::nullopt;
    return num_;
  }

  std::string str() const {
    if (big_) return big_->str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  // Integer residue in [0, n).
  Scalar mod(long long n) const {
    if (!is_integer()) throw std::domain_error("mod of a non-integer");
    if (!big_) {
      long long r = num_ % n;
      if (r < 0) r += n;
      return Scalar(r);
    }
    BigInt r = numerator() % n;
    if (r < 0) r += n;
    return Scalar(r);
  }

  // Exact integer division; caller guarantees divisibility or accepts a fraction.
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.big_ && !b.big_) {
      __int128 n = static_cast<__int128>(a.num_) * b.den_;
      __int128 d = static_cast<__int128>(a.den_) * b.num_;
      return from_i128(n, d);
    }
    return Scalar(a.to_big() / b.to_big());
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        long long r;
        if (!__builtin_add_overflow(a.num_, b.num_, &r)) return Scalar(r);
      }
      __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      return from_i128(n, d);
    }
    return Scalar(a.to_big() + b.to_big());
  }
  friend Scalar operator-(const Scalar& a) {
    if (!a.big_ && a.num_ != INT64_MIN) {
      Scalar r;
      r.num_ = -a.num_;
      r.den_ = a.den_;
      return r;
    }
    return Scalar(-a.to_big());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        long long r;
        if (!__builtin_mul_overflow(a.num_, b.num_, &r)) return Scalar(r);
      }
      __int128 n = static_cast<__int128>(a.num_) * b.num_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      return from_i128(n, d);
    }
    return Scalar(a.to_big() * b.to_big());
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) return a.num_ <=> b.num_;
      __int128 l = static_cast<__int128>(a.num_) * b.den_;
      __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l <=> r;
    }
    BigRational x = a.to_big(), y = b.to_big();
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    if (big_) return std::hash<std::string>{}(big_->str());
    return std::hash<long long>{}(num_) * 1000003u ^ std::hash<long long>{}(den_);
  }

 private:
  long long num_ = 0;
  long long den_ = 1;
  std::shared_ptr<const BigRational> big_;

  static BigInt i128_to_big(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-r) : r;
  }

  static Scalar from_i128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    unsigned __int128 a = n < 0 ? -static_cast<unsigned __int128>(n) : static_cast<unsigned __int128>(n);
    unsigned __int128 b = static_cast<unsigned __int128>(d);
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= static_cast<__int128>(a);
      d /= static_cast<__int128>(a);
    }
    if (n == 0) d = 1;
    if (n >= INT64_MIN && n <= INT64_MAX && d <= INT64_MAX) {
      Scalar r;
      r.num_ = static_cast<long long>(n);
      r.den_ = static_cast<long long>(d);
      return r;
    }
    return Scalar(BigRational(i128_to_big(n), i128_to_big(d)));
  }

  void assign(const BigRational& v) {
    const BigInt& n = boost::multiprecision::numerator(v);
    const BigInt& d = boost::multiprecision::denominator(v);
    static const BigInt lo = BigInt(INT64_MIN), hi = BigInt(INT64_MAX);
    if (n >= lo && n <= hi && d <= hi) {
      num_ = static_cast<long long>(n);
      den_ = static_cast<long long>(d);
      big_.reset();
    } else {
      num_ = 0;
      den_ = 1;
      big_ = std::make_shared<const BigRational>(v);
    }
  }
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace qoag

template <>
struct std::hash<qoag::Scalar> {
  std::size_t operator()(const qoag::Scalar& s) const { return s.hash(); }
};
