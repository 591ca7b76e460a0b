#pragma once

// Exact rational numbers.
//
// Values that fit in a pair of 64-bit integers are stored inline and all
// arithmetic on them goes through 128-bit intermediates; anything larger is
// promoted to boost::multiprecision::cpp_rational. A value is stored big
// only when it does not fit the small form.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "latdiam/errors.hpp"

namespace latdiam {

class Rational {
 public:
  using BigInt = boost::multiprecision::cpp_int;
  using BigRational = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t value) {  // NOLINT(google-explicit-constructor)
    if (value == kMin) {
      set_big(BigRational(value));
    } else {
      num_ = value;
    }
  }
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InputError("rational with zero denominator");
    from_wide(num, den);
  }
  explicit Rational(const BigRational& value) { set_big(value); }

  /// Parses "p", "-p" or "p/q".
  static Rational parse(std::string_view text) {
    if (text.empty()) throw InputError("empty rational");
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) {
        return Rational(BigRational(BigInt(std::string(text))));
      }
      BigInt num(std::string(text.substr(0, slash)));
      BigInt den(std::string(text.substr(slash + 1)));
      if (den == 0) throw InputError("rational with zero denominator");
      return Rational(BigRational(num) / BigRational(den));
    } catch (const InputError&) {
      throw;
    } catch (const std::exception&) {
      throw InputError("malformed rational '" + std::string(text) + "'");
    }
  }

  [[nodiscard]] bool is_small() const { return big_ == nullptr; }
  [[nodiscard]] bool is_zero() const { return is_small() && num_ == 0; }
  [[nodiscard]] bool is_integer() const {
    return is_small() ? den_ == 1
                      : boost::multiprecision::denominator(*big_) == 1;
  }
  [[nodiscard]] int sign() const {
    if (is_small()) return (num_ > 0) - (num_ < 0);
    return big_->sign();
  }

  [[nodiscard]] BigInt numerator() const {
    return is_small() ? BigInt(num_) : boost::multiprecision::numerator(*big_);
  }
  [[nodiscard]] BigInt denominator() const {
    return is_small() ? BigInt(den_)
                      : boost::multiprecision::denominator(*big_);
  }
  [[nodiscard]] BigRational to_big() const {
    return is_small() ? BigRational(num_, den_) : *big_;
  }

  [[nodiscard]] std::string to_string() const {
    if (is_small()) {
      return den_ == 1 ? std::to_string(num_)
                       : std::to_string(num_) + "/" + std::to_string(den_);
    }
    auto den = boost::multiprecision::denominator(*big_);
    auto text = boost::multiprecision::numerator(*big_).str();
    return den == 1 ? text : text + "/" + den.str();
  }

  Rational operator-() const {
    if (is_small()) {
      Rational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return Rational(BigRational(-*big_));
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t sum = 0;
        if (!__builtin_add_overflow(a.num_, b.num_, &sum) && sum != kMin) {
          return Rational::raw(sum, 1);
        }
      }
      Wide num = Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_;
      Wide den = Wide(a.den_) * b.den_;
      Rational r;
      r.from_wide(num, den);
      return r;
    }
    return Rational(a.to_big() + b.to_big());
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t diff = 0;
        if (!__builtin_sub_overflow(a.num_, b.num_, &diff) && diff != kMin) {
          return Rational::raw(diff, 1);
        }
      }
      Wide num = Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_;
      Wide den = Wide(a.den_) * b.den_;
      Rational r;
      r.from_wide(num, den);
      return r;
    }
    return Rational(a.to_big() - b.to_big());
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) {
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t prod = 0;
        if (!__builtin_mul_overflow(a.num_, b.num_, &prod) && prod != kMin) {
          return Rational::raw(prod, 1);
        }
      }
      Rational r;
      r.from_wide(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
      return r;
    }
    return Rational(a.to_big() * b.to_big());
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw InputError("rational division by zero");
    if (a.is_small() && b.is_small()) {
      Rational r;
      r.from_wide(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
      return r;
    }
    return Rational(a.to_big() / b.to_big());
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (a.is_small() != b.is_small()) return false;
    if (a.is_small()) return a.num_ == b.num_ && a.den_ == b.den_;
    return *a.big_ == *b.big_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    if (a.is_small() && b.is_small()) {
      Wide lhs = Wide(a.num_) * b.den_;
      Wide rhs = Wide(b.num_) * a.den_;
      return lhs <=> rhs;
    }
    auto big_a = a.to_big();
    auto big_b = b.to_big();
    if (big_a < big_b) return std::strong_ordering::less;
    if (big_b < big_a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

  [[nodiscard]] std::size_t hash() const {
    if (is_small()) {
      return std::hash<std::int64_t>{}(num_) * 31u +
             std::hash<std::int64_t>{}(den_);
    }
    return std::hash<std::string>{}(to_string());
  }

 private:
  using Wide = __int128;
  static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

  static Rational raw(std::int64_t num, std::int64_t den) {
    Rational r;
    r.num_ = num;
    r.den_ = den;
    return r;
  }

  static unsigned __int128 gcd_wide(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      auto t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static BigInt to_bigint(Wide v) {
    bool negative = v < 0;
    auto mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                        : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<std::uint64_t>(mag >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(mag);
    return negative ? BigInt(-out) : out;
  }

  // Reduce num/den (den != 0) and store, promoting when it does not fit.
  void from_wide(Wide num, Wide den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      num_ = 0;
      den_ = 1;
      big_.reset();
      return;
    }
    auto mag = num < 0 ? static_cast<unsigned __int128>(-num)
                       : static_cast<unsigned __int128>(num);
    auto uden = static_cast<unsigned __int128>(den);
    unsigned __int128 g;
    if (mag <= std::numeric_limits<std::uint64_t>::max() &&
        uden <= std::numeric_limits<std::uint64_t>::max()) {
      g = std::gcd(static_cast<std::uint64_t>(mag),
                   static_cast<std::uint64_t>(uden));
    } else {
      g = gcd_wide(mag, uden);
    }
    num /= static_cast<Wide>(g);
    den /= static_cast<Wide>(g);
    if (num > kMin && num <= kMax && den <= kMax) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      big_.reset();
    } else {
      big_ = std::make_shared<const BigRational>(to_bigint(num),
                                                 to_bigint(den));
    }
  }

  void set_big(const BigRational& value) {
    const auto& num = boost::multiprecision::numerator(value);
    const auto& den = boost::multiprecision::denominator(value);
    if (num > kMin && num <= kMax && den <= kMax) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      big_.reset();
    } else {
      num_ = 0;
      den_ = 1;
      big_ = std::make_shared<const BigRational>(value);
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  // Immutable once built.
  std::shared_ptr<const BigRational> big_;
};

}  // namespace latdiam

template <>
struct std::hash<latdiam::Rational> {
  std::size_t operator()(const latdiam::Rational& r) const noexcept {
    return r.hash();
  }
};
