#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cycleweave {

using Int128 = __int128;

std::string int128_to_string(Int128 v);
Int128 int128_from_string(std::string_view s);

/// Exact rational number. Always stored reduced with a positive
/// denominator. Comparisons never overflow (continued-fraction
/// compare); arithmetic throws std::overflow_error past 128 bits.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(Int128 num, Int128 den);

    // accepts "a", "a/b", optional leading '-'
    static Rational parse(std::string_view text);

    Int128 num() const { return num_; }
    Int128 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    // -1, 0, 1; exact, overflow-free
    int cmp(const Rational& o) const;

    Int128 floor_int() const;
    Int128 ceil_int() const;

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return cmp(o) < 0; }
    bool operator<=(const Rational& o) const { return cmp(o) <= 0; }
    bool operator>(const Rational& o) const { return cmp(o) > 0; }
    bool operator>=(const Rational& o) const { return cmp(o) >= 0; }

    std::string str() const;     // "n" or "n/d"
    double to_double() const;    // display only, never used in decisions

  private:
    Int128 num_;
    Int128 den_;
};

Rational pow_rational(const Rational& base, int exponent);

} // namespace cycleweave
