#include "cycleweave/rational.hpp"

#include <cctype>

namespace cycleweave {

namespace {

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

Int128 gcd128(Int128 a, Int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        Int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int128 checked_mul(Int128 a, Int128 b) {
    Int128 out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("rational arithmetic overflow (128-bit)");
    return out;
}

Int128 checked_add(Int128 a, Int128 b) {
    Int128 out;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("rational arithmetic overflow (128-bit)");
    return out;
}

Int128 floor_div(Int128 a, Int128 b) {
    // b > 0
    Int128 q = a / b;
    if (a % b != 0 && a < 0)
        --q;
    return q;
}

// compare a/b vs c/d with b, d > 0, without forming cross products
int cmp_frac(Int128 a, Int128 b, Int128 c, Int128 d) {
    for (;;) {
        Int128 qa = floor_div(a, b);
        Int128 qc = floor_div(c, d);
        if (qa != qc)
            return qa < qc ? -1 : 1;
        Int128 ra = a - qa * b; // 0 <= ra < b
        Int128 rc = c - qc * d; // 0 <= rc < d
        if (ra == 0 && rc == 0)
            return 0;
        if (ra == 0)
            return -1;
        if (rc == 0)
            return 1;
        // ra/b ? rc/d  ==  d/rc ? b/ra  (reciprocal of each side + swap)
        Int128 nb = rc, nc = b, nd = ra;
        a = d;
        b = nb;
        c = nc;
        d = nd;
    }
}

} // namespace

Rational::Rational(Int128 num, Int128 den) {
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

int Rational::cmp(const Rational& o) const {
    return cmp_frac(num_, den_, o.num_, o.den_);
}

Int128 Rational::floor_int() const { return floor_div(num_, den_); }

Int128 Rational::ceil_int() const {
    Int128 f = floor_div(num_, den_);
    return (num_ % den_ == 0) ? f : f + 1;
}

Rational Rational::operator+(const Rational& o) const {
    Int128 g = gcd128(den_, o.den_);
    Int128 l = checked_mul(den_ / g, o.den_); // lcm
    Int128 left = checked_mul(num_, o.den_ / g);
    Int128 right = checked_mul(o.num_, den_ / g);
    return Rational(checked_add(left, right), l);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    // cross-reduce before multiplying
    Int128 g1 = gcd128(num_, o.den_);
    Int128 g2 = gcd128(o.num_, den_);
    Int128 n = checked_mul(num_ / g1, o.num_ / g2);
    Int128 d = checked_mul(den_ / g2, o.den_ / g1);
    return Rational(n, d);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0)
        throw std::invalid_argument("rational division by zero");
    return *this * Rational(o.den_, o.num_);
}

std::string Rational::str() const {
    if (den_ == 1)
        return int128_to_string(num_);
    return int128_to_string(num_) + "/" + int128_to_string(den_);
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(int128_from_string(text), 1);
    Int128 n = int128_from_string(text.substr(0, slash));
    Int128 d = int128_from_string(text.substr(slash + 1));
    return Rational(n, d);
}

Rational pow_rational(const Rational& base, int exponent) {
    if (exponent < 0)
        return Rational(1) / pow_rational(base, -exponent);
    Rational out(1);
    for (int i = 0; i < exponent; ++i)
        out = out * base;
    return out;
}

std::string int128_to_string(Int128 v) {
    if (v == 0)
        return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg)
        digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

Int128 int128_from_string(std::string_view s) {
    // trim spaces
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty())
        throw std::invalid_argument("empty integer literal");
    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        throw std::invalid_argument("bare sign is not an integer");
    // accumulate negatively so the most negative value parses too
    Int128 out = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("invalid digit in integer literal");
        Int128 next;
        if (__builtin_mul_overflow(out, (Int128)10, &next) ||
            __builtin_sub_overflow(next, (Int128)(c - '0'), &next))
            throw std::overflow_error("integer literal exceeds 128 bits");
        out = next;
    }
    if (neg)
        return out;
    if (__builtin_sub_overflow((Int128)0, out, &out))
        throw std::overflow_error("integer literal exceeds 128 bits");
    return out;
}

} // namespace cycleweave
