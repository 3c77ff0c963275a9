#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace pnull {

/// Exact rational in lowest terms. All measure values flow through this type.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

    /// 1/2^exponent.
    static Rational dyadic(std::uint64_t exponent);
    static Rational pow(const Rational& base, std::uint64_t exponent);
    /// Parses "p/q", "p", "0", "1".
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return value_; }
    bool is_zero() const { return sgn(value_) == 0; }
    bool is_dyadic() const;

    /// "p/q" in lowest terms; "0" and "1" (and integers) without a denominator.
    std::string to_string() const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) { value_ /= o.value_; return *this; }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    mpq_class value_;
};

/// Sum of count_l / 2^l over a histogram indexed by level. Dyadic masses are
/// accumulated as integer counts and converted once.
Rational dyadic_sum(const std::vector<std::uint64_t>& counts_by_level);

}  // namespace pnull
