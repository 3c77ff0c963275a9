#include "pnull/rational.hpp"

#include "pnull/error.hpp"

namespace pnull {

Rational::Rational(long num, long den) {
    if (den == 0) fail(ErrorKind::InvalidArgument, "rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::dyadic(std::uint64_t exponent) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
    return Rational(mpq_class(mpz_class(1), den));
}

Rational Rational::pow(const Rational& base, std::uint64_t exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.value_.get_den_mpz_t(), exponent);
    return Rational(mpq_class(num, den));
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) fail(ErrorKind::Parse, "empty rational");
    for (char c : s) {
        if (!((c >= '0' && c <= '9') || c == '/' || c == '-')) {
            fail(ErrorKind::Parse, "malformed rational '" + s + "'");
        }
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0 || sgn(q.get_den()) == 0) {
        fail(ErrorKind::Parse, "malformed rational '" + s + "'");
    }
    return Rational(q);
}

bool Rational::is_dyadic() const {
    const mpz_class& den = value_.get_den();
    return mpz_popcount(den.get_mpz_t()) == 1;
}

std::string Rational::to_string() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational dyadic_sum(const std::vector<std::uint64_t>& counts_by_level) {
    if (counts_by_level.empty()) return Rational(0);
    const std::size_t top = counts_by_level.size() - 1;
    // Scale everything to the common denominator 2^top.
    mpz_class num = 0;
    for (std::size_t level = 0; level <= top; ++level) {
        if (counts_by_level[level] == 0) continue;
        mpz_class term = static_cast<unsigned long>(counts_by_level[level]);
        mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), top - level);
        num += term;
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, top);
    return Rational(mpq_class(num, den));
}

}  // namespace pnull
