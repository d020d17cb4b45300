#include "nlm/rational.hpp"

#include <cctype>
#include <cstdio>
#include <ostream>

#include "nlm/errors.hpp"

namespace nlm {

Rational::Rational(long num, long den) {
    if (den == 0) throw UsageError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    std::size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    std::string s = text.substr(begin, end - begin);
    if (s.empty()) throw UsageError("empty rational literal");

    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }

    auto digits = [&](std::size_t from, std::size_t to) {
        if (from == to) return false;
        for (std::size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };

    std::size_t slash = s.find('/', pos);
    std::size_t dot = s.find('.', pos);
    mpq_class value;
    if (slash != std::string::npos) {
        if (dot != std::string::npos || !digits(pos, slash) || !digits(slash + 1, s.size()))
            throw UsageError("malformed rational literal: " + text);
        mpz_class num(s.substr(pos, slash - pos));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw UsageError("rational with zero denominator: " + text);
        value = mpq_class(num) / mpq_class(den);
    } else if (dot != std::string::npos) {
        // Exact decimal fraction: digits '.' digits (either side may be empty,
        // but not both).
        std::string int_part = s.substr(pos, dot - pos);
        std::string frac_part = s.substr(dot + 1);
        if (int_part.empty() && frac_part.empty())
            throw UsageError("malformed rational literal: " + text);
        if (!int_part.empty() && !digits(pos, dot))
            throw UsageError("malformed rational literal: " + text);
        if (!frac_part.empty() && !digits(dot + 1, s.size()))
            throw UsageError("malformed rational literal: " + text);
        mpz_class num(int_part.empty() ? std::string("0") : int_part);
        for (char c : frac_part) {
            num *= 10;
            num += c - '0';
        }
        mpz_class den(1);
        for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
        value = mpq_class(num) / mpq_class(den);
    } else {
        if (!digits(pos, s.size())) throw UsageError("malformed rational literal: " + text);
        value = mpq_class(mpz_class(s.substr(pos)));
    }
    if (negative) value = -value;
    value.canonicalize();
    return Rational(std::move(value));
}

Rational Rational::pow2(int exponent) {
    mpz_class big(1);
    mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), exponent < 0 ? -exponent : exponent);
    mpq_class q = exponent < 0 ? mpq_class(1) / mpq_class(big) : mpq_class(big);
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::fraction_str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal_str() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v_.get_d());
    return buf;
}

Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }

Rational& Rational::operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
}
Rational& Rational::operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
}
Rational& Rational::operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
}
Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw UsageError("division by zero rational");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.fraction_str(); }

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }
Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

}  // namespace nlm
