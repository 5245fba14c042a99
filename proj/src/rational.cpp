#include "blochpoly/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace blochpoly {

Rational::Rational(long num, long den) {
    if (den == 0)
        throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(static_cast<signed long>(num), static_cast<signed long>(den));
    v_.canonicalize();
}

Rational::Rational(const mpz_class &num, const mpz_class &den) {
    if (den == 0)
        throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(num) / mpq_class(den);
    v_.canonicalize();
}

Rational &Rational::operator/=(const Rational &o) {
    if (o.is_zero())
        throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

namespace {

bool all_digits(const std::string &s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

mpz_class parse_integer(const std::string &s) {
    std::string t = s;
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        neg = (t[0] == '-');
        t = t.substr(1);
    }
    if (!all_digits(t))
        throw std::invalid_argument("not an integer: '" + s + "'");
    mpz_class v(t, 10);
    return neg ? mpz_class(-v) : v;
}

} // namespace

Rational Rational::parse(const std::string &text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw std::invalid_argument("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class num = parse_integer(s.substr(0, slash));
        mpz_class den = parse_integer(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator: '" + text + "'");
        return Rational(num, den);
    }

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool neg = false;
        if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
            neg = (head[0] == '-');
            head = head.substr(1);
        }
        if (head.empty())
            head = "0";
        if (!all_digits(head) || !all_digits(frac))
            throw std::invalid_argument("bad decimal literal: '" + text + "'");
        mpz_class num(head + frac, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        if (neg)
            num = -num;
        return Rational(num, den);
    }

    return Rational(parse_integer(s));
}

std::string Rational::str() const {
    if (is_integer())
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

} // namespace blochpoly
