#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace blochpoly {

// Exact rational number. Always kept in lowest terms with a positive
// denominator (GMP canonical form).
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long num, long den);
    Rational(const mpz_class &num, const mpz_class &den);
    explicit Rational(const mpz_class &n) : v_(n) {}
    explicit Rational(const mpq_class &q) : v_(q) { v_.canonicalize(); }

    // Accepts "7", "-3/4", "2.75", "-0.5". Fractions and decimals are exact.
    static Rational parse(const std::string &text);

    const mpz_class num() const { return v_.get_num(); }
    const mpz_class den() const { return v_.get_den(); }
    const mpq_class &raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
    Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
    Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational &a, const Rational &b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational &a, const Rational &b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational &a, const Rational &b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational &a, const Rational &b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational &a, const Rational &b) { return a.v_ >= b.v_; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    double to_double() const { return v_.get_d(); }

    // "p" for integers, "p/q" otherwise. Lossless.
    std::string str() const;

  private:
    mpq_class v_;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

} // namespace blochpoly
