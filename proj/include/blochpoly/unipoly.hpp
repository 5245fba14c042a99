#pragma once

#include "blochpoly/rational.hpp"

#include <iosfwd>
#include <vector>

namespace blochpoly {

// Dense univariate polynomial in the spectral parameter, with exact rational
// coefficients. coeff(i) multiplies lambda^i. The zero polynomial is the
// empty coefficient vector; otherwise the top coefficient is nonzero.
class UniPoly {
  public:
    UniPoly() = default;
    UniPoly(const Rational &c);
    UniPoly(int c) : UniPoly(Rational(c)) {}
    explicit UniPoly(std::vector<Rational> coeffs);

    // The monomial c * lambda^k.
    static UniPoly monomial(const Rational &c, int k);

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int i) const;
    const Rational &leading() const;
    const std::vector<Rational> &coeffs() const { return c_; }

    UniPoly operator-() const;
    UniPoly &operator+=(const UniPoly &o);
    UniPoly &operator-=(const UniPoly &o);
    friend UniPoly operator+(UniPoly a, const UniPoly &b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly &b) { return a -= b; }
    friend UniPoly operator*(const UniPoly &a, const UniPoly &b);
    UniPoly &operator*=(const UniPoly &o) { return *this = *this * o; }

    void scale(const Rational &c);

    // Accumulate a*b into this polynomial without a temporary.
    void add_mul(const UniPoly &a, const UniPoly &b);

    friend bool operator==(const UniPoly &a, const UniPoly &b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly &a, const UniPoly &b) { return !(a == b); }

    Rational eval(const Rational &x) const;
    double eval(double x) const;

    double one_norm() const;

    // Exact quotient a/b; throws std::domain_error if the division leaves a
    // remainder or b is zero.
    static UniPoly divexact(const UniPoly &a, const UniPoly &b);

    std::string str() const;

  private:
    void trim();
    std::vector<Rational> c_;
};

std::ostream &operator<<(std::ostream &os, const UniPoly &p);

} // namespace blochpoly
