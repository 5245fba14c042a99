#pragma once

#include "blochpoly/unipoly.hpp"

#include <complex>
#include <compare>
#include <map>
#include <vector>

namespace blochpoly {

// Exponent pair of a Laurent monomial z1^e1 * z2^e2. Ordering is
// lexicographic, which fixes the iteration order everywhere.
struct Exp {
    int e1 = 0;
    int e2 = 0;
    auto operator<=>(const Exp &) const = default;
};

enum class Var { z1, z2 };

// Bivariate Laurent polynomial whose coefficients are exact univariate
// polynomials in the spectral parameter. Stored sparsely; no zero
// coefficient is ever kept, so the key set is exactly the support.
class LaurentPoly2 {
  public:
    LaurentPoly2() = default;

    static LaurentPoly2 constant(const Rational &c);
    static LaurentPoly2 monomial(int e1, int e2, UniPoly c = UniPoly(1));

    bool is_zero() const { return t_.empty(); }
    size_t num_terms() const { return t_.size(); }
    const std::map<Exp, UniPoly> &terms() const { return t_; }

    // Coefficient of z1^{e.e1} z2^{e.e2}; zero polynomial if absent.
    const UniPoly &coeff(Exp e) const;

    std::vector<Exp> support() const;
    bool has_negative_exponents() const;

    // Coordinatewise extremes of the support. Undefined on the zero
    // polynomial (throws).
    Exp min_exponents() const;
    Exp max_exponents() const;

    // Lex-maximal term.
    std::pair<Exp, const UniPoly *> leading() const;

    int lambda_degree() const;

    LaurentPoly2 operator-() const;
    LaurentPoly2 &operator+=(const LaurentPoly2 &o);
    LaurentPoly2 &operator-=(const LaurentPoly2 &o);
    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2 &b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2 &b) { return a -= b; }
    friend LaurentPoly2 operator*(const LaurentPoly2 &a, const LaurentPoly2 &b);

    friend bool operator==(const LaurentPoly2 &a, const LaurentPoly2 &b) { return a.t_ == b.t_; }
    friend bool operator!=(const LaurentPoly2 &a, const LaurentPoly2 &b) { return !(a == b); }

    // d/dz1 or d/dz2 with the Laurent rule: c z^e -> c*e z^{e-1}.
    LaurentPoly2 partial(Var v) const;

    // Multiply by the monomial z1^a z2^b (shift every exponent pair).
    LaurentPoly2 shifted(int a, int b) const;

    // Substitute an exact rational value for the spectral parameter.
    LaurentPoly2 specialize(const Rational &lambda) const;

    // Floating evaluation; terms are summed in lexicographic exponent order.
    // Rejects z with a zero component.
    std::complex<double> eval(std::complex<double> z1, std::complex<double> z2,
                              double lambda) const;

    // Exact rational evaluation. x components must be nonzero when negative
    // exponents are present.
    Rational eval_exact(const Rational &x1, const Rational &x2, const Rational &lambda) const;

    void add_term(Exp e, const UniPoly &c);

    std::string str() const;

  private:
    std::map<Exp, UniPoly> t_;
};

// Exact quotient a/b in the Laurent ring; throws std::domain_error when b
// does not divide a.
LaurentPoly2 divexact(const LaurentPoly2 &a, const LaurentPoly2 &b);

// Laurent polynomial with nonnegative support (an ordinary polynomial).
class Poly2 {
  public:
    explicit Poly2(LaurentPoly2 p);
    const LaurentPoly2 &poly() const { return p_; }
    int total_degree() const; // max e1+e2 over the support; -1 for zero
  private:
    LaurentPoly2 p_;
};

// z -> (x1^q1, x2^q2): exponent (e1, e2) becomes (e1*q1, e2*q2).
Poly2 substitute_powers(const Poly2 &f, int q1, int q2);

// Coefficients evaluated at a fixed spectral value, as doubles, for fast
// repeated evaluation on the torus.
struct EvalPoly {
    std::vector<std::pair<Exp, double>> terms; // lexicographic order
    double one_norm = 0.0;

    std::complex<double> eval(std::complex<double> z1, std::complex<double> z2) const;
};

EvalPoly specialize_numeric(const LaurentPoly2 &f, double lambda);

} // namespace blochpoly
