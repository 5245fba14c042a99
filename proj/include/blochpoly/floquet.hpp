#pragma once

#include "blochpoly/hermitian.hpp"
#include "blochpoly/laurent.hpp"
#include "blochpoly/period.hpp"

#include <vector>

namespace blochpoly {

// Periodic rational potential on one fundamental cell: value(m, n) = V(m, n)
// for m in [1, q1], n in [1, q2].
class Potential {
  public:
    Potential(Period period, std::vector<std::vector<Rational>> values);

    static Potential zero(Period period);

    const Period &period() const { return p_; }
    const Rational &value(int m, int n) const; // 1-based
    const std::vector<Rational> &flat() const { return v_; }

  private:
    Period p_;
    std::vector<Rational> v_; // row-major, index (m-1)*q2 + (n-1)
};

// Row/column index of lattice vertex (m, n) under the lexicographic (m, n)
// ordering used throughout.
int vertex_index(const Period &p, int m, int n);

// Q x Q matrix of Laurent polynomials representing the periodic operator
// under quasi-periodic boundary conditions, with the spectral parameter
// already subtracted on the diagonal: entry((m,n),(m,n)) = V(m,n) - lambda.
class SymbolicFloquetMatrix {
  public:
    explicit SymbolicFloquetMatrix(Period p)
        : p_(p), e_(static_cast<size_t>(p.dimension()) * p.dimension()) {}

    const Period &period() const { return p_; }
    int dim() const { return p_.dimension(); }
    LaurentPoly2 &at(int r, int c) { return e_[static_cast<size_t>(r) * dim() + c]; }
    const LaurentPoly2 &at(int r, int c) const {
        return e_[static_cast<size_t>(r) * dim() + c];
    }

  private:
    Period p_;
    std::vector<LaurentPoly2> e_;
};

SymbolicFloquetMatrix build_symbolic(const Potential &v);

// Exact characteristic Laurent polynomial det(matrix) with the lambda
// subtraction already folded in, computed by fraction-free Bareiss
// elimination (exact divisions in the Laurent ring).
LaurentPoly2 charpoly(const Potential &v);

// charpoly shifted by (q2, q1): an ordinary polynomial with zero minimum
// exponent in each variable.
Poly2 cleared_charpoly(const LaurentPoly2 &p, const Period &period);

// Numeric matrix at quasi-momentum k (components in [0,1)); Hermitian.
CMatrix build_numeric(const Potential &v, double k1, double k2);

// Partial derivative of build_numeric with respect to k_j (j = 1 or 2):
// +-2*pi*i times the wraparound phases, zero elsewhere.
CMatrix build_numeric_derivative(const Potential &v, double k1, double k2, int j);

} // namespace blochpoly
