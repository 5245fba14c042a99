#include "blochpoly/floquet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace blochpoly {

Potential::Potential(Period period, std::vector<std::vector<Rational>> values) : p_(period) {
    if (static_cast<int>(values.size()) != p_.q1)
        throw std::invalid_argument("potential has " + std::to_string(values.size()) +
                                    " rows, expected q1 = " + std::to_string(p_.q1));
    v_.reserve(static_cast<size_t>(p_.dimension()));
    for (int m = 0; m < p_.q1; ++m) {
        if (static_cast<int>(values[m].size()) != p_.q2)
            throw std::invalid_argument("potential row " + std::to_string(m + 1) + " has " +
                                        std::to_string(values[m].size()) +
                                        " entries, expected q2 = " + std::to_string(p_.q2));
        for (int n = 0; n < p_.q2; ++n)
            v_.push_back(values[m][n]);
    }
}

Potential Potential::zero(Period period) {
    std::vector<std::vector<Rational>> values(
        period.q1, std::vector<Rational>(period.q2, Rational(0)));
    return Potential(period, std::move(values));
}

const Rational &Potential::value(int m, int n) const {
    return v_[static_cast<size_t>(m - 1) * p_.q2 + (n - 1)];
}

int vertex_index(const Period &p, int m, int n) { return (m - 1) * p.q2 + (n - 1); }

SymbolicFloquetMatrix build_symbolic(const Potential &v) {
    const Period &p = v.period();
    SymbolicFloquetMatrix d(p);
    const UniPoly minus_lambda = UniPoly::monomial(Rational(-1), 1);
    for (int m = 1; m <= p.q1; ++m) {
        for (int n = 1; n <= p.q2; ++n) {
            int r = vertex_index(p, m, n);
            for (int mp = 1; mp <= p.q1; ++mp) {
                for (int np = 1; np <= p.q2; ++np) {
                    int c = vertex_index(p, mp, np);
                    LaurentPoly2 &e = d.at(r, c);
                    if (m == mp && n == np) {
                        e.add_term({0, 0}, UniPoly(v.value(m, n)) + minus_lambda);
                    } else if ((m - mp) * (m - mp) + (n - np) * (n - np) == 1) {
                        e.add_term({0, 0}, UniPoly(1));
                    } else if (mp == 1 && m == p.q1 && n == np) {
                        e.add_term({1, 0}, UniPoly(1));
                    } else if (mp == p.q1 && m == 1 && n == np) {
                        e.add_term({-1, 0}, UniPoly(1));
                    } else if (m == mp && np == 1 && n == p.q2) {
                        e.add_term({0, 1}, UniPoly(1));
                    } else if (m == mp && np == p.q2 && n == 1) {
                        e.add_term({0, -1}, UniPoly(1));
                    }
                }
            }
        }
    }
    return d;
}

namespace {

// Pivot choice inside fraction-free elimination: the sparsest nonzero
// candidate keeps intermediate polynomials small; ties break on row order
// for determinism.
int pick_pivot(const std::vector<LaurentPoly2> &m, int dim, int k) {
    int best = -1;
    size_t best_terms = 0;
    for (int i = k; i < dim; ++i) {
        const LaurentPoly2 &cand = m[static_cast<size_t>(i) * dim + k];
        if (cand.is_zero())
            continue;
        size_t t = cand.num_terms();
        if (best < 0 || t < best_terms) {
            best = i;
            best_terms = t;
        }
    }
    return best;
}

} // namespace

LaurentPoly2 charpoly(const Potential &v) {
    SymbolicFloquetMatrix d = build_symbolic(v);
    const int n = d.dim();
    std::vector<LaurentPoly2> m;
    m.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.push_back(d.at(i, j));

    auto at = [&](int i, int j) -> LaurentPoly2 & { return m[static_cast<size_t>(i) * n + j]; };

    int sign = 1;
    LaurentPoly2 prev = LaurentPoly2::constant(Rational(1));
    for (int k = 0; k + 1 < n; ++k) {
        int piv = pick_pivot(m, n, k);
        if (piv < 0)
            return LaurentPoly2(); // singular over the Laurent ring
        if (piv != k) {
            for (int j = k; j < n; ++j)
                std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        const LaurentPoly2 &pivot = at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const LaurentPoly2 head = std::move(at(i, k));
            at(i, k) = LaurentPoly2();
            for (int j = k + 1; j < n; ++j) {
                LaurentPoly2 t = pivot * at(i, j);
                if (!head.is_zero() && !at(k, j).is_zero())
                    t -= head * at(k, j);
                at(i, j) = divexact(t, prev);
            }
        }
        prev = pivot;
    }
    LaurentPoly2 det = at(n - 1, n - 1);
    if (sign < 0)
        det = -det;
    return det;
}

Poly2 cleared_charpoly(const LaurentPoly2 &p, const Period &period) {
    return Poly2(p.shifted(period.q2, period.q1));
}

CMatrix build_numeric(const Potential &v, double k1, double k2) {
    const Period &p = v.period();
    const int n = p.dimension();
    CMatrix d(n);
    const double tp = 2.0 * std::numbers::pi;
    const std::complex<double> w1 = std::polar(1.0, tp * k1);
    const std::complex<double> w2 = std::polar(1.0, tp * k2);
    for (int m = 1; m <= p.q1; ++m) {
        for (int nn = 1; nn <= p.q2; ++nn) {
            int r = vertex_index(p, m, nn);
            d.at(r, r) = v.value(m, nn).to_double();
            for (int mp = 1; mp <= p.q1; ++mp) {
                for (int np = 1; np <= p.q2; ++np) {
                    if (m == mp && nn == np)
                        continue;
                    int c = vertex_index(p, mp, np);
                    if ((m - mp) * (m - mp) + (nn - np) * (nn - np) == 1)
                        d.at(r, c) = 1.0;
                    else if (mp == 1 && m == p.q1 && nn == np)
                        d.at(r, c) = w1;
                    else if (mp == p.q1 && m == 1 && nn == np)
                        d.at(r, c) = std::conj(w1);
                    else if (m == mp && np == 1 && nn == p.q2)
                        d.at(r, c) = w2;
                    else if (m == mp && np == p.q2 && nn == 1)
                        d.at(r, c) = std::conj(w2);
                }
            }
        }
    }
    return d;
}

CMatrix build_numeric_derivative(const Potential &v, double k1, double k2, int j) {
    if (j != 1 && j != 2)
        throw std::invalid_argument("derivative index must be 1 or 2");
    const Period &p = v.period();
    const int n = p.dimension();
    CMatrix d(n);
    const double tp = 2.0 * std::numbers::pi;
    const std::complex<double> i2pi(0.0, tp);
    const std::complex<double> w = std::polar(1.0, tp * (j == 1 ? k1 : k2));
    for (int m = 1; m <= p.q1; ++m) {
        for (int nn = 1; nn <= p.q2; ++nn) {
            int r = vertex_index(p, m, nn);
            if (j == 1) {
                if (m == p.q1)
                    d.at(r, vertex_index(p, 1, nn)) = i2pi * w;
                if (m == 1)
                    d.at(r, vertex_index(p, p.q1, nn)) = -i2pi * std::conj(w);
            } else {
                if (nn == p.q2)
                    d.at(r, vertex_index(p, m, 1)) = i2pi * w;
                if (nn == 1)
                    d.at(r, vertex_index(p, m, p.q2)) = -i2pi * std::conj(w);
            }
        }
    }
    return d;
}

} // namespace blochpoly
