#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blochpoly/cli.hpp"
#include "blochpoly/floquet.hpp"
#include "blochpoly/gcd.hpp"
#include "blochpoly/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

using namespace blochpoly;

namespace {

const LaurentPoly2 &charpoly43_seed1() {
    static LaurentPoly2 cp = charpoly(generate_potential(4, 3, 1));
    return cp;
}

// Closed-form eigenvalues of the free operator: plane waves diagonalize the
// wrapped Laplacian, giving 2cos(2pi(k1+j1)/q1) + 2cos(2pi(k2+j2)/q2).
std::vector<double> free_eigenvalues(const Period &p, double k1, double k2) {
    std::vector<double> v;
    for (int j1 = 0; j1 < p.q1; ++j1)
        for (int j2 = 0; j2 < p.q2; ++j2)
            v.push_back(2.0 * std::cos(2.0 * std::numbers::pi * (k1 + j1) / p.q1) +
                        2.0 * std::cos(2.0 * std::numbers::pi * (k2 + j2) / p.q2));
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("potential construction validates dimensions") {
    CHECK_THROWS_AS(Period(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(Period(3, 2), std::invalid_argument);
    CHECK(Period(4, 3).dimension() == 12);
    CHECK(Period(4, 3).coprime());
    CHECK_FALSE(Period(4, 4).coprime());

    CHECK_THROWS_AS(Potential(Period(3, 3), {{Rational(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(Potential(Period(3, 3),
                              {{Rational(0), Rational(0), Rational(0)},
                               {Rational(0), Rational(0)},
                               {Rational(0), Rational(0), Rational(0)}}),
                    std::invalid_argument);
    Potential z = Potential::zero(Period(3, 3));
    CHECK(z.value(2, 3) == Rational(0));
}

TEST_CASE("vertex indexing is lexicographic in (m, n)") {
    Period p(4, 3);
    int expect = 0;
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 3; ++n)
            CHECK(vertex_index(p, m, n) == expect++);
}

TEST_CASE("symbolic matrix matches the 9x9 display for q=(3,3)") {
    // Entry codes: V diagonal, 1 neighbor, a/A = z1/z1^-1, b/B = z2/z2^-1.
    static const char *pattern[9] = {
        "V1B100A00", // (1,1)
        "1V10100A0", // (1,2)
        "b1V00100A", // (1,3)
        "100V1B100", // (2,1)
        "0101V1010", // (2,2)
        "001b1V001", // (2,3)
        "a00100V1B", // (3,1)
        "0a00101V1", // (3,2)
        "00a001b1V", // (3,3)
    };

    SplitMix64 rng(11);
    std::vector<std::vector<Rational>> vals(3);
    for (auto &row : vals)
        for (int n = 0; n < 3; ++n)
            row.emplace_back(rng.int_in(-3, 3));
    Potential v(Period(3, 3), vals);
    SymbolicFloquetMatrix d = build_symbolic(v);

    const LaurentPoly2 one = LaurentPoly2::constant(Rational(1));
    const LaurentPoly2 z1 = LaurentPoly2::monomial(1, 0);
    const LaurentPoly2 z1i = LaurentPoly2::monomial(-1, 0);
    const LaurentPoly2 z2 = LaurentPoly2::monomial(0, 1);
    const LaurentPoly2 z2i = LaurentPoly2::monomial(0, -1);

    for (int r = 0; r < 9; ++r) {
        std::string row = pattern[r];
        REQUIRE(row.size() == 9);
        for (int c = 0; c < 9; ++c) {
            const LaurentPoly2 &e = d.at(r, c);
            int m = r / 3 + 1, n = r % 3 + 1;
            switch (row[static_cast<size_t>(c)]) {
            case 'V': // V(m,n) - lambda on the diagonal
                CHECK(e == LaurentPoly2::monomial(
                               0, 0, UniPoly(v.value(m, n)) +
                                         UniPoly::monomial(Rational(-1), 1)));
                break;
            case '1':
                CHECK(e == one);
                break;
            case 'a':
                CHECK(e == z1);
                break;
            case 'A':
                CHECK(e == z1i);
                break;
            case 'b':
                CHECK(e == z2);
                break;
            case 'B':
                CHECK(e == z2i);
                break;
            default:
                CHECK(e.is_zero());
            }
        }
    }
}

TEST_CASE("each row has exactly four nonzero off-diagonal entries") {
    for (auto [q1, q2] : {std::pair{3, 3}, {4, 3}, {5, 4}}) {
        Potential v = Potential::zero(Period(q1, q2));
        SymbolicFloquetMatrix d = build_symbolic(v);
        for (int r = 0; r < d.dim(); ++r) {
            int nonzero = 0;
            for (int c = 0; c < d.dim(); ++c)
                if (c != r && !d.at(r, c).is_zero())
                    ++nonzero;
            CHECK(nonzero == 4);
        }
    }
}

TEST_CASE("charpoly degree, leading coefficient, and corner terms") {
    const LaurentPoly2 &cp = charpoly43_seed1();
    CHECK(cp.lambda_degree() == 12);
    CHECK(cp.coeff({0, 0}).coeff(12) == Rational(1)); // (-1)^12

    for (Exp corner : {Exp{3, 0}, Exp{-3, 0}, Exp{0, 4}, Exp{0, -4}}) {
        const UniPoly &c = cp.coeff(corner);
        REQUIRE_FALSE(c.is_zero());
        CHECK(c.is_constant());
        CHECK(c.coeff(0).abs() == Rational(1));
    }
}

TEST_CASE("charpoly support satisfies the weight bound for all lambda") {
    const LaurentPoly2 &cp = charpoly43_seed1();
    for (const Exp &e : cp.support())
        CHECK(std::abs(e.e1) * 4 + std::abs(e.e2) * 3 <= 12);
    CHECK(cp.min_exponents() == Exp{-3, -4});
    CHECK(cleared_charpoly(cp, Period(4, 3)).poly().min_exponents() == Exp{0, 0});
}

TEST_CASE("specialization keeps the corners and the diamond hull") {
    const LaurentPoly2 &cp = charpoly43_seed1();
    LaurentPoly2 s = cp.specialize(Rational(0));
    for (Exp corner : {Exp{3, 0}, Exp{-3, 0}, Exp{0, 4}, Exp{0, -4}})
        CHECK_FALSE(s.coeff(corner).is_zero());
}

TEST_CASE("substitution degree after clearing denominators") {
    const LaurentPoly2 &cp = charpoly43_seed1();
    Poly2 p1(cleared_charpoly(cp, Period(4, 3)).poly().specialize(Rational(0)));
    Poly2 sub = substitute_powers(p1, 4, 3);
    CHECK(sub.total_degree() == 36);
    CHECK(Poly2(sub.poly().partial(Var::z1)).total_degree() == 35);
}

TEST_CASE("cleared charpoly at a rational level is square free") {
    const LaurentPoly2 &cp = charpoly43_seed1();
    Poly2 f(cleared_charpoly(cp, Period(4, 3)).poly().specialize(Rational(0)));
    Poly2 g(f.poly().partial(Var::z1));
    CHECK(gcd_constant_check(f, g));
}

TEST_CASE("charpoly evaluation matches the LU determinant oracle") {
    Potential v = generate_potential(4, 3, 1);
    const LaurentPoly2 &cp = charpoly43_seed1();
    SplitMix64 rng(0x5eedULL);
    const double tp = 2.0 * std::numbers::pi;
    for (int i = 0; i < 100; ++i) {
        double k1 = rng.uniform01(), k2 = rng.uniform01();
        double lambda = -8.0 + 16.0 * rng.uniform01();
        std::complex<double> z1 = std::polar(1.0, tp * k1);
        std::complex<double> z2 = std::polar(1.0, tp * k2);
        std::complex<double> lhs = cp.eval(z1, z2, lambda);

        CMatrix d = build_numeric(v, k1, k2);
        for (int j = 0; j < d.n; ++j)
            d.at(j, j) -= lambda;
        std::complex<double> rhs = lu_det(std::move(d));
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
        // Self-adjointness makes the value real on the torus.
        CHECK(std::abs(lhs.imag()) <= 1e-9 * (1.0 + std::abs(lhs.real())));
    }
}

TEST_CASE("numeric matrix wraparound phases and hermiticity") {
    Potential v = Potential::zero(Period(3, 3));
    CMatrix d = build_numeric(v, 0.25, 0.0);
    // Row (3,1), column (1,1) carries e^{2 pi i k1} = i at k1 = 1/4.
    std::complex<double> w = d.at(vertex_index(v.period(), 3, 1), vertex_index(v.period(), 1, 1));
    CHECK(std::abs(w - std::complex<double>(0.0, 1.0)) < 1e-15);

    CMatrix d0 = build_numeric(v, 0.0, 0.0);
    for (int r = 0; r < d0.n; ++r) {
        std::complex<double> sum(0.0, 0.0);
        for (int c = 0; c < d0.n; ++c)
            sum += d0.at(r, c);
        CHECK(std::abs(sum - 4.0) < 1e-15); // free row sum: four neighbors
    }
    CHECK(eigh(d0).values.back() == doctest::Approx(4.0).epsilon(1e-12));

    SplitMix64 rng(77);
    for (int t = 0; t < 20; ++t) {
        Potential rv = generate_potential(4, 3, rng.next());
        CMatrix m = build_numeric(rv, rng.uniform01(), rng.uniform01());
        CHECK(m.max_hermitian_defect() <= 1e-15);
    }
}

TEST_CASE("numeric derivative matches finite differences entrywise") {
    Potential v = generate_potential(4, 3, 3);
    const double h = 1e-6;
    for (int j = 1; j <= 2; ++j) {
        double k1 = 0.31, k2 = 0.87;
        CMatrix d = build_numeric_derivative(v, k1, k2, j);
        CMatrix hi = build_numeric(v, k1 + (j == 1 ? h : 0.0), k2 + (j == 2 ? h : 0.0));
        CMatrix lo = build_numeric(v, k1 - (j == 1 ? h : 0.0), k2 - (j == 2 ? h : 0.0));
        for (int r = 0; r < d.n; ++r)
            for (int c = 0; c < d.n; ++c) {
                std::complex<double> fd = (hi.at(r, c) - lo.at(r, c)) / (2.0 * h);
                CHECK(std::abs(d.at(r, c) - fd) <= 1e-6);
            }
    }
    CHECK_THROWS_AS(build_numeric_derivative(v, 0.0, 0.0, 3), std::invalid_argument);
}

TEST_CASE("free eigenvalues match the closed form as multisets") {
    Period p(4, 3);
    Potential v = Potential::zero(p);
    SplitMix64 rng(999);
    for (int t = 0; t < 50; ++t) {
        double k1 = rng.uniform01(), k2 = rng.uniform01();
        std::vector<double> got = eigh(build_numeric(v, k1, k2)).values;
        std::vector<double> want = free_eigenvalues(p, k1, k2);
        REQUIRE(got.size() == want.size());
        for (size_t i = 0; i < got.size(); ++i)
            CHECK(std::fabs(got[i] - want[i]) <= 1e-9);
    }
}
