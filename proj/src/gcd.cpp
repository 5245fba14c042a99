#include "blochpoly/gcd.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace blochpoly {

namespace {

// Univariate integer polynomial, index = exponent, no trailing zeros.
using ZPoly1 = std::vector<mpz_class>;
// Bivariate: outer index = z1 exponent, inner = polynomial in z2.
using ZPoly2 = std::vector<ZPoly1>;

void trim1(ZPoly1 &p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

bool is_zero1(const ZPoly1 &p) { return p.empty(); }
int deg1(const ZPoly1 &p) { return static_cast<int>(p.size()) - 1; }

ZPoly1 mul1(const ZPoly1 &a, const ZPoly1 &b) {
    if (a.empty() || b.empty())
        return {};
    ZPoly1 r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim1(r);
    return r;
}

// Exact quotient a/b in Z[x]; throws when b does not divide a.
ZPoly1 divexact1(const ZPoly1 &a, const ZPoly1 &b) {
    if (b.empty())
        throw std::domain_error("gcd: division by zero polynomial");
    if (a.empty())
        return {};
    if (a.size() < b.size())
        throw std::domain_error("gcd: inexact polynomial division");
    ZPoly1 r = a;
    ZPoly1 q(a.size() - b.size() + 1, mpz_class(0));
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
        const mpz_class &top = r[k + b.size() - 1];
        if (top == 0)
            continue;
        mpz_class c, rem;
        mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), top.get_mpz_t(), b.back().get_mpz_t());
        if (rem != 0)
            throw std::domain_error("gcd: inexact polynomial division");
        q[k] = c;
        for (size_t i = 0; i < b.size(); ++i)
            r[k + i] -= c * b[i];
    }
    trim1(r);
    if (!r.empty())
        throw std::domain_error("gcd: inexact polynomial division");
    return q;
}

mpz_class int_content1(const ZPoly1 &p) {
    mpz_class g(0);
    for (const auto &c : p)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

void div_scalar1(ZPoly1 &p, const mpz_class &c) {
    for (auto &x : p)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
}

// Primitive gcd of two integer polynomials (positive leading coefficient),
// via a primitive polynomial remainder sequence.
ZPoly1 gcd1(ZPoly1 a, ZPoly1 b) {
    trim1(a);
    trim1(b);
    if (a.empty())
        std::swap(a, b);
    if (b.empty()) {
        if (a.empty())
            return {};
        div_scalar1(a, int_content1(a));
        if (a.back() < 0)
            for (auto &c : a)
                c = -c;
        return a;
    }
    div_scalar1(a, int_content1(a));
    div_scalar1(b, int_content1(b));
    if (deg1(a) < deg1(b))
        std::swap(a, b);
    while (!b.empty()) {
        // Lazy pseudo-remainder of a by b, primitivized right away.
        ZPoly1 r = a;
        const mpz_class &d = b.back();
        while (!r.empty() && r.size() >= b.size()) {
            size_t k = r.size() - b.size();
            mpz_class c = r.back();
            for (auto &x : r)
                x *= d;
            for (size_t i = 0; i < b.size(); ++i)
                r[k + i] -= c * b[i];
            trim1(r);
        }
        if (!r.empty())
            div_scalar1(r, int_content1(r));
        a = std::move(b);
        b = std::move(r);
    }
    if (a.back() < 0)
        for (auto &c : a)
            c = -c;
    return a;
}

void trim2(ZPoly2 &p) {
    while (!p.empty() && p.back().empty())
        p.pop_back();
}

bool is_zero2(const ZPoly2 &p) { return p.empty(); }
int deg2(const ZPoly2 &p) { return static_cast<int>(p.size()) - 1; }

// Content with respect to z1: gcd in Z[z2] of the z1-coefficients.
ZPoly1 content2(const ZPoly2 &p) {
    ZPoly1 g;
    for (const auto &c : p)
        if (!c.empty())
            g = gcd1(std::move(g), c);
    return g;
}

void div_coef2(ZPoly2 &p, const ZPoly1 &c) {
    for (auto &x : p)
        if (!x.empty())
            x = divexact1(x, c);
}

ZPoly2 scale2(const ZPoly2 &p, const ZPoly1 &c) {
    ZPoly2 r(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        r[i] = mul1(p[i], c);
    trim2(r);
    return r;
}

ZPoly1 neg1(ZPoly1 p) {
    for (auto &c : p)
        c = -c;
    return p;
}

ZPoly1 pow1(const ZPoly1 &p, int e) {
    ZPoly1 r{mpz_class(1)};
    for (int i = 0; i < e; ++i)
        r = mul1(r, p);
    return r;
}

// Full pseudo-remainder lc(v)^(deg u - deg v + 1) * u mod v over Z[z2].
ZPoly2 prem2(ZPoly2 r, const ZPoly2 &v) {
    const ZPoly1 &d = v.back();
    int e = deg2(r) - deg2(v) + 1;
    while (!r.empty() && r.size() >= v.size()) {
        size_t k = r.size() - v.size();
        ZPoly1 c = r.back();
        for (auto &x : r)
            x = mul1(x, d);
        for (size_t i = 0; i < v.size(); ++i) {
            ZPoly1 t = mul1(c, v[i]);
            ZPoly1 &dst = r[k + i];
            if (dst.size() < t.size())
                dst.resize(t.size(), mpz_class(0));
            for (size_t j = 0; j < t.size(); ++j)
                dst[j] -= t[j];
            trim1(dst);
        }
        trim2(r);
        --e;
    }
    if (e > 0 && !r.empty())
        r = scale2(r, pow1(d, e));
    return r;
}

// Subresultant remainder sequence on a pair of z1-primitive polynomials;
// returns the z1-degree of the last nonzero remainder.
int last_remainder_degree(ZPoly2 r0, ZPoly2 r1) {
    if (deg2(r0) < deg2(r1))
        std::swap(r0, r1);
    int delta = deg2(r0) - deg2(r1);
    ZPoly1 beta = (delta % 2 == 0) ? ZPoly1{mpz_class(-1)} : ZPoly1{mpz_class(1)};
    ZPoly1 psi{mpz_class(-1)};
    while (!is_zero2(r1)) {
        ZPoly2 r = prem2(r0, r1);
        if (!is_zero2(r)) {
            for (auto &c : r)
                if (!c.empty())
                    c = divexact1(c, beta);
            trim2(r);
        }
        if (is_zero2(r))
            return deg2(r1);
        // Update psi and beta for the next round (Brown's scheme).
        const ZPoly1 &lc = r1.back();
        if (delta > 0) {
            ZPoly1 num = pow1(neg1(lc), delta);
            psi = (delta == 1) ? num : divexact1(num, pow1(psi, delta - 1));
        }
        delta = deg2(r1) - deg2(r);
        beta = mul1(neg1(lc), pow1(psi, delta));
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    return deg2(r0);
}

// Clear denominators of a spectral-parameter-free polynomial into Z
// coefficients, outer index = exponent of `outer`, inner = the other
// variable.
ZPoly2 to_integer(const LaurentPoly2 &p, Var outer) {
    mpz_class lcm(1);
    for (const auto &[e, c] : p.terms()) {
        if (!c.is_constant())
            throw std::invalid_argument(
                "gcd_constant_check: coefficients must not involve the spectral parameter");
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.coeff(0).den().get_mpz_t());
    }
    ZPoly2 r;
    for (const auto &[e, c] : p.terms()) {
        Rational cv = c.coeff(0);
        mpz_class num = cv.num() * (lcm / cv.den());
        size_t i = static_cast<size_t>(outer == Var::z1 ? e.e1 : e.e2);
        size_t j = static_cast<size_t>(outer == Var::z1 ? e.e2 : e.e1);
        if (r.size() <= i)
            r.resize(i + 1);
        if (r[i].size() <= j)
            r[i].resize(j + 1, mpz_class(0));
        r[i][j] = num;
    }
    for (auto &row : r)
        trim1(row);
    trim2(r);
    return r;
}

bool contents_coprime(const ZPoly2 &fa, const ZPoly2 &fb) {
    ZPoly1 g = gcd1(content2(fa), content2(fb));
    return deg1(g) == 0;
}

} // namespace

bool gcd_constant_check(const Poly2 &f, const Poly2 &g) {
    if (f.poly().is_zero() || g.poly().is_zero())
        throw std::invalid_argument("gcd_constant_check: zero input polynomial");

    // Orientation with z2 outermost catches common factors univariate in z1
    // through the content alone.
    {
        ZPoly2 fa = to_integer(f.poly(), Var::z2);
        ZPoly2 fb = to_integer(g.poly(), Var::z2);
        if (!contents_coprime(fa, fb))
            return false;
    }

    ZPoly2 fa = to_integer(f.poly(), Var::z1);
    ZPoly2 fb = to_integer(g.poly(), Var::z1);
    if (!contents_coprime(fa, fb))
        return false;

    div_coef2(fa, content2(fa));
    div_coef2(fb, content2(fb));
    if (deg2(fa) == 0 || deg2(fb) == 0)
        return true; // a z1-primitive constant-in-z1 polynomial is a unit here
    return last_remainder_degree(std::move(fa), std::move(fb)) == 0;
}

} // namespace blochpoly
