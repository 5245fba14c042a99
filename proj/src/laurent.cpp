#include "blochpoly/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace blochpoly {

namespace {

const UniPoly kZeroPoly;

std::complex<double> cpow(std::complex<double> z, int e) {
    if (e < 0)
        return 1.0 / cpow(z, -e);
    std::complex<double> acc(1.0, 0.0);
    std::complex<double> base = z;
    unsigned n = static_cast<unsigned>(e);
    while (n) {
        if (n & 1u)
            acc *= base;
        base *= base;
        n >>= 1u;
    }
    return acc;
}

Rational rpow(const Rational &x, int e) {
    if (e < 0) {
        if (x.is_zero())
            throw std::domain_error("LaurentPoly2: negative power of zero");
        return Rational(1) / rpow(x, -e);
    }
    Rational acc(1);
    Rational base = x;
    unsigned n = static_cast<unsigned>(e);
    while (n) {
        if (n & 1u)
            acc *= base;
        base *= base;
        n >>= 1u;
    }
    return acc;
}

} // namespace

LaurentPoly2 LaurentPoly2::constant(const Rational &c) {
    LaurentPoly2 p;
    p.add_term({0, 0}, UniPoly(c));
    return p;
}

LaurentPoly2 LaurentPoly2::monomial(int e1, int e2, UniPoly c) {
    LaurentPoly2 p;
    p.add_term({e1, e2}, c);
    return p;
}

const UniPoly &LaurentPoly2::coeff(Exp e) const {
    auto it = t_.find(e);
    return it == t_.end() ? kZeroPoly : it->second;
}

std::vector<Exp> LaurentPoly2::support() const {
    std::vector<Exp> s;
    s.reserve(t_.size());
    for (const auto &[e, c] : t_)
        s.push_back(e);
    return s;
}

bool LaurentPoly2::has_negative_exponents() const {
    for (const auto &[e, c] : t_)
        if (e.e1 < 0 || e.e2 < 0)
            return true;
    return false;
}

Exp LaurentPoly2::min_exponents() const {
    if (t_.empty())
        throw std::domain_error("LaurentPoly2: exponent range of zero polynomial");
    Exp m = t_.begin()->first;
    for (const auto &[e, c] : t_) {
        m.e1 = std::min(m.e1, e.e1);
        m.e2 = std::min(m.e2, e.e2);
    }
    return m;
}

Exp LaurentPoly2::max_exponents() const {
    if (t_.empty())
        throw std::domain_error("LaurentPoly2: exponent range of zero polynomial");
    Exp m = t_.begin()->first;
    for (const auto &[e, c] : t_) {
        m.e1 = std::max(m.e1, e.e1);
        m.e2 = std::max(m.e2, e.e2);
    }
    return m;
}

std::pair<Exp, const UniPoly *> LaurentPoly2::leading() const {
    if (t_.empty())
        throw std::domain_error("LaurentPoly2: leading term of zero polynomial");
    auto it = t_.rbegin();
    return {it->first, &it->second};
}

int LaurentPoly2::lambda_degree() const {
    int d = -1;
    for (const auto &[e, c] : t_)
        d = std::max(d, c.degree());
    return d;
}

void LaurentPoly2::add_term(Exp e, const UniPoly &c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = t_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            t_.erase(it);
    }
}

LaurentPoly2 LaurentPoly2::operator-() const {
    LaurentPoly2 r;
    for (const auto &[e, c] : t_)
        r.t_.emplace(e, -c);
    return r;
}

LaurentPoly2 &LaurentPoly2::operator+=(const LaurentPoly2 &o) {
    for (const auto &[e, c] : o.t_)
        add_term(e, c);
    return *this;
}

LaurentPoly2 &LaurentPoly2::operator-=(const LaurentPoly2 &o) {
    for (const auto &[e, c] : o.t_)
        add_term(e, -c);
    return *this;
}

LaurentPoly2 operator*(const LaurentPoly2 &a, const LaurentPoly2 &b) {
    LaurentPoly2 r;
    if (a.is_zero() || b.is_zero())
        return r;
    for (const auto &[ea, ca] : a.t_) {
        for (const auto &[eb, cb] : b.t_) {
            Exp e{ea.e1 + eb.e1, ea.e2 + eb.e2};
            auto [it, inserted] = r.t_.try_emplace(e);
            it->second.add_mul(ca, cb);
            if (it->second.is_zero())
                r.t_.erase(it);
        }
    }
    return r;
}

LaurentPoly2 LaurentPoly2::partial(Var v) const {
    LaurentPoly2 r;
    for (const auto &[e, c] : t_) {
        int k = (v == Var::z1) ? e.e1 : e.e2;
        if (k == 0)
            continue;
        UniPoly d = c;
        d.scale(Rational(k));
        Exp ne = (v == Var::z1) ? Exp{e.e1 - 1, e.e2} : Exp{e.e1, e.e2 - 1};
        r.t_.emplace(ne, std::move(d));
    }
    return r;
}

LaurentPoly2 LaurentPoly2::shifted(int a, int b) const {
    LaurentPoly2 r;
    for (const auto &[e, c] : t_)
        r.t_.emplace(Exp{e.e1 + a, e.e2 + b}, c);
    return r;
}

LaurentPoly2 LaurentPoly2::specialize(const Rational &lambda) const {
    LaurentPoly2 r;
    for (const auto &[e, c] : t_) {
        Rational v = c.eval(lambda);
        if (!v.is_zero())
            r.t_.emplace(e, UniPoly(v));
    }
    return r;
}

std::complex<double> LaurentPoly2::eval(std::complex<double> z1, std::complex<double> z2,
                                        double lambda) const {
    if (z1 == std::complex<double>(0.0, 0.0) || z2 == std::complex<double>(0.0, 0.0))
        throw std::domain_error("LaurentPoly2: evaluation at zero component");
    std::complex<double> acc(0.0, 0.0);
    for (const auto &[e, c] : t_)
        acc += c.eval(lambda) * cpow(z1, e.e1) * cpow(z2, e.e2);
    return acc;
}

Rational LaurentPoly2::eval_exact(const Rational &x1, const Rational &x2,
                                  const Rational &lambda) const {
    Rational acc(0);
    for (const auto &[e, c] : t_)
        acc += c.eval(lambda) * rpow(x1, e.e1) * rpow(x2, e.e2);
    return acc;
}

std::string LaurentPoly2::str() const {
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : t_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (e.e1 != 0)
            os << "*z1^" << e.e1;
        if (e.e2 != 0)
            os << "*z2^" << e.e2;
    }
    return os.str();
}

LaurentPoly2 divexact(const LaurentPoly2 &a, const LaurentPoly2 &b) {
    if (b.is_zero())
        throw std::domain_error("LaurentPoly2: division by zero polynomial");
    if (a.is_zero())
        return LaurentPoly2();

    // Shift both operands so their supports are nonnegative with a zero
    // coordinatewise minimum; extreme strata cannot cancel in a domain, so
    // an exact Laurent quotient maps to an exact polynomial quotient.
    Exp amin = a.min_exponents();
    Exp bmin = b.min_exponents();
    LaurentPoly2 r = a.shifted(-amin.e1, -amin.e2);
    LaurentPoly2 d = b.shifted(-bmin.e1, -bmin.e2);

    auto [eb, cb] = d.leading();
    LaurentPoly2 q;
    while (!r.is_zero()) {
        auto [er, cr] = r.leading();
        Exp de{er.e1 - eb.e1, er.e2 - eb.e2};
        if (de.e1 < 0 || de.e2 < 0)
            throw std::domain_error("LaurentPoly2: inexact division");
        UniPoly qc = UniPoly::divexact(*cr, *cb);
        q.add_term(de, qc);
        LaurentPoly2 t = LaurentPoly2::monomial(de.e1, de.e2, std::move(qc)) * d;
        r -= t;
    }
    return q.shifted(amin.e1 - bmin.e1, amin.e2 - bmin.e2);
}

Poly2::Poly2(LaurentPoly2 p) : p_(std::move(p)) {
    if (p_.has_negative_exponents())
        throw std::domain_error("Poly2: negative exponent in support");
}

int Poly2::total_degree() const {
    int d = -1;
    for (const auto &[e, c] : p_.terms())
        d = std::max(d, e.e1 + e.e2);
    return d;
}

Poly2 substitute_powers(const Poly2 &f, int q1, int q2) {
    if (q1 <= 0 || q2 <= 0)
        throw std::invalid_argument("substitute_powers: powers must be positive");
    LaurentPoly2 r;
    for (const auto &[e, c] : f.poly().terms())
        r.add_term(Exp{e.e1 * q1, e.e2 * q2}, c);
    return Poly2(std::move(r));
}

std::complex<double> EvalPoly::eval(std::complex<double> z1, std::complex<double> z2) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto &[e, c] : terms)
        acc += c * cpow(z1, e.e1) * cpow(z2, e.e2);
    return acc;
}

EvalPoly specialize_numeric(const LaurentPoly2 &f, double lambda) {
    EvalPoly p;
    p.terms.reserve(f.num_terms());
    for (const auto &[e, c] : f.terms()) {
        double v = c.eval(lambda);
        p.terms.emplace_back(e, v);
        p.one_norm += std::abs(v);
    }
    return p;
}

} // namespace blochpoly
