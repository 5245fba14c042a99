#include "blochpoly/unipoly.hpp"

#include <ostream>
#include <stdexcept>

namespace blochpoly {

UniPoly::UniPoly(const Rational &c) {
    if (!c.is_zero())
        c_.push_back(c);
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Rational &c, int k) {
    UniPoly p;
    if (c.is_zero())
        return p;
    p.c_.assign(static_cast<size_t>(k) + 1, Rational(0));
    p.c_[static_cast<size_t>(k)] = c;
    return p;
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

Rational UniPoly::coeff(int i) const {
    if (i < 0 || static_cast<size_t>(i) >= c_.size())
        return Rational(0);
    return c_[static_cast<size_t>(i)];
}

const Rational &UniPoly::leading() const {
    if (c_.empty())
        throw std::domain_error("UniPoly: leading coefficient of zero polynomial");
    return c_.back();
}

UniPoly UniPoly::operator-() const {
    UniPoly r(*this);
    for (auto &c : r.c_)
        c = -c;
    return r;
}

UniPoly &UniPoly::operator+=(const UniPoly &o) {
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

UniPoly &UniPoly::operator-=(const UniPoly &o) {
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly &a, const UniPoly &b) {
    UniPoly r;
    r.add_mul(a, b);
    return r;
}

void UniPoly::add_mul(const UniPoly &a, const UniPoly &b) {
    if (a.is_zero() || b.is_zero())
        return;
    size_t need = a.c_.size() + b.c_.size() - 1;
    if (c_.size() < need)
        c_.resize(need, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            c_[i + j] += a.c_[i] * b.c_[j];
    }
    trim();
}

void UniPoly::scale(const Rational &c) {
    if (c.is_zero()) {
        c_.clear();
        return;
    }
    for (auto &x : c_)
        x *= c;
}

Rational UniPoly::eval(const Rational &x) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;)
        acc = acc * x + c_[i];
    return acc;
}

double UniPoly::eval(double x) const {
    double acc = 0.0;
    for (size_t i = c_.size(); i-- > 0;)
        acc = acc * x + c_[i].to_double();
    return acc;
}

double UniPoly::one_norm() const {
    double s = 0.0;
    for (const auto &c : c_)
        s += c.abs().to_double();
    return s;
}

UniPoly UniPoly::divexact(const UniPoly &a, const UniPoly &b) {
    if (b.is_zero())
        throw std::domain_error("UniPoly: division by zero polynomial");
    if (a.is_zero())
        return UniPoly();
    if (a.degree() < b.degree())
        throw std::domain_error("UniPoly: inexact division (degree)");
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quot(static_cast<size_t>(a.degree() - b.degree()) + 1, Rational(0));
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Rational q = rem[static_cast<size_t>(k + b.degree())] / b.leading();
        quot[static_cast<size_t>(k)] = q;
        if (q.is_zero())
            continue;
        for (int i = 0; i <= b.degree(); ++i)
            rem[static_cast<size_t>(k + i)] -= q * b.c_[static_cast<size_t>(i)];
    }
    for (const auto &c : rem)
        if (!c.is_zero())
            throw std::domain_error("UniPoly: inexact division (remainder)");
    return UniPoly(std::move(quot));
}

std::string UniPoly::str() const {
    if (is_zero())
        return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero())
            continue;
        if (!s.empty())
            s += " + ";
        s += c_[i].str();
        if (i == 1)
            s += "*L";
        else if (i > 1)
            s += "*L^" + std::to_string(i);
    }
    return s;
}

std::ostream &operator<<(std::ostream &os, const UniPoly &p) { return os << p.str(); }

} // namespace blochpoly
