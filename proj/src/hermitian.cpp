#include "blochpoly/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace blochpoly {

double CMatrix::max_hermitian_defect() const {
    double d = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            d = std::max(d, std::abs(at(i, j) - std::conj(at(j, i))));
    return d;
}

double CMatrix::frobenius() const {
    double s = 0.0;
    for (const auto &v : a)
        s += std::norm(v);
    return std::sqrt(s);
}

namespace {

double offdiag_frobenius(const CMatrix &m) {
    double s = 0.0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != j)
                s += std::norm(m.at(i, j));
    return std::sqrt(s);
}

} // namespace

EighResult eigh(const CMatrix &input) {
    const int n = input.n;
    CMatrix m = input;
    CMatrix v(n);
    for (int i = 0; i < n; ++i)
        v.at(i, i) = 1.0;

    const double scale = m.frobenius();
    const double target = 1e-13 * (scale > 0.0 ? scale : 1.0);
    const int max_sweeps = 60;

    int sweep = 0;
    while (offdiag_frobenius(m) > target) {
        if (++sweep > max_sweeps)
            throw std::runtime_error("Jacobi eigensolver failed to converge");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                std::complex<double> beta = m.at(p, q);
                double b = std::abs(beta);
                if (b == 0.0)
                    continue;
                std::complex<double> phase = beta / b; // e^{i phi}
                double alpha = m.at(p, p).real();
                double gamma = m.at(q, q).real();
                double tau = (alpha - gamma) / (2.0 * b);
                // Smaller-magnitude root of t^2 + 2*tau*t - 1 = 0, the tangent
                // of the rotation angle that zeroes the (p,q) entry.
                double t = tau == 0.0
                               ? 1.0
                               : (tau > 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;

                // A <- U^H A U with the rotation in the (p,q) plane,
                // U = [[c, -s e^{i phi}], [s e^{-i phi}, c]].
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q)
                        continue;
                    std::complex<double> aip = m.at(i, p);
                    std::complex<double> aiq = m.at(i, q);
                    m.at(i, p) = c * aip + s * std::conj(phase) * aiq;
                    m.at(i, q) = -s * phase * aip + c * aiq;
                    m.at(p, i) = std::conj(m.at(i, p));
                    m.at(q, i) = std::conj(m.at(i, q));
                }
                double app = c * c * alpha + 2.0 * b * c * s + s * s * gamma;
                double aqq = s * s * alpha - 2.0 * b * c * s + c * c * gamma;
                m.at(p, p) = app;
                m.at(q, q) = aqq;
                m.at(p, q) = 0.0;
                m.at(q, p) = 0.0;

                for (int i = 0; i < n; ++i) {
                    std::complex<double> vip = v.at(i, p);
                    std::complex<double> viq = v.at(i, q);
                    v.at(i, p) = c * vip + s * std::conj(phase) * viq;
                    v.at(i, q) = -s * phase * vip + c * viq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return m.at(i, i).real() < m.at(j, j).real(); });

    EighResult r;
    r.values.resize(n);
    r.vectors = CMatrix(n);
    for (int j = 0; j < n; ++j) {
        r.values[j] = m.at(order[j], order[j]).real();
        for (int i = 0; i < n; ++i)
            r.vectors.at(i, j) = v.at(i, order[j]);
    }
    return r;
}

std::complex<double> lu_det(CMatrix m) {
    const int n = m.n;
    std::complex<double> det(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(m.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            double c = std::abs(m.at(i, k));
            if (c > best) {
                best = c;
                piv = i;
            }
        }
        if (best == 0.0)
            return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(m.at(k, j), m.at(piv, j));
            det = -det;
        }
        det *= m.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            std::complex<double> f = m.at(i, k) / m.at(k, k);
            for (int j = k; j < n; ++j)
                m.at(i, j) -= f * m.at(k, j);
        }
    }
    return det;
}

} // namespace blochpoly
