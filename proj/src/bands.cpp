#include "blochpoly/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace blochpoly {

namespace {

double wrap01(double x) {
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r; // floor leaves exactly 1.0 for tiny negatives
}

double axis_dist(double a, double b) {
    double d = std::fabs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

} // namespace

TorusPoint::TorusPoint(double a, double b) : k1(wrap01(a)), k2(wrap01(b)) {}

double torus_dist(const TorusPoint &a, const TorusPoint &b) {
    return std::hypot(axis_dist(a.k1, b.k1), axis_dist(a.k2, b.k2));
}

BandLab::BandLab(Potential v) : pot_(std::move(v)) {}

std::vector<double> BandLab::eigenvalues(double k1, double k2) const {
    return eigh(build_numeric(pot_, wrap01(k1), wrap01(k2))).values;
}

double BandLab::band_value(int m, double k1, double k2) const {
    return eigenvalues(k1, k2)[m - 1];
}

const BandGrid &BandLab::grid(int G) {
    auto it = grids_.find(G);
    if (it != grids_.end())
        return it->second;
    BandGrid g;
    g.G = G;
    g.Q = Q();
    g.v.resize(static_cast<size_t>(G) * G * g.Q);
    for (int g1 = 0; g1 < G; ++g1) {
        for (int g2 = 0; g2 < G; ++g2) {
            std::vector<double> ev =
                eigenvalues(static_cast<double>(g1) / G, static_cast<double>(g2) / G);
            std::copy(ev.begin(), ev.end(),
                      g.v.begin() + (static_cast<size_t>(g1) * G + g2) * g.Q);
        }
    }
    return grids_.emplace(G, std::move(g)).first->second;
}

const LaurentPoly2 &BandLab::charpoly() {
    if (!charpoly_)
        charpoly_ = blochpoly::charpoly(pot_);
    return *charpoly_;
}

bool BandLab::gradient_hf(int m, double k1, double k2, double gap_tol,
                          std::array<double, 2> &out) const {
    k1 = wrap01(k1);
    k2 = wrap01(k2);
    EighResult e = eigh(build_numeric(pot_, k1, k2));
    const int n = Q();
    double gap = std::numeric_limits<double>::infinity();
    if (m >= 2)
        gap = std::min(gap, e.values[m - 1] - e.values[m - 2]);
    if (m <= n - 1)
        gap = std::min(gap, e.values[m] - e.values[m - 1]);
    if (gap <= gap_tol)
        return false;
    for (int j = 1; j <= 2; ++j) {
        CMatrix d = build_numeric_derivative(pot_, k1, k2, j);
        std::complex<double> acc(0.0, 0.0);
        // u^H (dD/dk_j) u with u the m-th eigenvector column.
        for (int r = 0; r < n; ++r) {
            std::complex<double> row(0.0, 0.0);
            for (int c = 0; c < n; ++c)
                row += d.at(r, c) * e.vectors.at(c, m - 1);
            acc += std::conj(e.vectors.at(r, m - 1)) * row;
        }
        out[j - 1] = acc.real();
    }
    return true;
}

std::array<double, 2> BandLab::gradient_fd(int m, double k1, double k2, double h) const {
    return {(band_value(m, k1 + h, k2) - band_value(m, k1 - h, k2)) / (2.0 * h),
            (band_value(m, k1, k2 + h) - band_value(m, k1, k2 - h)) / (2.0 * h)};
}

std::array<double, 2> BandLab::gradient(int m, double k1, double k2) const {
    std::array<double, 2> g;
    if (gradient_hf(m, k1, k2, 1e-8, g))
        return g;
    return gradient_fd(m, k1, k2);
}

ExtremumRecord BandLab::refine_extremum(int m, double k1, double k2,
                                        ExtremumRecord::Kind kind) {
    const double sgn = (kind == ExtremumRecord::Kind::min) ? 1.0 : -1.0;
    auto gradf = [&](double a, double b) {
        std::array<double, 2> g = gradient(m, a, b);
        return std::array<double, 2>{sgn * g[0], sgn * g[1]};
    };

    double x1 = k1, x2 = k2;
    std::array<double, 2> g = gradf(x1, x2);
    double gn = std::hypot(g[0], g[1]);
    double alpha = 0.02;
    double px1 = 0, px2 = 0;
    std::array<double, 2> pg{};
    bool have_prev = false;
    int it = 0;

    while (gn > 1e-9 && it < 200) {
        ++it;
        if (gn < 1e-5) {
            // Newton polish on the gradient with a finite-difference Hessian;
            // accepted only when it actually reduces the gradient norm.
            const double h = 1e-4;
            std::array<double, 2> gp = gradf(x1 + h, x2), gm = gradf(x1 - h, x2);
            double h11 = (gp[0] - gm[0]) / (2 * h), h21 = (gp[1] - gm[1]) / (2 * h);
            gp = gradf(x1, x2 + h);
            gm = gradf(x1, x2 - h);
            double h12 = (gp[0] - gm[0]) / (2 * h), h22 = (gp[1] - gm[1]) / (2 * h);
            double det = h11 * h22 - h12 * h21;
            if (std::fabs(det) > 1e-12) {
                double d1 = (-g[0] * h22 + g[1] * h12) / det;
                double d2 = (g[0] * h21 - g[1] * h11) / det;
                if (std::hypot(d1, d2) < 0.05) {
                    std::array<double, 2> ng = gradf(x1 + d1, x2 + d2);
                    double ngn = std::hypot(ng[0], ng[1]);
                    if (ngn < gn) {
                        px1 = x1;
                        px2 = x2;
                        pg = g;
                        have_prev = true;
                        x1 += d1;
                        x2 += d2;
                        g = ng;
                        gn = ngn;
                        continue;
                    }
                }
            }
        }
        if (have_prev) {
            // Barzilai-Borwein step length from the last move.
            double dx1 = x1 - px1, dx2 = x2 - px2;
            double dg1 = g[0] - pg[0], dg2 = g[1] - pg[1];
            double num = dx1 * dg1 + dx2 * dg2, den = dg1 * dg1 + dg2 * dg2;
            if (den > 0.0 && num > 0.0)
                alpha = std::clamp(num / den, 1e-7, 0.2);
        }
        px1 = x1;
        px2 = x2;
        pg = g;
        have_prev = true;
        x1 -= alpha * g[0];
        x2 -= alpha * g[1];
        g = gradf(x1, x2);
        gn = std::hypot(g[0], g[1]);
    }

    ExtremumRecord r;
    r.band = m;
    r.k = TorusPoint(x1, x2);
    r.lambda = band_value(m, x1, x2);
    r.kind = kind;
    r.residual = gn;
    r.converged = gn <= 1e-9;
    return r;
}

std::vector<ExtremumRecord> BandLab::find_extrema(int m, int G) {
    if (G < 16)
        throw std::invalid_argument("extremum grid size must be at least 16");
    if (m < 1 || m > Q())
        throw std::invalid_argument("band index out of range");
    const BandGrid &bg = grid(G);

    struct Cand {
        int g1, g2;
        ExtremumRecord::Kind kind;
    };
    std::vector<Cand> cands;
    int min_g1 = 0, min_g2 = 0, max_g1 = 0, max_g2 = 0;
    double vmin = bg.at(0, 0, m), vmax = vmin;
    for (int g1 = 0; g1 < G; ++g1) {
        for (int g2 = 0; g2 < G; ++g2) {
            double c = bg.at(g1, g2, m);
            if (c < vmin) {
                vmin = c;
                min_g1 = g1;
                min_g2 = g2;
            }
            if (c > vmax) {
                vmax = c;
                max_g1 = g1;
                max_g2 = g2;
            }
            bool is_min = true, is_max = true;
            for (int d1 = -1; d1 <= 1 && (is_min || is_max); ++d1) {
                for (int d2 = -1; d2 <= 1; ++d2) {
                    if (d1 == 0 && d2 == 0)
                        continue;
                    double nb = bg.at_wrapped(g1 + d1, g2 + d2, m);
                    if (nb <= c)
                        is_min = false;
                    if (nb >= c)
                        is_max = false;
                }
            }
            if (is_min)
                cands.push_back({g1, g2, ExtremumRecord::Kind::min});
            if (is_max)
                cands.push_back({g1, g2, ExtremumRecord::Kind::max});
        }
    }
    // The global grid extremes enter even when ties keep them non-strict.
    cands.push_back({min_g1, min_g2, ExtremumRecord::Kind::min});
    cands.push_back({max_g1, max_g2, ExtremumRecord::Kind::max});
    std::sort(cands.begin(), cands.end(), [](const Cand &a, const Cand &b) {
        if (a.g1 != b.g1)
            return a.g1 < b.g1;
        if (a.g2 != b.g2)
            return a.g2 < b.g2;
        return a.kind < b.kind;
    });
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [](const Cand &a, const Cand &b) {
                                return a.g1 == b.g1 && a.g2 == b.g2 && a.kind == b.kind;
                            }),
                cands.end());

    std::vector<ExtremumRecord> recs;
    recs.reserve(cands.size());
    for (const Cand &c : cands)
        recs.push_back(refine_extremum(m, static_cast<double>(c.g1) / G,
                                       static_cast<double>(c.g2) / G, c.kind));

    // Deduplicate refined locations (converged records take precedence).
    std::stable_sort(recs.begin(), recs.end(), [](const ExtremumRecord &a,
                                                  const ExtremumRecord &b) {
        if (a.converged != b.converged)
            return a.converged > b.converged;
        if (a.k.k1 != b.k.k1)
            return a.k.k1 < b.k.k1;
        return a.k.k2 < b.k.k2;
    });
    std::vector<ExtremumRecord> kept;
    for (const ExtremumRecord &r : recs) {
        bool dup = false;
        for (const ExtremumRecord &u : kept)
            if (u.kind == r.kind && torus_dist(u.k, r.k) < 1e-5)
                dup = true;
        if (!dup)
            kept.push_back(r);
    }
    std::sort(kept.begin(), kept.end(), [](const ExtremumRecord &a, const ExtremumRecord &b) {
        if (a.k.k1 != b.k.k1)
            return a.k.k1 < b.k.k1;
        if (a.k.k2 != b.k.k2)
            return a.k.k2 < b.k.k2;
        return a.kind < b.kind;
    });
    return kept;
}

void BandLab::polish_critical(int m, double &x1, double &x2, double &gn,
                              int max_steps) const {
    std::array<double, 2> g = gradient(m, x1, x2);
    gn = std::hypot(g[0], g[1]);
    for (int it = 0; it < max_steps && gn > 1e-12; ++it) {
        const double h = 1e-4;
        std::array<double, 2> gp = gradient(m, x1 + h, x2), gm = gradient(m, x1 - h, x2);
        double h11 = (gp[0] - gm[0]) / (2 * h), h21 = (gp[1] - gm[1]) / (2 * h);
        gp = gradient(m, x1, x2 + h);
        gm = gradient(m, x1, x2 - h);
        double h12 = (gp[0] - gm[0]) / (2 * h), h22 = (gp[1] - gm[1]) / (2 * h);
        double det = h11 * h22 - h12 * h21;
        if (std::fabs(det) <= 1e-12)
            return;
        double d1 = (-g[0] * h22 + g[1] * h12) / det;
        double d2 = (g[0] * h21 - g[1] * h11) / det;
        if (std::hypot(d1, d2) >= 0.05)
            return;
        std::array<double, 2> ng = gradient(m, x1 + d1, x2 + d2);
        double ngn = std::hypot(ng[0], ng[1]);
        if (ngn >= gn)
            return;
        x1 += d1;
        x2 += d2;
        g = ng;
        gn = ngn;
    }
}

std::vector<BandLab::LevelPoint> BandLab::level_points(int m, double lambda_star, int G,
                                                       const LevelSetOptions &opt,
                                                       double crit_merge) {
    const BandGrid &bg = grid(G);
    std::vector<std::pair<int, int>> cands;
    for (int g1 = 0; g1 < G; ++g1) {
        for (int g2 = 0; g2 < G; ++g2) {
            double af = std::fabs(bg.at(g1, g2, m) - lambda_star);
            bool strict = true;
            for (int d1 = -1; d1 <= 1 && strict; ++d1)
                for (int d2 = -1; d2 <= 1; ++d2) {
                    if (d1 == 0 && d2 == 0)
                        continue;
                    if (std::fabs(bg.at_wrapped(g1 + d1, g2 + d2, m) - lambda_star) <= af) {
                        strict = false;
                        break;
                    }
                }
            if (strict || af <= 10.0 * opt.tol_f)
                cands.emplace_back(g1, g2);
        }
    }
    std::sort(cands.begin(), cands.end());

    std::vector<LevelPoint> accepted;
    const double cap = 2.0 / G;
    for (auto [cg1, cg2] : cands) {
        double x1 = static_cast<double>(cg1) / G;
        double x2 = static_cast<double>(cg2) / G;
        double val = 0.0;
        bool ok = false;
        for (int it = 0; it < 100; ++it) {
            val = band_value(m, x1, x2) - lambda_star;
            if (std::fabs(val) <= opt.tol_f) {
                ok = true;
                break;
            }
            std::array<double, 2> g = gradient(m, x1, x2);
            double n2 = g[0] * g[0] + g[1] * g[1];
            if (n2 < 1e-16)
                break; // critical point of the band; Newton step undefined
            double s1 = -val * g[0] / n2, s2 = -val * g[1] / n2;
            double sn = std::hypot(s1, s2);
            if (sn > cap) {
                s1 *= cap / sn;
                s2 *= cap / sn;
            }
            x1 += s1;
            x2 += s2;
        }
        if (!ok) {
            // Derivative-free fallback: Nelder-Mead on (lambda_m - lambda*)^2.
            auto f2 = [&](double a, double b) {
                double d = band_value(m, a, b) - lambda_star;
                return d * d;
            };
            double d = 0.5 / G;
            struct Vx {
                double a, b, f;
            };
            std::array<Vx, 3> s;
            double a0 = static_cast<double>(cg1) / G, b0 = static_cast<double>(cg2) / G;
            s[0] = {a0, b0, f2(a0, b0)};
            s[1] = {a0 + d, b0, f2(a0 + d, b0)};
            s[2] = {a0, b0 + d, f2(a0, b0 + d)};
            for (int it = 0; it < 200; ++it) {
                std::stable_sort(s.begin(), s.end(),
                                 [](const Vx &p, const Vx &q) { return p.f < q.f; });
                if (s[0].f <= opt.tol_f * opt.tol_f * 0.25)
                    break;
                double ca = (s[0].a + s[1].a) / 2, cb = (s[0].b + s[1].b) / 2;
                Vx refl{ca + (ca - s[2].a), cb + (cb - s[2].b), 0};
                refl.f = f2(refl.a, refl.b);
                if (refl.f < s[0].f) {
                    Vx exp_{ca + 2 * (ca - s[2].a), cb + 2 * (cb - s[2].b), 0};
                    exp_.f = f2(exp_.a, exp_.b);
                    s[2] = exp_.f < refl.f ? exp_ : refl;
                } else if (refl.f < s[1].f) {
                    s[2] = refl;
                } else {
                    Vx con{ca + 0.5 * (s[2].a - ca), cb + 0.5 * (s[2].b - cb), 0};
                    con.f = f2(con.a, con.b);
                    if (con.f < s[2].f) {
                        s[2] = con;
                    } else {
                        for (int i = 1; i < 3; ++i) {
                            s[i].a = s[0].a + 0.5 * (s[i].a - s[0].a);
                            s[i].b = s[0].b + 0.5 * (s[i].b - s[0].b);
                            s[i].f = f2(s[i].a, s[i].b);
                        }
                    }
                }
            }
            std::stable_sort(s.begin(), s.end(),
                             [](const Vx &p, const Vx &q) { return p.f < q.f; });
            x1 = s[0].a;
            x2 = s[0].b;
            val = band_value(m, x1, x2) - lambda_star;
            ok = std::fabs(val) <= opt.tol_f;
        }
        if (ok) {
            // Points at an extremal level value are critical points of the
            // band, but |f|-convergence alone leaves an O(sqrt(tol_f))
            // position error that the polynomial-gradient validation would
            // see. When a critical point is nearby, land on it exactly;
            // regular level points (nonzero band gradient) are kept as-is.
            std::array<double, 2> g = gradient(m, x1, x2);
            double gn = std::hypot(g[0], g[1]);
            if (gn <= 0.5) {
                double p1 = x1, p2 = x2, pgn = gn;
                polish_critical(m, p1, p2, pgn, 40);
                double pf = band_value(m, p1, p2) - lambda_star;
                if (pgn < gn && std::fabs(pf) <= opt.tol_f) {
                    x1 = p1;
                    x2 = p2;
                    val = pf;
                    gn = pgn;
                }
            }
            accepted.push_back({wrap01(x1), wrap01(x2), std::fabs(val), gn});
        }
    }

    std::sort(accepted.begin(), accepted.end(), [](const LevelPoint &a, const LevelPoint &b) {
        if (a.k1 != b.k1)
            return a.k1 < b.k1;
        return a.k2 < b.k2;
    });
    // Two merge radii: refined points are generally distinct beyond the
    // convergence scale, but a pair of certified critical points closer than
    // one coarse grid cell is a single sub-resolution feature (a nearly flat
    // extremal plateau) that the two scans would otherwise resolve into
    // different numbers of pieces. Regular level points keep the tight
    // radius so curve-shaped levels still blow up between scales and get
    // flagged.
    std::vector<LevelPoint> kept;
    for (const LevelPoint &p : accepted) {
        bool dup = false;
        for (const LevelPoint &u : kept) {
            double r = (p.grad <= 1e-6 && u.grad <= 1e-6) ? std::max(opt.dedup, crit_merge)
                                                          : opt.dedup;
            if (torus_dist(TorusPoint(u.k1, u.k2), TorusPoint(p.k1, p.k2)) < r)
                dup = true;
        }
        if (!dup)
            kept.push_back(p);
    }
    return kept;
}

LevelSetReport BandLab::count_level_set(int m, double lambda_star, int G,
                                        const LevelSetOptions &opt) {
    if (m < 1 || m > Q())
        throw std::invalid_argument("band index out of range");
    LevelSetReport rep;
    rep.band = m;
    rep.lambda_star = lambda_star;

    const double crit_merge = 1.5 / G;
    std::vector<LevelPoint> pts = level_points(m, lambda_star, G, opt, crit_merge);
    for (const LevelPoint &p : pts) {
        rep.points.emplace_back(p.k1, p.k2);
        rep.point_residual_f.push_back(p.fres);
    }
    rep.count = static_cast<int>(pts.size());

    if (opt.two_scale) {
        rep.count_fine =
            static_cast<int>(level_points(m, lambda_star, 2 * G, opt, crit_merge).size());
        rep.stable = rep.count == rep.count_fine;
        if (!rep.stable)
            rep.flags.push_back("count differs between grid scales (" +
                                std::to_string(rep.count) + " at G=" + std::to_string(G) +
                                ", " + std::to_string(rep.count_fine) +
                                " at G=" + std::to_string(2 * G) + ")");
    } else {
        rep.count_fine = rep.count;
        rep.stable = true;
    }

    if (rep.count == 0) {
        const BandGrid &bg = grid(G);
        double vmin = bg.at(0, 0, m), vmax = vmin;
        for (int g1 = 0; g1 < G; ++g1)
            for (int g2 = 0; g2 < G; ++g2) {
                vmin = std::min(vmin, bg.at(g1, g2, m));
                vmax = std::max(vmax, bg.at(g1, g2, m));
            }
        if (lambda_star < vmin - 1e-7 || lambda_star > vmax + 1e-7)
            rep.flags.push_back("level value lies outside the band range (non-extremal)");
        else
            rep.flags.push_back("no candidate converged");
    }

    if (opt.validate && rep.count > 0) {
        const LaurentPoly2 &cp = charpoly();
        EvalPoly p0 = specialize_numeric(cp, lambda_star);
        EvalPoly d1 = specialize_numeric(cp.partial(Var::z1).shifted(1, 0), lambda_star);
        EvalPoly d2 = specialize_numeric(cp.partial(Var::z2).shifted(0, 1), lambda_star);
        const double tp = 2.0 * std::numbers::pi;
        double denom_grad = std::hypot(d1.one_norm, d2.one_norm);
        for (const TorusPoint &k : rep.points) {
            std::complex<double> z1 = std::polar(1.0, tp * k.k1);
            std::complex<double> z2 = std::polar(1.0, tp * k.k2);
            double rp = std::abs(p0.eval(z1, z2)) / (p0.one_norm > 0 ? p0.one_norm : 1.0);
            double rg = std::hypot(std::abs(d1.eval(z1, z2)), std::abs(d2.eval(z1, z2))) /
                        (denom_grad > 0 ? denom_grad : 1.0);
            rep.residual_p = std::max(rep.residual_p, rp);
            rep.residual_grad = std::max(rep.residual_grad, rg);
        }
        if (rep.residual_p > opt.tol_p) {
            rep.residual_ok = false;
            rep.flags.push_back("characteristic polynomial residual exceeds tolerance");
        }
        if (rep.residual_grad > opt.tol_grad) {
            rep.residual_ok = false;
            rep.flags.push_back("characteristic polynomial gradient residual exceeds tolerance");
        }
    }

    if (opt.with_bounds) {
        const Period &p = pot_.period();
        if (p.coprime()) {
            rep.bounds = bounds_report(p);
            rep.verdicts = {
                {"bkk", rep.bounds->bkk, rep.count <= rep.bounds->bkk},
                {"bezout_improved", rep.bounds->bezout_improved,
                 rep.count <= rep.bounds->bezout_improved},
                {"bezout_appendix", rep.bounds->bezout_appendix,
                 rep.count <= rep.bounds->bezout_appendix},
                {"bezout_original", rep.bounds->bezout_original,
                 rep.count <= rep.bounds->bezout_original},
            };
        } else {
            rep.flags.push_back(
                "hypothesis unmet: q1 and q2 are not coprime; cardinality bounds skipped");
        }
    }

    rep.flagged = !rep.flags.empty();
    return rep;
}

std::vector<double> eigenvalues_sorted(const Potential &v, const TorusPoint &k) {
    return BandLab(v).eigenvalues(k.k1, k.k2);
}

std::array<double, 2> band_gradient(const Potential &v, int m, const TorusPoint &k,
                                    double gap_tol) {
    BandLab lab(v);
    std::array<double, 2> g;
    if (!lab.gradient_hf(m, k.k1, k.k2, gap_tol, g)) {
        std::vector<double> ev = lab.eigenvalues(k.k1, k.k2);
        double gap = std::numeric_limits<double>::infinity();
        if (m >= 2)
            gap = std::min(gap, ev[m - 1] - ev[m - 2]);
        if (m <= lab.Q() - 1)
            gap = std::min(gap, ev[m] - ev[m - 1]);
        throw DegenerateBandError(gap);
    }
    return g;
}

std::vector<ExtremumRecord> find_extrema(const Potential &v, int m, int G) {
    return BandLab(v).find_extrema(m, G);
}

LevelSetReport count_level_set(const Potential &v, int m, double lambda_star, int G,
                               const LevelSetOptions &opt) {
    return BandLab(v).count_level_set(m, lambda_star, G, opt);
}

} // namespace blochpoly
