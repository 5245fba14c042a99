// Acceptance gate: one line per criterion, exit 0 only if all ten pass.
// argv[1] is the path to the command-line binary (used by criteria 1 and 10).

#include "blochpoly/bands.hpp"
#include "blochpoly/cli.hpp"
#include "blochpoly/gcd.hpp"
#include "blochpoly/polytope.hpp"
#include "blochpoly/rng.hpp"
#include "blochpoly/verify.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace blochpoly;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string g_cli;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_tool(const std::string &args, const fs::path &out) {
    std::string cmd = "\"" + g_cli + "\" " + args + " --out \"" + out.string() + "\"";
    int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Charpolys computed once and shared across criteria; every consumer checks
// them against a different, independent oracle.
std::map<std::pair<std::pair<int, int>, uint64_t>, LaurentPoly2> g_cp;

const LaurentPoly2 &cached_charpoly(int q1, int q2, uint64_t seed) {
    auto key = std::make_pair(std::make_pair(q1, q2), seed);
    auto it = g_cp.find(key);
    if (it == g_cp.end())
        it = g_cp.emplace(key, charpoly(generate_potential(q1, q2, seed))).first;
    return it->second;
}

std::vector<double> free_eigenvalues(const Period &p, double k1, double k2) {
    std::vector<double> v;
    for (int j1 = 0; j1 < p.q1; ++j1)
        for (int j2 = 0; j2 < p.q2; ++j2)
            v.push_back(2.0 * std::cos(2.0 * std::numbers::pi * (k1 + j1) / p.q1) +
                        2.0 * std::cos(2.0 * std::numbers::pi * (k2 + j2) / p.q2));
    std::sort(v.begin(), v.end());
    return v;
}

LatticePolygon random_polygon(SplitMix64 &rng) {
    for (;;) {
        int n = 3 + static_cast<int>(rng.next() % 8);
        std::vector<Pt> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back({static_cast<long long>(rng.next() % 21) - 10,
                           static_cast<long long>(rng.next() % 21) - 10});
        LatticePolygon h = LatticePolygon::hull(pts);
        if (!h.degenerate())
            return h;
    }
}

// --- criterion 1: closed-form bounds through the tool, exact integers ---

bool criterion1(std::string &detail) {
    struct Row {
        int q1, q2;
        long long bkk, imp, app, orig;
    };
    const Row rows[] = {{4, 3, 48, 105, 110, 196},
                        {5, 3, 60, 132, 156, 256},
                        {5, 4, 80, 177, 182, 324},
                        {7, 4, 112, 249, 306, 484}};
    auto t0 = std::chrono::steady_clock::now();
    fs::path out = fs::temp_directory_path() / "acceptance_bounds.json";
    for (const Row &r : rows) {
        std::string args = "bounds --random " + std::to_string(r.q1) + " " +
                           std::to_string(r.q2) + " --seed 1";
        if (run_tool(args, out) != 0) {
            detail = "bounds exited nonzero for (" + std::to_string(r.q1) + "," +
                     std::to_string(r.q2) + ")";
            return false;
        }
        ordered_json j = ordered_json::parse(slurp(out));
        if (j["bkk"] != r.bkk || j["bezout_improved"] != r.imp ||
            j["bezout_appendix"] != r.app || j["bezout_original"] != r.orig) {
            detail = "wrong bounds for (" + std::to_string(r.q1) + "," +
                     std::to_string(r.q2) + "): " + j.dump();
            return false;
        }
    }
    double dt = seconds_since(t0);
    fs::remove(out);
    if (dt >= 1.0) {
        detail = "too slow: " + std::to_string(dt) + " s";
        return false;
    }
    std::ostringstream ss;
    ss << "4 periods exact, " << dt << " s";
    detail = ss.str();
    return true;
}

// --- criterion 2: exact charpoly vs LU determinant at random points ---

bool criterion2(std::string &detail) {
    double worst = 0.0, slowest = 0.0;
    const double tp = 2.0 * std::numbers::pi;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        auto t0 = std::chrono::steady_clock::now();
        Potential v = generate_potential(4, 3, seed);
        const LaurentPoly2 &cp = cached_charpoly(4, 3, seed);
        SplitMix64 rng(0x5eedULL + seed);
        for (int i = 0; i < 100; ++i) {
            double k1 = rng.uniform01(), k2 = rng.uniform01();
            double lambda = -8.0 + 16.0 * rng.uniform01();
            std::complex<double> lhs =
                cp.eval(std::polar(1.0, tp * k1), std::polar(1.0, tp * k2), lambda);
            CMatrix d = build_numeric(v, k1, k2);
            for (int j = 0; j < d.n; ++j)
                d.at(j, j) -= lambda;
            std::complex<double> rhs = lu_det(std::move(d));
            double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
            worst = std::max(worst, rel);
        }
        slowest = std::max(slowest, seconds_since(t0));
    }
    std::ostringstream ss;
    ss << "max relative error " << worst << " over 5 potentials x 100 points, slowest "
       << slowest << " s";
    detail = ss.str();
    return worst <= 1e-8 && slowest < 60.0;
}

// --- criterion 3: support bound and unit corner coefficients, symbolically ---

bool criterion3(std::string &detail) {
    Period p(4, 3);
    std::vector<const LaurentPoly2 *> polys;
    for (uint64_t seed = 1; seed <= 5; ++seed)
        polys.push_back(&cached_charpoly(4, 3, seed));
    LaurentPoly2 cp0 = charpoly(Potential::zero(p));
    polys.push_back(&cp0);

    for (size_t i = 0; i < polys.size(); ++i) {
        for (const Exp &e : polys[i]->support())
            if (std::abs(e.e1) * p.q1 + std::abs(e.e2) * p.q2 > p.q1 * p.q2) {
                detail = "support exponent outside the diamond in potential " +
                         std::to_string(i);
                return false;
            }
        for (Exp corner : {Exp{p.q2, 0}, Exp{-p.q2, 0}, Exp{0, p.q1}, Exp{0, -p.q1}}) {
            const UniPoly &c = polys[i]->coeff(corner);
            if (c.is_zero() || !c.is_constant() || c.coeff(0).abs() != Rational(1)) {
                detail = "corner (" + std::to_string(corner.e1) + "," +
                         std::to_string(corner.e2) + ") not a unit constant in potential " +
                         std::to_string(i);
                return false;
            }
        }
    }
    detail = "6 potentials, all exponents and corners exact";
    return true;
}

// --- criterion 4: Newton polytope geometry ---

bool criterion4(std::string &detail) {
    auto t0 = std::chrono::steady_clock::now();
    for (auto [q1, q2] : {std::pair{4, 3}, {5, 3}}) {
        Period p(q1, q2);
        const LaurentPoly2 &cp = cached_charpoly(q1, q2, 1);
        LatticePolygon hull = newton_polytope(cp.specialize(Rational(0)).support());
        if (!(hull == exponent_diamond(p))) {
            detail = "specialized hull is not the diamond for (" + std::to_string(q1) +
                     "," + std::to_string(q2) + ")";
            return false;
        }
        if (mixed_volume(hull, hull) != 4LL * q1 * q2) {
            detail = "self mixed volume != 4*q1*q2 for (" + std::to_string(q1) + "," +
                     std::to_string(q2) + ")";
            return false;
        }
    }

    SplitMix64 rng(0xACCE55);
    for (int t = 0; t < 100; ++t) {
        LatticePolygon p = random_polygon(rng);
        if (mixed_volume(p, p) != p.area2()) {
            detail = "MV(P,P) != area2(P) on trial " + std::to_string(t);
            return false;
        }
    }
    for (int t = 0; t < 100; ++t) {
        LatticePolygon p = random_polygon(rng);
        LatticePolygon r = random_polygon(rng);
        // A hull of a vertex subset is contained in the original polygon.
        LatticePolygon q = p;
        for (int tries = 0; tries < 50; ++tries) {
            std::vector<Pt> sub;
            for (const Pt &v : p.vertices())
                if (rng.next() % 2)
                    sub.push_back(v);
            if (sub.size() < 3)
                continue;
            LatticePolygon h = LatticePolygon::hull(sub);
            if (!h.degenerate()) {
                q = h;
                break;
            }
        }
        if (mixed_volume(q, r) > mixed_volume(p, r)) {
            detail = "mixed volume not monotone on trial " + std::to_string(t);
            return false;
        }
    }

    LatticePolygon square = LatticePolygon::hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    LatticePolygon diamond = LatticePolygon::hull({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    if (mixed_volume(square, diamond) != 4) {
        detail = "MV(square, diamond) != 4";
        return false;
    }

    double dt = seconds_since(t0);
    if (dt >= 10.0) {
        detail = "too slow: " + std::to_string(dt) + " s";
        return false;
    }
    std::ostringstream ss;
    ss << "diamond hulls, 200 random-polygon identities, " << dt << " s";
    detail = ss.str();
    return true;
}

// --- criterion 5: square-freeness at three rational levels ---

bool criterion5(std::string &detail) {
    auto t0 = std::chrono::steady_clock::now();
    const Rational levels[] = {Rational(0), Rational(-2), Rational(7, 2)};
    for (auto [q1, q2] : {std::pair{4, 3}, {5, 3}}) {
        Period p(q1, q2);
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            const LaurentPoly2 &cp = cached_charpoly(q1, q2, seed);
            Poly2 cleared = cleared_charpoly(cp, p);
            for (const Rational &lam : levels) {
                Poly2 f(cleared.poly().specialize(lam));
                Poly2 g(f.poly().partial(Var::z1));
                if (!gcd_constant_check(f, g)) {
                    detail = "repeated factor reported for (" + std::to_string(q1) + "," +
                             std::to_string(q2) + ") seed " + std::to_string(seed) +
                             " at lambda " + lam.str();
                    return false;
                }
            }
        }
    }

    // The planted square must be caught, or the pass above means nothing.
    {
        Poly2 cleared = cleared_charpoly(cached_charpoly(4, 3, 1), Period(4, 3));
        LaurentPoly2 lin = LaurentPoly2::monomial(1, 0) + LaurentPoly2::monomial(0, 1);
        Poly2 f(cleared.poly().specialize(Rational(0)) * lin * lin);
        Poly2 g(f.poly().partial(Var::z1));
        if (gcd_constant_check(f, g)) {
            detail = "planted square factor was not detected";
            return false;
        }
    }

    double dt = seconds_since(t0);
    if (dt >= 120.0) {
        detail = "too slow: " + std::to_string(dt) + " s";
        return false;
    }
    std::ostringstream ss;
    ss << "30 level checks square-free, planted square detected, " << dt << " s";
    detail = ss.str();
    return true;
}

// --- criterion 6: substitution degrees ---

bool criterion6(std::string &detail) {
    for (auto [q1, q2] : {std::pair{4, 3}, {5, 3}, {5, 4}}) {
        Period p(q1, q2);
        const LaurentPoly2 &cp = cached_charpoly(q1, q2, 1);
        Poly2 f(cleared_charpoly(cp, p).poly().specialize(Rational(0)));
        Poly2 sub = substitute_powers(f, q1, q2);
        int want = 3 * q1 * q2;
        if (sub.total_degree() != want) {
            detail = "total degree " + std::to_string(sub.total_degree()) + " != " +
                     std::to_string(want) + " for (" + std::to_string(q1) + "," +
                     std::to_string(q2) + ")";
            return false;
        }
        Poly2 d(sub.poly().partial(Var::z1));
        if (d.total_degree() != want - 1) {
            detail = "derivative degree " + std::to_string(d.total_degree()) + " != " +
                     std::to_string(want - 1) + " for (" + std::to_string(q1) + "," +
                     std::to_string(q2) + ")";
            return false;
        }
    }
    detail = "degrees 36/35, 45/44, 60/59 exact";
    return true;
}

// --- criterion 7: free-operator eigenvalues against the closed form ---

bool criterion7(std::string &detail) {
    Period p(4, 3);
    Potential v = Potential::zero(p);
    double worst = 0.0;
    for (int g1 = 0; g1 < 21; ++g1)
        for (int g2 = 0; g2 < 21; ++g2) {
            std::vector<double> got = eigh(build_numeric(v, g1 / 21.0, g2 / 21.0)).values;
            std::vector<double> want = free_eigenvalues(p, g1 / 21.0, g2 / 21.0);
            for (size_t i = 0; i < got.size(); ++i)
                worst = std::max(worst, std::fabs(got[i] - want[i]));
        }
    std::ostringstream ss;
    ss << "max eigenvalue deviation " << worst << " on 21x21 grid";
    detail = ss.str();
    return worst <= 1e-9;
}

// --- criterion 8: perturbative gradient vs central differences ---

bool criterion8(std::string &detail) {
    BandLab lab(generate_potential(4, 3, 1));
    SplitMix64 rng(0x6ead);
    double worst = 0.0;
    int compared = 0, drawn = 0;
    while (compared < 50 && drawn < 5000) {
        ++drawn;
        double k1 = rng.uniform01(), k2 = rng.uniform01();
        int m = 1 + static_cast<int>(rng.next() % 12);
        std::array<double, 2> hf{};
        if (!lab.gradient_hf(m, k1, k2, 1e-6, hf))
            continue; // not a simple eigenvalue, outside the criterion
        std::array<double, 2> fd = lab.gradient_fd(m, k1, k2, 1e-5);
        worst = std::max({worst, std::fabs(hf[0] - fd[0]), std::fabs(hf[1] - fd[1])});
        ++compared;
    }
    std::ostringstream ss;
    ss << "max |HF - FD| " << worst << " over " << compared << " simple points";
    detail = ss.str();
    return compared == 50 && worst <= 1e-5;
}

// --- criterion 9: level-set counts of band-edge extrema at two scales ---

bool criterion9(std::string &detail) {
    auto t0 = std::chrono::steady_clock::now();
    const int G = 120;

    // Free operator: both spectral edges are attained at exactly one point.
    {
        BandLab lab(Potential::zero(Period(4, 3)));
        LevelSetReport lo = lab.count_level_set(1, -4.0, G);
        if (!(lo.count == 1 && lo.stable && lo.residual_ok)) {
            detail = "free bottom edge: count " + std::to_string(lo.count) +
                     (lo.stable ? "" : " (unstable)") +
                     (lo.residual_ok ? "" : " (residuals over tolerance)");
            return false;
        }
        if (torus_dist(lo.points.at(0), TorusPoint(0.0, 0.5)) > 1e-4) {
            detail = "free bottom edge located away from (0, 1/2)";
            return false;
        }
        LevelSetReport hi = lab.count_level_set(12, 4.0, G);
        if (!(hi.count == 1 && hi.stable && hi.residual_ok)) {
            detail = "free top edge: count " + std::to_string(hi.count);
            return false;
        }
        if (torus_dist(hi.points.at(0), TorusPoint(0.0, 0.0)) > 1e-4) {
            detail = "free top edge located away from (0, 0)";
            return false;
        }
    }

    int level_sets = 0, max_count = 0;
    double worst_p = 0.0, worst_grad = 0.0;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        BandLab lab(generate_potential(4, 3, seed));
        for (int m = 1; m <= lab.Q(); ++m) {
            std::vector<ExtremumRecord> recs = lab.find_extrema(m, G);
            bool have_lo = false, have_hi = false;
            double lo = 0.0, hi = 0.0;
            for (const ExtremumRecord &r : recs) {
                if (!r.converged)
                    continue;
                if (r.kind == ExtremumRecord::Kind::min && (!have_lo || r.lambda < lo)) {
                    lo = r.lambda;
                    have_lo = true;
                }
                if (r.kind == ExtremumRecord::Kind::max && (!have_hi || r.lambda > hi)) {
                    hi = r.lambda;
                    have_hi = true;
                }
            }
            if (!have_lo || !have_hi) {
                detail = "seed " + std::to_string(seed) + " band " + std::to_string(m) +
                         ": no converged band edge";
                return false;
            }
            for (double lam : {lo, hi}) {
                LevelSetReport rep = lab.count_level_set(m, lam, G);
                ++level_sets;
                max_count = std::max(max_count, rep.count);
                worst_p = std::max(worst_p, rep.residual_p);
                worst_grad = std::max(worst_grad, rep.residual_grad);
                if (!rep.stable || !rep.residual_ok || rep.count < 1 || rep.count > 48) {
                    std::ostringstream ss;
                    ss << "seed " << seed << " band " << m << " level " << lam << ": count "
                       << rep.count << "/" << rep.count_fine << " stable=" << rep.stable
                       << " |P|=" << rep.residual_p << " grad=" << rep.residual_grad;
                    detail = ss.str();
                    return false;
                }
            }
        }
    }

    double dt = seconds_since(t0);
    if (dt >= 900.0) {
        detail = "too slow: " + std::to_string(dt) + " s";
        return false;
    }
    std::ostringstream ss;
    ss << level_sets << " band-edge level sets stable at G=120/240, max count " << max_count
       << ", worst |P| " << worst_p << ", worst grad " << worst_grad << ", " << dt << " s";
    detail = ss.str();
    return true;
}

// --- criterion 10: byte-identical verification reports ---

bool criterion10(std::string &detail) {
    fs::path a = fs::temp_directory_path() / "acceptance_verify_a.json";
    fs::path b = fs::temp_directory_path() / "acceptance_verify_b.json";
    int ra = run_tool("verify --random 4 3 --seed 1", a);
    int rb = run_tool("verify --random 4 3 --seed 1", b);
    if (ra != 0 || rb != 0) {
        detail = "verify exited " + std::to_string(ra) + " and " + std::to_string(rb);
        return false;
    }
    std::string sa = slurp(a), sb = slurp(b);
    fs::remove(a);
    fs::remove(b);
    if (sa.empty() || sa != sb) {
        detail = "reports differ (" + std::to_string(sa.size()) + " vs " +
                 std::to_string(sb.size()) + " bytes)";
        return false;
    }
    detail = "two runs byte-identical (" + std::to_string(sa.size()) + " bytes)";
    return true;
}

} // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli-binary>\n");
        return 2;
    }
    g_cli = argv[1];

    const std::pair<const char *, std::function<bool(std::string &)>> criteria[] = {
        {"bounds table", criterion1},
        {"charpoly vs determinant oracle", criterion2},
        {"support bound and corner terms", criterion3},
        {"Newton polytope and mixed volume", criterion4},
        {"square-free levels", criterion5},
        {"substitution degrees", criterion6},
        {"free-operator eigenvalues", criterion7},
        {"band gradients", criterion8},
        {"band-edge level sets", criterion9},
        {"deterministic reports", criterion10},
    };

    bool all = true;
    for (size_t i = 0; i < std::size(criteria); ++i) {
        std::string detail;
        bool ok;
        try {
            ok = criteria[i].second(detail);
        } catch (const std::exception &e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        all = all && ok;
        std::printf("criterion %zu (%s): %s — %s\n", i + 1, criteria[i].first,
                    ok ? "PASS" : "FAIL", detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
