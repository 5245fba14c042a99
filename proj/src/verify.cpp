#include "blochpoly/verify.hpp"

#include "blochpoly/gcd.hpp"
#include "blochpoly/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace blochpoly {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

const char *status_name(CheckResult::Status s) {
    switch (s) {
    case CheckResult::Status::pass:
        return "pass";
    case CheckResult::Status::fail:
        return "fail";
    default:
        return "flagged";
    }
}

namespace {

// max over the support of |c1| q1 + |c2| q2.
long long support_bound_weight(const LaurentPoly2 &f, const Period &p) {
    long long worst = 0;
    for (const auto &[e, c] : f.terms())
        worst = std::max(worst, static_cast<long long>(std::abs(e.e1)) * p.q1 +
                                    static_cast<long long>(std::abs(e.e2)) * p.q2);
    return worst;
}

CheckResult support_bound_core(const char *name, const LaurentPoly2 &f, const Period &p) {
    CheckResult r;
    r.name = name;
    r.tag = "support-bound";
    long long worst = support_bound_weight(f, p);
    long long budget = static_cast<long long>(p.q1) * p.q2;
    r.measured = "max |c1|q1+|c2|q2 = " + std::to_string(worst);
    r.tolerance = "<= " + std::to_string(budget);
    r.status = worst <= budget ? CheckResult::Status::pass : CheckResult::Status::fail;
    return r;
}

CheckResult corner_core(const char *name, const LaurentPoly2 &f, const Period &p) {
    CheckResult r;
    r.name = name;
    r.tag = "corner-terms";
    r.tolerance = "4 corners, constant coefficients of magnitude 1";
    const Exp corners[4] = {{p.q2, 0}, {-p.q2, 0}, {0, p.q1}, {0, -p.q1}};
    int good = 0;
    for (const Exp &e : corners) {
        const UniPoly &c = f.coeff(e);
        bool ok = !c.is_zero() && c.is_constant() && c.coeff(0).abs() == Rational(1);
        if (ok)
            ++good;
        else
            r.details.push_back("corner (" + std::to_string(e.e1) + ", " + std::to_string(e.e2) +
                                ") is " + (c.is_zero() ? "missing" : "not a unit constant"));
    }
    r.measured = std::to_string(good) + " of 4 corners ok";
    r.status = good == 4 ? CheckResult::Status::pass : CheckResult::Status::fail;
    return r;
}

CheckResult hypothesis_unmet(const std::string &name, const std::string &tag) {
    CheckResult r;
    r.name = name;
    r.tag = tag;
    r.status = CheckResult::Status::flagged;
    r.measured = "skipped";
    r.details.push_back("hypothesis unmet: q1 and q2 are not coprime");
    return r;
}

} // namespace

CheckResult check_support_bound(const LaurentPoly2 &cp, const Period &p) {
    return support_bound_core("support-bound", cp, p);
}

CheckResult check_corner_terms(const LaurentPoly2 &cp, const Period &p) {
    return corner_core("corner-terms", cp, p);
}

CheckResult check_square_free(const LaurentPoly2 &cp, const Period &p, const Rational &lambda) {
    if (!p.coprime())
        return hypothesis_unmet("square-free", "square-free");
    CheckResult r;
    r.name = "square-free";
    r.tag = "square-free";
    r.tolerance = "gcd with the z1-derivative is constant";
    Poly2 cleared = cleared_charpoly(cp, p);
    Poly2 f(cleared.poly().specialize(lambda));
    Poly2 g(f.poly().partial(Var::z1));
    bool constant = gcd_constant_check(f, g);
    r.measured = std::string("gcd constant: ") + (constant ? "true" : "false") +
                 " at spectral value " + lambda.str();
    r.status = constant ? CheckResult::Status::pass : CheckResult::Status::fail;
    return r;
}

CheckResult check_substitution_degree(const LaurentPoly2 &cp, const Period &p,
                                      const Rational &lambda) {
    CheckResult r;
    r.name = "substitution-degree";
    r.tag = "substitution-degree";
    Poly2 cleared = cleared_charpoly(cp, p);
    Poly2 f(cleared.poly().specialize(lambda));
    Poly2 sub = substitute_powers(f, p.q1, p.q2);
    Poly2 dsub(sub.poly().partial(Var::z1));
    int want = 3 * p.q1 * p.q2;
    int got = sub.total_degree();
    int got_d = dsub.total_degree();
    r.measured = "degrees " + std::to_string(got) + " and " + std::to_string(got_d);
    r.tolerance = "exactly " + std::to_string(want) + " and " + std::to_string(want - 1);
    r.status = (got == want && got_d == want - 1) ? CheckResult::Status::pass
                                                  : CheckResult::Status::fail;
    return r;
}

CheckResult check_derivative_support(const LaurentPoly2 &cp, const Period &p) {
    CheckResult r;
    r.name = "derivative-support";
    r.tag = "derivative-support";
    long long budget = static_cast<long long>(p.q1) * p.q2;
    long long w1 = support_bound_weight(cp.partial(Var::z1).shifted(1, 0), p);
    long long w2 = support_bound_weight(cp.partial(Var::z2).shifted(0, 1), p);
    r.measured = "max weights " + std::to_string(w1) + " and " + std::to_string(w2);
    r.tolerance = "<= " + std::to_string(budget);
    r.status = (w1 <= budget && w2 <= budget) ? CheckResult::Status::pass
                                              : CheckResult::Status::fail;
    return r;
}

CheckResult check_eval_oracle(const Potential &v, const LaurentPoly2 &cp, int npoints) {
    CheckResult r;
    r.name = "eval-oracle";
    r.tag = "eval-oracle";
    r.tolerance = "relative error <= 1e-08";
    SplitMix64 rng(0x5eedULL);
    const double tp = 2.0 * std::numbers::pi;
    double worst = 0.0;
    for (int i = 0; i < npoints; ++i) {
        double k1 = rng.uniform01();
        double k2 = rng.uniform01();
        double lambda = -8.0 + 16.0 * rng.uniform01();
        std::complex<double> z1 = std::polar(1.0, tp * k1);
        std::complex<double> z2 = std::polar(1.0, tp * k2);
        std::complex<double> lhs = cp.eval(z1, z2, lambda);

        CMatrix d = build_numeric(v, k1, k2);
        for (int j = 0; j < d.n; ++j)
            d.at(j, j) -= lambda;
        std::complex<double> rhs = lu_det(std::move(d));

        double scale = std::max(std::abs(rhs), 1e-9 * specialize_numeric(cp, lambda).one_norm);
        worst = std::max(worst, std::abs(lhs - rhs) / (scale > 0 ? scale : 1.0));
    }
    r.measured = "max relative error " + fmt_double(worst) + " over " +
                 std::to_string(npoints) + " points";
    r.status = worst <= 1e-8 ? CheckResult::Status::pass : CheckResult::Status::fail;
    return r;
}

std::vector<CheckResult> check_level_sets(BandLab &lab, int G) {
    const Period &p = lab.potential().period();
    if (!p.coprime())
        return {hypothesis_unmet("level-sets", "level-sets")};

    std::vector<CheckResult> out;
    for (int m = 1; m <= lab.Q(); ++m) {
        char name[40];
        std::snprintf(name, sizeof(name), "level-sets band %02d", m);
        CheckResult r;
        r.name = name;
        r.tag = "level-sets";

        std::vector<ExtremumRecord> recs = lab.find_extrema(m, G);
        std::vector<double> values;
        int unconverged = 0;
        for (const ExtremumRecord &rec : recs) {
            if (!rec.converged) {
                ++unconverged;
                r.details.push_back("unconverged extremum candidate near (" +
                                    fmt_double(rec.k.k1) + ", " + fmt_double(rec.k.k2) +
                                    "), gradient norm " + fmt_double(rec.residual));
                continue;
            }
            values.push_back(rec.lambda);
        }
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end(),
                                 [](double a, double b) { return std::fabs(a - b) < 1e-10; }),
                     values.end());

        bool any_flagged = unconverged > 0;
        bool all_ok = true;
        int maxcount = 0;
        long long bkk = 0;
        for (double lam : values) {
            LevelSetReport rep = lab.count_level_set(m, lam, G);
            maxcount = std::max(maxcount, rep.count);
            if (rep.bounds)
                bkk = rep.bounds->bkk;
            std::string line = "value " + fmt_double(lam) + ": count " +
                               std::to_string(rep.count) + " (" +
                               std::to_string(rep.count_fine) + " at doubled grid), |P| " +
                               fmt_double(rep.residual_p) + ", grad " +
                               fmt_double(rep.residual_grad);
            if (rep.flagged)
                for (const std::string &f : rep.flags)
                    line += "; " + f;
            r.details.push_back(line);
            if (rep.flagged || !rep.stable)
                any_flagged = true;
            // Only a trusted measurement can contradict a bound: when the
            // count is unstable across scales or a residual check failed,
            // the points include non-critical level points and the count is
            // flagged as unusable rather than held against the bounds.
            if (rep.stable && rep.residual_ok)
                for (const BoundVerdict &bv : rep.verdicts)
                    if (!bv.pass)
                        all_ok = false;
        }
        r.measured = "max level-set count " + std::to_string(maxcount) + " over " +
                     std::to_string(values.size()) + " extremal values";
        r.tolerance = "<= " + std::to_string(bkk) + " (mixed-volume bound)";
        if (!all_ok)
            r.status = CheckResult::Status::fail;
        else if (any_flagged)
            r.status = CheckResult::Status::flagged;
        else
            r.status = CheckResult::Status::pass;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> checker_self_tests(const LaurentPoly2 &cp, const Period &p) {
    std::vector<CheckResult> out;

    { // A planted out-of-diamond exponent must trip the support checker.
        LaurentPoly2 bad = cp;
        bad.add_term({p.q2 + 1, p.q1 + 1}, UniPoly(1));
        CheckResult inner = support_bound_core("support-bound", bad, p);
        CheckResult r;
        r.name = "self-test support-bound";
        r.tag = "self-test";
        r.measured = std::string("checker reported ") + status_name(inner.status);
        r.tolerance = "fail expected on planted exponent";
        r.details.push_back("planted exponent (" + std::to_string(p.q2 + 1) + ", " +
                            std::to_string(p.q1 + 1) + ")");
        r.status = inner.status == CheckResult::Status::fail ? CheckResult::Status::pass
                                                             : CheckResult::Status::fail;
        out.push_back(std::move(r));
    }

    { // Deleting a corner term must trip the corner checker.
        LaurentPoly2 bad = cp;
        bad.add_term({p.q2, 0}, -cp.coeff({p.q2, 0}));
        CheckResult inner = corner_core("corner-terms", bad, p);
        CheckResult r;
        r.name = "self-test corner-terms";
        r.tag = "self-test";
        r.measured = std::string("checker reported ") + status_name(inner.status);
        r.tolerance = "fail expected on deleted corner";
        r.status = inner.status == CheckResult::Status::fail ? CheckResult::Status::pass
                                                             : CheckResult::Status::fail;
        out.push_back(std::move(r));
    }

    { // A planted square factor must be caught by the gcd test.
        LaurentPoly2 a;
        a.add_term({1, 0}, UniPoly(1));
        a.add_term({0, 1}, UniPoly(1)); // z1 + z2
        LaurentPoly2 b;
        b.add_term({1, 0}, UniPoly(1));
        b.add_term({0, 1}, UniPoly(-1)); // z1 - z2
        LaurentPoly2 planted = a * a * b;
        Poly2 f(planted);
        Poly2 g(planted.partial(Var::z1));
        bool constant = gcd_constant_check(f, g);
        CheckResult r;
        r.name = "self-test square-free";
        r.tag = "self-test";
        r.measured = std::string("gcd constant: ") + (constant ? "true" : "false");
        r.tolerance = "false expected for (z1+z2)^2 (z1-z2)";
        r.status = constant ? CheckResult::Status::fail : CheckResult::Status::pass;
        out.push_back(std::move(r));
    }

    return out;
}

VerdictReport run_verify(BandLab &lab, int G) {
    const Potential &pot = lab.potential();
    const Period &p = pot.period();
    const LaurentPoly2 &cp = lab.charpoly();

    VerdictReport rep;
    rep.checks.push_back(check_support_bound(cp, p));
    rep.checks.push_back(check_corner_terms(cp, p));
    rep.checks.push_back(check_derivative_support(cp, p));
    rep.checks.push_back(check_eval_oracle(pot, cp, 100));
    rep.checks.push_back(check_square_free(cp, p, Rational(0)));
    if (p.coprime()) {
        rep.checks.push_back(check_substitution_degree(cp, p, Rational(0)));
    } else {
        rep.checks.push_back(hypothesis_unmet("substitution-degree", "substitution-degree"));
    }
    for (CheckResult &c : check_level_sets(lab, G))
        rep.checks.push_back(std::move(c));
    for (CheckResult &c : checker_self_tests(cp, p))
        rep.checks.push_back(std::move(c));

    std::sort(rep.checks.begin(), rep.checks.end(),
              [](const CheckResult &a, const CheckResult &b) { return a.name < b.name; });
    rep.overall_pass = true;
    for (const CheckResult &c : rep.checks)
        if (c.status == CheckResult::Status::fail)
            rep.overall_pass = false;
    return rep;
}

} // namespace blochpoly
