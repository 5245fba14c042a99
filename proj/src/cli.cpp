#include "blochpoly/cli.hpp"

#include "blochpoly/bands.hpp"
#include "blochpoly/gcd.hpp"
#include "blochpoly/polytope.hpp"
#include "blochpoly/rng.hpp"
#include "blochpoly/verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace blochpoly {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char *kToolVersion = "blochpoly 1.0.0";

std::string csv_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Rational entry_to_rational(const ordered_json &e, int row, int col) {
    if (e.is_number_integer())
        return Rational(static_cast<long>(e.get<long long>()));
    if (e.is_string()) {
        try {
            return Rational::parse(e.get<std::string>());
        } catch (const std::exception &ex) {
            throw InputError("potential row " + std::to_string(row) + ", column " +
                             std::to_string(col) + ": " + ex.what());
        }
    }
    if (e.is_number_float())
        throw InputError("potential row " + std::to_string(row) + ", column " +
                         std::to_string(col) +
                         ": decimal entries must be quoted strings so they stay exact");
    throw InputError("potential row " + std::to_string(row) + ", column " +
                     std::to_string(col) + ": expected an integer or a number string");
}

} // namespace

Potential potential_from_json(const ordered_json &j) {
    if (!j.is_object())
        throw InputError("potential file: top level must be a JSON object");
    for (const char *key : {"q1", "q2", "values"})
        if (!j.contains(key))
            throw InputError(std::string("potential file: missing field \"") + key + "\"");
    if (!j["q1"].is_number_integer() || !j["q2"].is_number_integer())
        throw InputError("potential file: \"q1\" and \"q2\" must be integers");
    const int q1 = j["q1"].get<int>();
    const int q2 = j["q2"].get<int>();
    Period period(q1, q2); // throws std::invalid_argument if q < 3

    const ordered_json &rows = j["values"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != q1)
        throw InputError("potential file: \"values\" must be an array of q1 = " +
                         std::to_string(q1) + " rows");
    std::vector<std::vector<Rational>> values;
    values.reserve(static_cast<size_t>(q1));
    for (int m = 1; m <= q1; ++m) {
        const ordered_json &row = rows[static_cast<size_t>(m - 1)];
        if (!row.is_array() || static_cast<int>(row.size()) != q2)
            throw InputError("potential row " + std::to_string(m) + ": expected q2 = " +
                             std::to_string(q2) + " entries");
        std::vector<Rational> out;
        out.reserve(static_cast<size_t>(q2));
        for (int n = 1; n <= q2; ++n)
            out.push_back(entry_to_rational(row[static_cast<size_t>(n - 1)], m, n));
        values.push_back(std::move(out));
    }
    return Potential(period, std::move(values));
}

Potential parse_potential(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open potential file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception &ex) {
        throw InputError("potential file " + path + ": " + ex.what());
    }
    try {
        return potential_from_json(j);
    } catch (const std::invalid_argument &ex) {
        throw InputError("potential file " + path + ": " + ex.what());
    }
}

Potential generate_potential(int q1, int q2, uint64_t seed) {
    Period period(q1, q2);
    SplitMix64 rng(seed);
    std::vector<std::vector<Rational>> values(static_cast<size_t>(q1));
    for (auto &row : values) {
        row.reserve(static_cast<size_t>(q2));
        for (int n = 0; n < q2; ++n)
            row.emplace_back(static_cast<long>(rng.next() % 7) - 3);
    }
    return Potential(period, std::move(values));
}

ordered_json charpoly_to_json(const LaurentPoly2 &cp) {
    ordered_json terms = ordered_json::array();
    for (const auto &[e, c] : cp.terms()) {
        ordered_json coeffs = ordered_json::array();
        for (int k = 0; k <= c.degree(); ++k)
            coeffs.push_back(c.coeff(k).str());
        terms.push_back({{"e1", e.e1}, {"e2", e.e2}, {"lambda_coeffs", std::move(coeffs)}});
    }
    return terms;
}

LaurentPoly2 charpoly_from_json(const ordered_json &j) {
    if (!j.is_array())
        throw InputError("charpoly terms: expected an array");
    LaurentPoly2 p;
    for (const ordered_json &t : j) {
        const int e1 = t.at("e1").get<int>();
        const int e2 = t.at("e2").get<int>();
        UniPoly c;
        const ordered_json &coeffs = t.at("lambda_coeffs");
        for (size_t k = 0; k < coeffs.size(); ++k)
            c += UniPoly::monomial(Rational::parse(coeffs[k].get<std::string>()),
                                   static_cast<int>(k));
        p.add_term({e1, e2}, c);
    }
    return p;
}

namespace {

struct Options {
    std::string potential_path;
    std::vector<int> random_period;
    uint64_t seed = 1;
    int grid = 120;
    std::string lambda;
    int band = 0;
    double tol_f = 1e-8;
    double tol_grad = 1e-4;
    std::string out_path;
    std::string format;
    bool seed_given = false;
};

void add_common_options(CLI::App *cmd, Options &o) {
    cmd->add_option("--potential", o.potential_path, "path to a potential JSON file");
    cmd->add_option("--random", o.random_period,
                    "generate a seeded random potential with periods Q1 Q2")
        ->expected(2);
    cmd->add_option("--seed", o.seed, "seed for --random (default 1)");
    cmd->add_option("--grid", o.grid, "quasimomentum grid resolution (default 120)");
    cmd->add_option("--lambda", o.lambda, "spectral level, decimal or \"p/q\"");
    cmd->add_option("--band", o.band, "band index, 1-based");
    cmd->add_option("--tol-f", o.tol_f, "band-value residual tolerance");
    cmd->add_option("--tol-grad", o.tol_grad, "gradient residual tolerance");
    cmd->add_option("--out", o.out_path, "output file (default stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

Potential make_potential(const Options &o) {
    const bool have_file = !o.potential_path.empty();
    const bool have_random = !o.random_period.empty();
    if (have_file == have_random)
        throw InputError("exactly one of --potential or --random is required");
    if (have_file) {
        if (o.seed_given)
            throw InputError("--seed only applies together with --random");
        return parse_potential(o.potential_path);
    }
    try {
        return generate_potential(o.random_period[0], o.random_period[1], o.seed);
    } catch (const std::invalid_argument &ex) {
        throw InputError(ex.what());
    }
}

ordered_json input_echo(const Potential &v, const Options &o) {
    ordered_json values = ordered_json::array();
    for (int m = 1; m <= v.period().q1; ++m) {
        ordered_json row = ordered_json::array();
        for (int n = 1; n <= v.period().q2; ++n)
            row.push_back(v.value(m, n).str());
        values.push_back(std::move(row));
    }
    ordered_json j{{"q1", v.period().q1}, {"q2", v.period().q2}, {"values", std::move(values)}};
    if (!o.random_period.empty())
        j["seed"] = o.seed;
    else
        j["source"] = o.potential_path;
    return j;
}

void require_format(const Options &o, const std::string &supported) {
    if (!o.format.empty() && o.format != supported)
        throw InputError("this subcommand only supports --format " + supported);
}

void write_output(const Options &o, const std::string &payload) {
    if (o.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out)
        throw InputError("cannot open output file: " + o.out_path);
    out << payload;
    if (!out)
        throw InputError("failed writing output file: " + o.out_path);
}

void write_json(const Options &o, const ordered_json &j) {
    write_output(o, j.dump(2) + "\n");
}

ordered_json bounds_to_json(const Period &p, const BoundsReport &b) {
    ordered_json j{{"q1", p.q1},
                   {"q2", p.q2},
                   {"coprime", p.coprime()},
                   {"bkk", b.bkk},
                   {"bezout_improved", b.bezout_improved},
                   {"bezout_appendix", b.bezout_appendix},
                   {"bezout_original", b.bezout_original}};
    if (b.bkk_geometric)
        j["bkk_geometric"] = *b.bkk_geometric;
    return j;
}

ordered_json extremum_to_json(const ExtremumRecord &r) {
    return ordered_json{{"band", r.band},
                        {"k1", r.k.k1},
                        {"k2", r.k.k2},
                        {"lambda", r.lambda},
                        {"kind", r.kind == ExtremumRecord::Kind::min ? "min" : "max"},
                        {"residual", r.residual},
                        {"converged", r.converged}};
}

ordered_json level_set_to_json(const LevelSetReport &r) {
    ordered_json points = ordered_json::array();
    for (size_t i = 0; i < r.points.size(); ++i)
        points.push_back({{"k1", r.points[i].k1},
                          {"k2", r.points[i].k2},
                          {"residual_f", r.point_residual_f[i]}});
    ordered_json j{{"band", r.band},
                   {"lambda", r.lambda_star},
                   {"count", r.count},
                   {"count_fine", r.count_fine},
                   {"stable", r.stable},
                   {"points", std::move(points)}};
    if (r.bounds) {
        j["bounds"] = {{"bkk", r.bounds->bkk},
                       {"bezout_improved", r.bounds->bezout_improved},
                       {"bezout_appendix", r.bounds->bezout_appendix},
                       {"bezout_original", r.bounds->bezout_original}};
        ordered_json verdicts = ordered_json::array();
        for (const BoundVerdict &v : r.verdicts)
            verdicts.push_back({{"name", v.name}, {"bound", v.bound}, {"pass", v.pass}});
        j["verdicts"] = std::move(verdicts);
    }
    j["residual_p"] = r.residual_p;
    j["residual_grad"] = r.residual_grad;
    j["residual_ok"] = r.residual_ok;
    j["flagged"] = r.flagged;
    j["flags"] = r.flags;
    return j;
}

ordered_json verdict_to_json(const VerdictReport &rep) {
    ordered_json checks = ordered_json::array();
    for (const CheckResult &c : rep.checks) {
        ordered_json e{{"name", c.name},
                       {"status", status_name(c.status)},
                       {"measured", c.measured},
                       {"tolerance", c.tolerance},
                       {"tag", c.tag}};
        if (!c.details.empty())
            e["details"] = c.details;
        checks.push_back(std::move(e));
    }
    return ordered_json{{"overall", rep.overall_pass ? "pass" : "fail"},
                        {"checks", std::move(checks)}};
}

ordered_json polytope_to_json(const Potential &v, const LaurentPoly2 &cp,
                              std::optional<Rational> lambda) {
    std::vector<Exp> support;
    if (lambda) {
        LaurentPoly2 s = cp.specialize(*lambda);
        if (s.is_zero())
            throw InputError("the polynomial vanishes identically at lambda = " +
                             lambda->str());
        support = s.support();
    } else {
        support = cp.support();
    }
    LatticePolygon hull = newton_polytope(support);
    ordered_json sup = ordered_json::array();
    for (const Exp &e : support)
        sup.push_back({e.e1, e.e2});
    ordered_json verts = ordered_json::array();
    for (const Pt &p : hull.vertices())
        verts.push_back({p.x, p.y});
    ordered_json j{{"q1", v.period().q1},
                   {"q2", v.period().q2},
                   {"lambda", lambda ? ordered_json(lambda->str()) : ordered_json(nullptr)},
                   {"support", std::move(sup)},
                   {"hull", std::move(verts)},
                   {"degenerate", hull.degenerate()}};
    if (!hull.degenerate()) {
        j["area2"] = hull.area2();
        j["matches_exponent_diamond"] = hull == exponent_diamond(v.period());
        j["mixed_volume_self"] = mixed_volume(hull, hull);
    }
    return j;
}

// Shared by `verify` and `report`: every numeric section at one grid size.
ordered_json full_report(const Potential &v, const Options &o) {
    BandLab lab(v);
    const LaurentPoly2 &cp = lab.charpoly();
    const Period p = v.period();

    ordered_json j{{"tool", kToolVersion}, {"input", input_echo(v, o)}, {"grid", o.grid}};
    {
        int max_weight = 0;
        for (const auto &[e, c] : cp.terms())
            max_weight = std::max(max_weight,
                                  std::abs(e.e1) * p.q1 + std::abs(e.e2) * p.q2);
        j["charpoly_summary"] = {{"num_terms", cp.num_terms()},
                                 {"lambda_degree", cp.lambda_degree()},
                                 {"max_support_weight", max_weight},
                                 {"weight_bound", p.q1 * p.q2}};
    }
    j["polytope"] = polytope_to_json(v, cp, std::nullopt);
    if (p.coprime())
        j["bounds"] = bounds_to_json(p, bounds_report(p));

    ordered_json extrema = ordered_json::array();
    ordered_json level_sets = ordered_json::array();
    LevelSetOptions lopt;
    lopt.tol_f = o.tol_f;
    lopt.tol_grad = o.tol_grad;
    for (int band = 1; band <= p.dimension(); ++band) {
        for (const ExtremumRecord &r : lab.find_extrema(band, o.grid)) {
            extrema.push_back(extremum_to_json(r));
            if (!r.converged)
                continue;
            level_sets.push_back(level_set_to_json(
                lab.count_level_set(band, r.lambda, o.grid, lopt)));
        }
    }
    j["extrema"] = std::move(extrema);
    j["level_sets"] = std::move(level_sets);
    j["verdicts"] = verdict_to_json(run_verify(lab, o.grid));
    return j;
}

int cmd_charpoly(const Options &o) {
    require_format(o, "json");
    Potential v = make_potential(o);
    BandLab lab(v);
    ordered_json j{{"tool", kToolVersion},
                   {"input", input_echo(v, o)},
                   {"terms", charpoly_to_json(lab.charpoly())}};
    write_json(o, j);
    return 0;
}

int cmd_polytope(const Options &o) {
    require_format(o, "json");
    Potential v = make_potential(o);
    std::optional<Rational> lambda;
    if (!o.lambda.empty()) {
        try {
            lambda = Rational::parse(o.lambda);
        } catch (const std::exception &ex) {
            throw InputError(std::string("--lambda: ") + ex.what());
        }
    }
    BandLab lab(v);
    write_json(o, polytope_to_json(v, lab.charpoly(), lambda));
    return 0;
}

int cmd_bounds(const Options &o) {
    require_format(o, "json");
    Potential v = make_potential(o);
    const Period p = v.period();
    BoundsReport b;
    try {
        b = bounds_report(p);
    } catch (const std::invalid_argument &ex) {
        throw InputError(ex.what());
    }
    write_json(o, bounds_to_json(p, b));
    return 0;
}

int cmd_bands(const Options &o) {
    require_format(o, "csv");
    Potential v = make_potential(o);
    if (o.grid < 2)
        throw InputError("--grid must be at least 2");
    BandLab lab(v);
    const int Q = v.period().dimension();
    std::ostringstream out;
    out << "k1,k2";
    for (int m = 1; m <= Q; ++m)
        out << ",lambda_" << m;
    out << "\n";
    const BandGrid &grid = lab.grid(o.grid);
    for (int g1 = 0; g1 < o.grid; ++g1)
        for (int g2 = 0; g2 < o.grid; ++g2) {
            out << csv_double(static_cast<double>(g1) / o.grid) << ","
                << csv_double(static_cast<double>(g2) / o.grid);
            for (int m = 1; m <= Q; ++m)
                out << "," << csv_double(grid.at(g1, g2, m));
            out << "\n";
        }
    write_output(o, out.str());
    return 0;
}

int cmd_extrema(const Options &o) {
    Potential v = make_potential(o);
    const int Q = v.period().dimension();
    if (o.band < 0 || o.band > Q)
        throw InputError("--band must be in 1.." + std::to_string(Q));
    BandLab lab(v);
    std::vector<ExtremumRecord> records;
    const int lo = o.band == 0 ? 1 : o.band;
    const int hi = o.band == 0 ? Q : o.band;
    for (int band = lo; band <= hi; ++band)
        for (ExtremumRecord &r : lab.find_extrema(band, o.grid))
            records.push_back(std::move(r));

    if (o.format == "csv") {
        std::ostringstream out;
        out << "band,k1,k2,lambda,kind,residual,converged\n";
        for (const ExtremumRecord &r : records)
            out << r.band << "," << csv_double(r.k.k1) << "," << csv_double(r.k.k2) << ","
                << csv_double(r.lambda) << ","
                << (r.kind == ExtremumRecord::Kind::min ? "min" : "max") << ","
                << csv_double(r.residual) << "," << (r.converged ? "true" : "false")
                << "\n";
        write_output(o, out.str());
        return 0;
    }
    ordered_json recs = ordered_json::array();
    for (const ExtremumRecord &r : records)
        recs.push_back(extremum_to_json(r));
    ordered_json j{{"tool", kToolVersion},
                   {"input", input_echo(v, o)},
                   {"grid", o.grid},
                   {"records", std::move(recs)}};
    write_json(o, j);
    return 0;
}

int cmd_levelset(const Options &o) {
    require_format(o, "json");
    Potential v = make_potential(o);
    const int Q = v.period().dimension();
    if (o.band < 1 || o.band > Q)
        throw InputError("--band is required and must be in 1.." + std::to_string(Q));
    if (o.lambda.empty())
        throw InputError("--lambda is required");
    Rational lambda;
    try {
        lambda = Rational::parse(o.lambda);
    } catch (const std::exception &ex) {
        throw InputError(std::string("--lambda: ") + ex.what());
    }
    BandLab lab(v);
    LevelSetOptions lopt;
    lopt.tol_f = o.tol_f;
    lopt.tol_grad = o.tol_grad;
    LevelSetReport rep = lab.count_level_set(o.band, lambda.to_double(), o.grid, lopt);
    ordered_json j{{"tool", kToolVersion}, {"input", input_echo(v, o)}, {"grid", o.grid}};
    j.update(level_set_to_json(rep));
    write_json(o, j);
    bool any_fail = false;
    for (const BoundVerdict &vd : rep.verdicts)
        any_fail = any_fail || !vd.pass;
    if (rep.residual_ok == false)
        any_fail = true;
    return any_fail ? 1 : 0;
}

int cmd_verify(const Options &o) {
    require_format(o, "json");
    Potential v = make_potential(o);
    BandLab lab(v);
    VerdictReport rep = run_verify(lab, o.grid);
    ordered_json j{{"tool", kToolVersion}, {"input", input_echo(v, o)}, {"grid", o.grid}};
    j.update(verdict_to_json(rep));
    write_json(o, j);
    return rep.overall_pass ? 0 : 1;
}

int cmd_report(const Options &o) {
    require_format(o, "json");
    Potential v = make_potential(o);
    ordered_json j = full_report(v, o);
    write_json(o, j);
    return j["verdicts"]["overall"] == "pass" ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Floquet characteristic polynomials and band-edge level sets "
                 "for periodic potentials on the square lattice"};
    app.require_subcommand(1);

    Options opts;
    struct Cmd {
        const char *name;
        const char *help;
        int (*fn)(const Options &);
    };
    const Cmd cmds[] = {
        {"charpoly", "exact characteristic Laurent polynomial", cmd_charpoly},
        {"polytope", "exponent support and its convex hull", cmd_polytope},
        {"bounds", "level-set cardinality bounds", cmd_bounds},
        {"bands", "band values on a quasimomentum grid (CSV)", cmd_bands},
        {"extrema", "locate band minima and maxima", cmd_extrema},
        {"levelset", "count a level set and check the bounds", cmd_levelset},
        {"verify", "run the full structural check suite", cmd_verify},
        {"report", "everything: polynomial, polytope, bounds, extrema, checks", cmd_report},
    };
    for (const Cmd &c : cmds) {
        CLI::App *sub = app.add_subcommand(c.name, c.help);
        add_common_options(sub, opts);
        sub->callback([]() {});
    }

    try {
        app.parse(argc, const_cast<char **>(argv));
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (const Cmd &c : cmds)
            if (app.got_subcommand(c.name)) {
                opts.seed_given = app.get_subcommand(c.name)->count("--seed") > 0;
                return c.fn(opts);
            }
        return 2;
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace blochpoly
