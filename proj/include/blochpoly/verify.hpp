#pragma once

#include "blochpoly/bands.hpp"
#include "blochpoly/floquet.hpp"

#include <string>
#include <vector>

namespace blochpoly {

// %.17g rendering: enough digits to round-trip any double, stable across
// runs.
std::string fmt_double(double x);

struct CheckResult {
    enum class Status { pass, fail, flagged };

    std::string name;
    Status status = Status::pass;
    std::string measured;
    std::string tolerance;
    std::string tag; // short machine tag of the property being checked
    std::vector<std::string> details;
};

const char *status_name(CheckResult::Status s);

struct VerdictReport {
    std::vector<CheckResult> checks; // sorted by name
    bool overall_pass = true;        // every non-flagged check passes
};

// Exact support bound: every exponent (c1, c2) of the full symbolic
// characteristic polynomial satisfies |c1| q1 + |c2| q2 <= q1 q2.
CheckResult check_support_bound(const LaurentPoly2 &cp, const Period &p);

// The four corner exponents (+-q2, 0), (0, +-q1) carry constant
// (spectral-parameter-free) coefficients of magnitude one.
CheckResult check_corner_terms(const LaurentPoly2 &cp, const Period &p);

// Square-freeness probe at one rational spectral value: the cleared
// polynomial and its z1-derivative share no nonconstant factor.
CheckResult check_square_free(const LaurentPoly2 &cp, const Period &p, const Rational &lambda);

// Total degree after z -> (x1^q1, x2^q2) equals 3 q1 q2, and the degree of
// the x1-derivative equals 3 q1 q2 - 1.
CheckResult check_substitution_degree(const LaurentPoly2 &cp, const Period &p,
                                      const Rational &lambda);

// The supports of z1*d/dz1 and z2*d/dz2 of the characteristic polynomial
// stay inside the corner diamond (exact, all spectral values).
CheckResult check_derivative_support(const LaurentPoly2 &cp, const Period &p);

// Exact evaluation against the LU-determinant oracle at deterministic
// pseudo-random unit-torus points and spectral values.
CheckResult check_eval_oracle(const Potential &v, const LaurentPoly2 &cp, int npoints);

// Level-set cardinalities of every refined band extremum against the four
// bounds, with critical-point residuals; one entry per band.
std::vector<CheckResult> check_level_sets(BandLab &lab, int G);

// Deliberately violated inputs proving each checker can actually fail.
std::vector<CheckResult> checker_self_tests(const LaurentPoly2 &cp, const Period &p);

// The full suite for one potential; checks sorted by name.
VerdictReport run_verify(BandLab &lab, int G);

} // namespace blochpoly
