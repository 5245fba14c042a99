#pragma once

#include "blochpoly/floquet.hpp"

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace blochpoly {

// Input problems surfaced to the user (exit code 2): bad files, malformed
// numbers, inconsistent dimensions, missing flags.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads {"q1": int, "q2": int, "values": [[entry, ...], ...]} where an entry
// is an integer, a fraction string "p/q", or a decimal string. Errors name
// the offending row and column.
Potential parse_potential(const std::string &path);
Potential potential_from_json(const nlohmann::ordered_json &j);

// Deterministic seeded potential with integer values in [-3, 3].
Potential generate_potential(int q1, int q2, uint64_t seed);

// Lossless serialization of the characteristic polynomial: terms as
// {e1, e2, lambda_coeffs}, rationals as strings.
nlohmann::ordered_json charpoly_to_json(const LaurentPoly2 &cp);
LaurentPoly2 charpoly_from_json(const nlohmann::ordered_json &j);

// Full command-line entry point; returns the process exit code
// (0 pass, 1 check failure, 2 input error).
int run_cli(int argc, const char *const *argv);

} // namespace blochpoly
