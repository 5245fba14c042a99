#pragma once

#include "blochpoly/floquet.hpp"
#include "blochpoly/polytope.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blochpoly {

// Point on the quasi-momentum torus; both coordinates live in [0, 1).
struct TorusPoint {
    double k1 = 0.0;
    double k2 = 0.0;
    TorusPoint() = default;
    TorusPoint(double a, double b);
};

double torus_dist(const TorusPoint &a, const TorusPoint &b);

// Sorted eigenvalues on a G x G torus grid, all bands at every grid point.
struct BandGrid {
    int G = 0;
    int Q = 0;
    std::vector<double> v; // ((g1*G)+g2)*Q + (m-1)

    double at(int g1, int g2, int m) const {
        return v[(static_cast<size_t>(g1) * G + g2) * Q + (m - 1)];
    }
    double at_wrapped(int g1, int g2, int m) const {
        return at(((g1 % G) + G) % G, ((g2 % G) + G) % G, m);
    }
};

struct ExtremumRecord {
    int band = 0; // m, 1-based
    TorusPoint k;
    double lambda = 0.0;
    enum class Kind { min, max } kind = Kind::min;
    double residual = 0.0; // gradient norm after refinement
    bool converged = false;
};

struct BoundVerdict {
    std::string name;
    long long bound = 0;
    bool pass = false;
};

struct LevelSetReport {
    int band = 0;
    double lambda_star = 0.0;
    std::vector<TorusPoint> points;
    std::vector<double> point_residual_f; // |lambda_m(k) - lambda*| per point
    int count = 0;
    int count_fine = 0; // recount on the doubled grid
    bool stable = false;
    std::optional<BoundsReport> bounds;
    std::vector<BoundVerdict> verdicts;
    double residual_p = 0.0;    // max relative |P(z, lambda*)| over points
    double residual_grad = 0.0; // max relative gradient norm over points
    bool residual_ok = true;
    bool flagged = false;
    std::vector<std::string> flags;
};

struct LevelSetOptions {
    double tol_f = 1e-8;
    double tol_p = 1e-6;
    double tol_grad = 1e-4;
    double dedup = 1e-5;
    bool two_scale = true;
    bool with_bounds = true;
    bool validate = true;
};

// Raised by band_gradient when the eigenvalue gap to a neighboring band is
// below the tolerance, where first-order perturbation breaks down.
struct DegenerateBandError : std::runtime_error {
    explicit DegenerateBandError(double gap)
        : std::runtime_error("eigenvalue gap " + std::to_string(gap) +
                             " too small for a perturbative gradient") {}
};

// Shared computation context for one potential: caches torus grids and the
// exact characteristic polynomial across bands, extrema and level sets.
class BandLab {
  public:
    explicit BandLab(Potential v);

    const Potential &potential() const { return pot_; }
    int Q() const { return pot_.period().dimension(); }

    std::vector<double> eigenvalues(double k1, double k2) const;
    double band_value(int m, double k1, double k2) const;

    const BandGrid &grid(int G);
    const LaurentPoly2 &charpoly();

    // Perturbative gradient; false when the gap condition fails.
    bool gradient_hf(int m, double k1, double k2, double gap_tol,
                     std::array<double, 2> &out) const;
    std::array<double, 2> gradient_fd(int m, double k1, double k2, double h = 1e-5) const;
    std::array<double, 2> gradient(int m, double k1, double k2) const; // with fallback

    std::vector<ExtremumRecord> find_extrema(int m, int G);
    LevelSetReport count_level_set(int m, double lambda_star, int G,
                                   const LevelSetOptions &opt = {});

  private:
    struct LevelPoint {
        double k1, k2, fres;
        double grad; // band gradient norm at the accepted point
    };
    // crit_merge: merge radius for pairs of certified critical points. It is
    // tied to the coarse scan's resolution and must be identical at both
    // scales, so a critical cluster narrower than one coarse cell collapses
    // to the same single point under either grid.
    std::vector<LevelPoint> level_points(int m, double lambda_star, int G,
                                         const LevelSetOptions &opt, double crit_merge);
    // Newton steps on the band gradient toward the nearby critical point;
    // stops as soon as a step fails to shrink the gradient norm.
    void polish_critical(int m, double &x1, double &x2, double &gn, int max_steps) const;
    ExtremumRecord refine_extremum(int m, double k1, double k2, ExtremumRecord::Kind kind);

    Potential pot_;
    std::map<int, BandGrid> grids_;
    std::optional<LaurentPoly2> charpoly_;
};

// One-shot conveniences matching the operation contracts.
std::vector<double> eigenvalues_sorted(const Potential &v, const TorusPoint &k);
std::array<double, 2> band_gradient(const Potential &v, int m, const TorusPoint &k,
                                    double gap_tol = 1e-8); // throws DegenerateBandError
std::vector<ExtremumRecord> find_extrema(const Potential &v, int m, int G);
LevelSetReport count_level_set(const Potential &v, int m, double lambda_star, int G,
                               const LevelSetOptions &opt = {});

} // namespace blochpoly
