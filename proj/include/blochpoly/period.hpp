#pragma once

namespace blochpoly {

// Lattice period pair (q1, q2). Both components must be at least 3: the
// wraparound entries of the Floquet matrix would otherwise collide with the
// nearest-neighbor band.
struct Period {
    int q1;
    int q2;

    Period(int q1_, int q2_);

    int dimension() const { return q1 * q2; } // Q = q1*q2
    bool coprime() const;
};

} // namespace blochpoly
