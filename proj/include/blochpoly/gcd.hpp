#pragma once

#include "blochpoly/laurent.hpp"

namespace blochpoly {

// True iff gcd(f, g) is a nonzero constant. Both inputs must be nonzero and
// free of the spectral parameter (specialize first). Internally the rational
// coefficients are cleared to integers; contents and primitive parts are
// extracted in both variable orientations, then a subresultant polynomial
// remainder sequence in z1 over Z[z2] decides the primitive-part gcd.
bool gcd_constant_check(const Poly2 &f, const Poly2 &g);

} // namespace blochpoly
