#include "blochpoly/period.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace blochpoly {

Period::Period(int q1_, int q2_) : q1(q1_), q2(q2_) {
    if (q1 < 3 || q2 < 3)
        throw std::invalid_argument("period components must be at least 3, got (" +
                                    std::to_string(q1) + ", " + std::to_string(q2) + ")");
}

bool Period::coprime() const { return std::gcd(q1, q2) == 1; }

} // namespace blochpoly
