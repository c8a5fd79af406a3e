#include "tanglefree/hexagon.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tanglefree {

namespace {
double seam(double opposite, double adj1, double adj2) {
    // cosh(seam) = (cosh(opposite) + cosh(adj1) cosh(adj2)) / (sinh(adj1) sinh(adj2))
    double num = std::cosh(opposite) + std::cosh(adj1) * std::cosh(adj2);
    return std::acosh(num / (std::sinh(adj1) * std::sinh(adj2)));
}

void check_side(double v, const char* what) {
    if (!(v > 0.0) || !(v < 64.0))
        throw std::domain_error(std::string(what) +
                                ": side must lie in (0, 64) to stay representable");
}
} // namespace

HexagonSeams hexagon_solve(double a, double b, double c) {
    check_side(a, "hexagon_solve");
    check_side(b, "hexagon_solve");
    check_side(c, "hexagon_solve");
    HexagonSeams s;
    s.opp_a = seam(a, b, c);
    s.opp_b = seam(b, c, a);
    s.opp_c = seam(c, a, b);
    return s;
}

MobiusMap frame_rotation(double angle) {
    double h = angle / 2.0;
    return MobiusMap::raw(std::cos(h), -std::sin(h), std::sin(h), std::cos(h));
}

std::array<MobiusMap, 7> hexagon_walk(double a1, double a3, double a2,
                                      const HexagonSeams& seams) {
    // Sides in walk order; the seam between two cuff halves is the one
    // opposite the remaining cuff.
    const double side[6] = {a1, seams.opp_b, a3, seams.opp_a, a2, seams.opp_c};
    const MobiusMap turn = frame_rotation(std::numbers::pi / 2.0);
    std::array<MobiusMap, 7> frames;
    frames[0] = MobiusMap::identity();
    for (int k = 0; k < 6; ++k)
        frames[k + 1] = frames[k] * MobiusMap::axis_translation(side[k]) * turn;
    return frames;
}

} // namespace tanglefree
