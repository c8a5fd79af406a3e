#pragma once

#include "tanglefree/mobius.hpp"

#include <array>

namespace tanglefree {

// Right-angled hexagon with alternating sides (a, C, b, A, c, B): each output
// seam is opposite its input side. Solving again from the seams returns the
// original triple, in the same order.
struct HexagonSeams {
    double opp_a = 0.0;
    double opp_b = 0.0;
    double opp_c = 0.0;
};

HexagonSeams hexagon_solve(double a, double b, double c);

// Rotation of the tangent direction at i by `angle`, clockwise for positive
// values, as an element of PSL(2,R).
MobiusMap frame_rotation(double angle);

// Frames along the closed hexagon walk with alternating sides
// (a1, s13, a3, s32, a2, s21), for seams = hexagon_solve(a1, a2, a3),
// starting at i pointing up the imaginary axis
// and turning by a right angle after every side. frames[k] is the pose at the
// start of side k; frames[6] composes the full circuit and equals +-identity
// when the seams close the hexagon.
std::array<MobiusMap, 7> hexagon_walk(double a1, double a3, double a2,
                                      const HexagonSeams& seams);

} // namespace tanglefree
