#pragma once

#include "tanglefree/hexagon.hpp"
#include "tanglefree/mobius.hpp"

#include <array>

namespace tanglefree {

// Pair of pants with geodesic boundary in standard position. The boundary
// maps satisfy boundary[0] * boundary[1] * boundary[2] = identity
// (projectively) and |tr boundary[i]| = 2 cosh(cuff_length[i] / 2).
//
// slot_frame[i] carries the imaginary axis onto the axis of boundary[i],
// aligned with its translation direction and based at the foot of the seam
// the hexagon walk enters the cuff on. Twists are measured against these
// feet, so slot_frame[i]^(-1) * boundary[i] * slot_frame[i] is the exact
// diagonal translation by cuff_length[i].
struct BoundaryPiece {
    std::array<double, 3> cuff_length{};
    std::array<MobiusMap, 3> boundary{};
    std::array<MobiusMap, 3> slot_frame{};
};

// Builds the pants from the two copies of the right-angled hexagon with
// half-cuff alternating sides. Boundary maps arise as products of
// reflections in the seam lines, so the group they generate is the honest
// holonomy of the pants.
BoundaryPiece build_pants(double l1, double l2, double l3);

// Reflection in a geodesic line, returned as the real matrix m acting by
// z -> m(conj(z)); composing two of these with operator* yields the Mobius
// map of the composite reflection.
MobiusMap reflection_matrix(const AxisGeodesic& line);

// Geodesic a frame walks along: the image of the imaginary axis.
AxisGeodesic frame_line(const MobiusMap& frame);

} // namespace tanglefree
