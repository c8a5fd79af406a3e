#include "tanglefree/pants.hpp"

#include <cmath>
#include <limits>

namespace tanglefree {

MobiusMap reflection_matrix(const AxisGeodesic& line) {
    if (line.has_infinite_end()) {
        // Vertical line x = p: z -> 2p - conj(z).
        return MobiusMap::raw(-1.0, 2.0 * line.p, 0.0, 1.0);
    }
    double m = 0.5 * (line.p + line.q);
    double r = 0.5 * (line.q - line.p);
    // Inversion in the circle centered m with radius r.
    return MobiusMap::raw(m, r * r - m * m, 1.0, -m);
}

AxisGeodesic frame_line(const MobiusMap& frame) {
    return AxisGeodesic(frame.apply_boundary(0.0),
                        frame.apply_boundary(std::numeric_limits<double>::infinity()));
}

BoundaryPiece build_pants(double l1, double l2, double l3) {
    HexagonSeams seams = hexagon_solve(l1 / 2.0, l2 / 2.0, l3 / 2.0);
    // Walk visits the cuffs in the order 1, 3, 2; that ordering is what makes
    // the boundary relation close up in index order below.
    std::array<MobiusMap, 7> fr = hexagon_walk(l1 / 2.0, l3 / 2.0, l2 / 2.0, seams);

    // Seam lines in walk order: s13 (after cuff 1), s32, s21.
    MobiusMap U = reflection_matrix(frame_line(fr[1]));
    MobiusMap V = reflection_matrix(frame_line(fr[3]));
    MobiusMap W = reflection_matrix(frame_line(fr[5]));

    BoundaryPiece p;
    p.cuff_length = {l1, l2, l3};
    // Each boundary map reflects in the arrival seam of its cuff and then in
    // the departure seam; both are perpendicular to the cuff line, so the
    // product translates along it by twice the half cuff. Reflections carry
    // det -r^2, so the product needs an explicit renormalization; at hexagon
    // scale the computed determinant is still accurate.
    p.boundary[0] = (U * W).unit_det().normalized();
    p.boundary[1] = (W * V).unit_det().normalized();
    p.boundary[2] = (V * U).unit_det().normalized();
    p.slot_frame = {fr[0], fr[4], fr[2]};
    return p;
}

} // namespace tanglefree
