#pragma once

#include <stdexcept>
#include <string>

namespace tanglefree {

// Shared tolerance policy. `rel` guards relative comparisons of lengths and
// traces, `abs_floor` keeps those comparisons meaningful near zero.
struct Tolerance {
    double rel = 1e-9;
    double abs_floor = 1e-12;

    double margin(double scale) const {
        double s = scale < 0 ? -scale : scale;
        return rel * (s > 1.0 ? s : 1.0) + abs_floor;
    }
};

// Point of the upper half plane, y > 0 enforced.
struct PlanePoint {
    double x = 0.0;
    double y = 1.0;

    PlanePoint() = default;
    PlanePoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0))
            throw std::domain_error("PlanePoint: y must be positive");
    }
};

enum class MapClass { Identity, Elliptic, Parabolic, Hyperbolic };

// Unoriented geodesic of the upper half plane given by its ideal endpoints.
// Normal form: p < q, with a single infinite endpoint stored as q = +inf.
struct AxisGeodesic {
    double p = 0.0;
    double q = 0.0;

    AxisGeodesic() = default;
    AxisGeodesic(double p_, double q_);
    bool has_infinite_end() const;
};

// Element of PSL(2,R) as a real unit-determinant matrix modulo sign.
// The entries are kept with det = 1 up to rounding; `normalized` picks the
// sign representative whose first significant entry is positive.
struct MobiusMap {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    MobiusMap() = default;
    MobiusMap(double a_, double b_, double c_, double d_);

    static MobiusMap identity() { return MobiusMap(); }
    // Translation by t along the imaginary axis (upward for t > 0).
    static MobiusMap axis_translation(double t);
    // Raw entries without the determinant check (internal composition use).
    static MobiusMap raw(double a_, double b_, double c_, double d_);

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    MobiusMap inverse() const { return raw(d, -b, -c, a); }
    MobiusMap normalized() const;
    // Rescales the entries so det is exactly 1 again after drift.
    MobiusMap unit_det() const;

    PlanePoint apply(const PlanePoint& z) const;
    // Action on the boundary circle R u {inf}; accepts and returns inf.
    double apply_boundary(double x) const;
};

MobiusMap operator*(const MobiusMap& m, const MobiusMap& n);

// Distance between the projective classes of m and n (max-norm, sign folded).
double proj_dist(const MobiusMap& m, const MobiusMap& n);
bool proj_equal(const MobiusMap& m, const MobiusMap& n, double tol = 1e-9);

double dist(const PlanePoint& z, const PlanePoint& w);

MapClass classify(const MobiusMap& m, double band = 1e-10);

// Translation length 2*arcosh(|tr|/2); throws std::domain_error unless
// `m` is hyperbolic.
double translation_length(const MobiusMap& m);

// Axis of a hyperbolic map; throws std::domain_error otherwise.
AxisGeodesic axis(const MobiusMap& m);

// Attracting and repelling fixed points (ordered), for oriented uses.
void fixed_points(const MobiusMap& m, double& repelling, double& attracting);

// Hyperbolic distance from a point to a geodesic.
double dist_to_geodesic(const PlanePoint& z, const AxisGeodesic& g);

// Map sending g to the imaginary axis (p -> 0, q -> inf).
MobiusMap standardize_axis(const AxisGeodesic& g);

// Relation between two distinct geodesics: crossing (returns cos of the
// angle-like invariant < 1), tangent at infinity (= 1) or disjoint
// (returns cosh of the distance > 1).
double geodesic_inversive_product(const AxisGeodesic& g, const AxisGeodesic& h);
bool geodesics_cross(const AxisGeodesic& g, const AxisGeodesic& h);
double geodesic_gap(const AxisGeodesic& g, const AxisGeodesic& h);

} // namespace tanglefree
