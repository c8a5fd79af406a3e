#include "tanglefree/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tanglefree {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double abs_max4(double a, double b, double c, double d) {
    return std::max(std::max(std::fabs(a), std::fabs(b)),
                    std::max(std::fabs(c), std::fabs(d)));
}
} // namespace

AxisGeodesic::AxisGeodesic(double p_, double q_) : p(p_), q(q_) {
    // -inf and +inf are the same ideal point; fold to +inf in second slot.
    if (std::isinf(p)) std::swap(p, q);
    if (std::isinf(q)) {
        q = kInf;
        if (std::isinf(p))
            throw std::domain_error("AxisGeodesic: endpoints coincide at infinity");
    } else if (p > q) {
        std::swap(p, q);
    }
    if (p == q)
        throw std::domain_error("AxisGeodesic: endpoints must be distinct");
}

bool AxisGeodesic::has_infinite_end() const { return std::isinf(q); }

MobiusMap::MobiusMap(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
    double dt = det();
    if (!(dt > 0.0))
        throw std::domain_error("MobiusMap: determinant must be positive");
    if (std::fabs(dt - 1.0) > 1e-6)
        throw std::domain_error("MobiusMap: determinant too far from 1 (" +
                                std::to_string(dt) + ")");
    double s = 1.0 / std::sqrt(dt);
    a *= s; b *= s; c *= s; d *= s;
}

MobiusMap MobiusMap::raw(double a_, double b_, double c_, double d_) {
    MobiusMap m;
    m.a = a_; m.b = b_; m.c = c_; m.d = d_;
    return m;
}

MobiusMap MobiusMap::axis_translation(double t) {
    double e = std::exp(t / 2.0);
    return raw(e, 0.0, 0.0, 1.0 / e);
}

MobiusMap MobiusMap::normalized() const {
    // Sign representative: first entry of (a,b,c,d) that is clearly nonzero
    // decides. det = 1 guarantees one entry of magnitude >= 1/sqrt(2), so the
    // threshold never skips all four.
    const double thresh = 1e-9;
    const double e[4] = {a, b, c, d};
    for (double v : e) {
        if (std::fabs(v) > thresh)
            return v < 0.0 ? raw(-a, -b, -c, -d) : *this;
    }
    return *this;
}

MobiusMap MobiusMap::unit_det() const {
    double dt = det();
    if (!(dt > 0.0))
        throw std::domain_error("MobiusMap: determinant collapsed");
    double s = 1.0 / std::sqrt(dt);
    return raw(a * s, b * s, c * s, d * s);
}

PlanePoint MobiusMap::apply(const PlanePoint& z) const {
    // Assumes det = 1. Evaluating ad - bc here instead would cancel
    // catastrophically once long products push the entries to large scale,
    // while the true determinant of such products never leaves 1.
    double u = c * z.x + d;
    double v = c * z.y;
    double denom = u * u + v * v;
    PlanePoint w;
    w.x = ((a * z.x + b) * u + a * c * z.y * z.y) / denom;
    w.y = z.y / denom;
    if (!(w.y > 0.0))
        throw std::domain_error("MobiusMap::apply: image left the half plane");
    return w;
}

double MobiusMap::apply_boundary(double x) const {
    if (std::isinf(x))
        return c == 0.0 ? kInf : a / c;
    double denom = c * x + d;
    if (denom == 0.0)
        return kInf;
    return (a * x + b) / denom;
}

MobiusMap operator*(const MobiusMap& m, const MobiusMap& n) {
    // No determinant renormalization: the product of unit-determinant
    // factors drifts from det 1 only by rounding, while the computed
    // ad - bc of a large-entry product is pure cancellation noise and
    // rescaling by it would corrupt every entry. Callers composing
    // non-unit factors (reflections) renormalize explicitly while the
    // entries are still small enough for det to be trustworthy.
    return MobiusMap::raw(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
}

double proj_dist(const MobiusMap& m, const MobiusMap& n) {
    double dm = abs_max4(m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d);
    double dp = abs_max4(m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d);
    return std::min(dm, dp);
}

bool proj_equal(const MobiusMap& m, const MobiusMap& n, double tol) {
    return proj_dist(m, n) <= tol;
}

double dist(const PlanePoint& z, const PlanePoint& w) {
    // 2*asinh(|z-w| / (2 sqrt(y1 y2))) is the arcosh formula rearranged to
    // stay accurate for nearby points.
    double dx = z.x - w.x;
    double dy = z.y - w.y;
    double r = std::sqrt(dx * dx + dy * dy) / (2.0 * std::sqrt(z.y * w.y));
    return 2.0 * std::asinh(r);
}

MapClass classify(const MobiusMap& m, double band) {
    if (proj_dist(m, MobiusMap::identity()) <= band)
        return MapClass::Identity;
    double t = std::fabs(m.trace());
    if (std::fabs(t - 2.0) <= band)
        return MapClass::Parabolic;
    return t > 2.0 ? MapClass::Hyperbolic : MapClass::Elliptic;
}

double translation_length(const MobiusMap& m) {
    double t = std::fabs(m.trace()) / 2.0;
    if (!(t > 1.0))
        throw std::domain_error("translation_length: map is not hyperbolic");
    return 2.0 * std::acosh(t);
}

namespace {
// Fixed points of a hyperbolic map as roots of c z^2 + (d-a) z - b = 0,
// via the cancellation-safe quadratic form.
void axis_endpoints(const MobiusMap& m, double& r1, double& r2) {
    if (std::fabs(m.trace()) <= 2.0)
        throw std::domain_error("axis: map is not hyperbolic");
    if (m.c == 0.0) {
        r1 = m.b / (m.d - m.a); // a != d, else the map would be parabolic
        r2 = kInf;
        return;
    }
    double A = m.c, B = m.d - m.a, C = -m.b;
    double disc = m.trace() * m.trace() - 4.0; // equals B^2 - 4AC when det=1
    double s = std::sqrt(disc);
    double q = -0.5 * (B + (B >= 0.0 ? s : -s));
    r1 = q / A;
    r2 = C / q;
}
} // namespace

AxisGeodesic axis(const MobiusMap& m) {
    double r1, r2;
    axis_endpoints(m, r1, r2);
    return AxisGeodesic(r1, r2);
}

void fixed_points(const MobiusMap& m, double& repelling, double& attracting) {
    double r1, r2;
    axis_endpoints(m, r1, r2);
    auto multiplier_sq = [&](double z) {
        if (std::isinf(z)) {
            // Derivative at infinity corresponds to (a/d)^2 expansion.
            return (m.d * m.d) / (m.a * m.a);
        }
        double u = m.c * z + m.d;
        return 1.0 / (u * u);
    };
    if (multiplier_sq(r1) < 1.0) {
        attracting = r1;
        repelling = r2;
    } else {
        attracting = r2;
        repelling = r1;
    }
}

MobiusMap standardize_axis(const AxisGeodesic& g) {
    if (g.has_infinite_end()) {
        // Vertical line x = p: translate to the imaginary axis.
        return MobiusMap::raw(1.0, -g.p, 0.0, 1.0);
    }
    double s = 1.0 / std::sqrt(g.q - g.p);
    // z -> (z - p) / (q - z), determinant q - p > 0.
    return MobiusMap::raw(s, -g.p * s, -s, g.q * s);
}

double dist_to_geodesic(const PlanePoint& z, const AxisGeodesic& g) {
    PlanePoint w = standardize_axis(g).apply(z);
    return std::asinh(std::fabs(w.x) / w.y);
}

double geodesic_inversive_product(const AxisGeodesic& g, const AxisGeodesic& h) {
    MobiusMap n = standardize_axis(g);
    double u = n.apply_boundary(h.p);
    double v = n.apply_boundary(h.q);
    if (std::isinf(u) || std::isinf(v))
        return 1.0; // shared ideal endpoint with (0, inf)
    if (u == 0.0 || v == 0.0)
        return 1.0;
    return std::fabs(u + v) / std::fabs(u - v);
}

bool geodesics_cross(const AxisGeodesic& g, const AxisGeodesic& h) {
    MobiusMap n = standardize_axis(g);
    double u = n.apply_boundary(h.p);
    double v = n.apply_boundary(h.q);
    if (std::isinf(u) || std::isinf(v))
        return false;
    return (u < 0.0 && v > 0.0) || (u > 0.0 && v < 0.0);
}

double geodesic_gap(const AxisGeodesic& g, const AxisGeodesic& h) {
    double ip = geodesic_inversive_product(g, h);
    return ip <= 1.0 ? 0.0 : std::acosh(ip);
}

} // namespace tanglefree
