#include "tanglefree/formulas.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tanglefree {

namespace {
void require_positive(double v, const char* what) {
    if (!(v > 0.0))
        throw std::domain_error(std::string(what) + ": argument must be positive");
}
} // namespace

double figure_eight_length(double l1, double l2, double l3) {
    require_positive(l1, "figure_eight_length");
    require_positive(l2, "figure_eight_length");
    require_positive(l3, "figure_eight_length");
    double h = 2.0 * std::cosh(l1 / 2.0) * std::cosh(l3 / 2.0) + std::cosh(l2 / 2.0);
    return 2.0 * std::acosh(h);
}

double standard_collar_width(double l) {
    require_positive(l, "standard_collar_width");
    return std::asinh(1.0 / std::sinh(l / 2.0));
}

double fermi_cylinder_volume(double l, double w) {
    require_positive(l, "fermi_cylinder_volume");
    if (w < 0.0)
        throw std::domain_error("fermi_cylinder_volume: width must be nonnegative");
    return l * std::sinh(w);
}

double fermi_boundary_length(double l, double w) {
    require_positive(l, "fermi_boundary_length");
    if (w < 0.0)
        throw std::domain_error("fermi_boundary_length: width must be nonnegative");
    return l * std::cosh(w);
}

double bavard_bound(std::uint64_t genus) {
    if (genus < 2)
        throw std::domain_error("bavard_bound: genus must be at least 2");
    double denom = 2.0 * std::sin(std::numbers::pi / (12.0 * double(genus) - 6.0));
    return 2.0 * std::acosh(1.0 / denom);
}

double nonsimple_length_floor() {
    return 4.0 * std::asinh(1.0);
}

double torus_figure_eight_bound(double l) {
    require_positive(l, "torus_figure_eight_bound");
    double t = 2.0 * std::numbers::pi / l;
    return l * std::sqrt(1.0 + t * t);
}

double cylinder_half_displacement(double l, double rho) {
    require_positive(l, "cylinder_half_displacement");
    return std::asinh(std::sinh(l / 2.0) * std::cosh(rho));
}

} // namespace tanglefree
