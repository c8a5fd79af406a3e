#pragma once

#include <cstdint>

namespace tanglefree {

// Closed-form hyperbolic trigonometry used across the library. Arguments are
// geodesic lengths unless stated otherwise; all lengths are positive.

// Length of the figure-eight geodesic winding around cuffs 1 and 3 of a pair
// of pants with cuff lengths (l1, l2, l3):
//   cosh(len/2) = 2 cosh(l1/2) cosh(l3/2) + cosh(l2/2).
// Exactly symmetric in (l1, l3).
double figure_eight_length(double l1, double l2, double l3);

// Half-width of the standard embedded collar around a simple closed geodesic
// of length l: arcsinh(1 / sinh(l/2)).
double standard_collar_width(double l);

// Area of the Fermi cylinder of half-width w around a closed geodesic of
// length l (one side): l * sinh(w).
double fermi_cylinder_volume(double l, double w);

// Length of the equidistant boundary curve at offset w from a closed geodesic
// of length l: l * cosh(w).
double fermi_boundary_length(double l, double w);

// Upper bound for the systole of a closed genus-g surface:
//   2 arcosh(1 / (2 sin(pi / (12g - 6)))).
// Requires g >= 2.
double bavard_bound(std::uint64_t genus);

// Universal floor for the length of a non-simple closed geodesic on a
// hyperbolic surface: 4 arcsinh(1).
double nonsimple_length_floor();

// Length bound for the figure-eight geodesic produced by a one-holed torus
// of boundary length l: l * sqrt(1 + 4 pi^2 / l^2) <= l + 2 pi.
double torus_figure_eight_bound(double l);

// Injectivity radius of the cylinder around a geodesic of length l at offset
// rho from its axis: arcsinh(sinh(l/2) cosh(rho)).
double cylinder_half_displacement(double l, double rho);

} // namespace tanglefree
