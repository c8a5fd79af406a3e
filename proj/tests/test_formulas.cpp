#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle/wide.hpp"
#include "tanglefree/formulas.hpp"

#include <cmath>
#include <numbers>

using namespace tanglefree;

namespace {
bool rel_close(double got, double want, double tol = 1e-9) {
    double scale = std::max({1.0, std::fabs(got), std::fabs(want)});
    return std::fabs(got - want) <= tol * scale;
}
} // namespace

TEST_CASE("figure eight length matches the wide oracle") {
    // Frozen oracle value for the reference triple.
    CHECK(rel_close(figure_eight_length(2, 2, 2), 5.0563710812901065));
    const double triples[][3] = {
        {2, 2, 2}, {1, 1, 1}, {0.5, 3, 3}, {2.7, 0.9, 1.3}, {6, 6, 6}, {1e-6, 2, 2}};
    for (auto& t : triples) {
        double got = figure_eight_length(t[0], t[1], t[2]);
        double want = oracle::to_double(
            oracle::figure_eight_length(oracle::wf(t[0]), oracle::wf(t[1]), oracle::wf(t[2])));
        CHECK(rel_close(got, want));
        CHECK(std::isfinite(got));
    }
}

TEST_CASE("figure eight length is exactly symmetric in the outer cuffs") {
    const double triples[][3] = {{2, 1, 3}, {0.3, 5, 1.1}, {4.2, 0.07, 2.9}};
    for (auto& t : triples)
        CHECK(figure_eight_length(t[0], t[1], t[2]) == figure_eight_length(t[2], t[1], t[0]));
}

TEST_CASE("figure eight length dominates the non-simple floor") {
    // Non-simple geodesics are longer than 4 arcsinh 1; the figure-eight
    // closed form must respect that for every input.
    CHECK(rel_close(nonsimple_length_floor(), 3.5254943480781721));
    const double probe[] = {1e-5, 0.01, 0.3, 1.0, 2.0, 7.0};
    for (double a : probe)
        for (double b : probe)
            for (double c : probe)
                CHECK(figure_eight_length(a, b, c) > nonsimple_length_floor());
}

TEST_CASE("collar width matches the wide oracle") {
    CHECK(rel_close(standard_collar_width(2.0), 0.77193683290530473));
    for (double l : {1e-5, 0.1, 0.5, 1.0, 2.0, 4.0, 12.0}) {
        double want = oracle::to_double(oracle::standard_collar_width(oracle::wf(l)));
        CHECK(rel_close(standard_collar_width(l), want));
    }
}

TEST_CASE("collar width identity sinh(w) sinh(l/2) = 1") {
    for (double l : {0.05, 0.7, 2.0, 5.0})
        CHECK(rel_close(std::sinh(standard_collar_width(l)) * std::sinh(l / 2), 1.0));
}

TEST_CASE("fermi cylinder pair satisfies boundary^2 - area^2 = l^2") {
    for (double l : {0.3, 1.0, 2.5})
        for (double w : {0.0, 0.4, 1.0, 3.0}) {
            double area = fermi_cylinder_volume(l, w);
            double bd = fermi_boundary_length(l, w);
            CHECK(rel_close(bd * bd - area * area, l * l));
            double wa = oracle::to_double(
                oracle::fermi_cylinder_volume(oracle::wf(l), oracle::wf(w)));
            double wb = oracle::to_double(
                oracle::fermi_boundary_length(oracle::wf(l), oracle::wf(w)));
            CHECK(rel_close(area, wa));
            CHECK(rel_close(bd, wb));
        }
}

TEST_CASE("bavard bound matches the wide oracle and tracks 2 log g") {
    CHECK(rel_close(bavard_bound(2), 3.4382142412301031));
    const std::uint64_t gs[] = {2, 3, 5, 10, 100, 10000, 1000000};
    for (std::uint64_t g : gs) {
        double want = oracle::to_double(oracle::bavard_bound(g));
        double got = bavard_bound(g);
        CHECK(rel_close(got, want));
        // The excess over 2 log g stays inside a recorded band; it increases
        // towards 2 log(12/pi) = 2.6803535...
        double excess = got - 2.0 * std::log(double(g));
        CHECK(excess > 2.05);
        CHECK(excess < 2.6803536);
    }
    CHECK_THROWS_AS(bavard_bound(1), std::domain_error);
    CHECK_THROWS_AS(bavard_bound(0), std::domain_error);
}

TEST_CASE("torus figure-eight bound stays below l + 2 pi") {
    for (double l : {0.1, 0.5, 1.0, 3.0, 8.0, 40.0}) {
        double got = torus_figure_eight_bound(l);
        double want = oracle::to_double(oracle::torus_figure_eight_bound(oracle::wf(l)));
        CHECK(rel_close(got, want));
        CHECK(got <= l + 2.0 * std::numbers::pi + 1e-12);
        CHECK(got >= l);
    }
}

TEST_CASE("cylinder half displacement reduces to l/2 on the axis") {
    for (double l : {0.5, 2.0})
        CHECK(rel_close(cylinder_half_displacement(l, 0.0), l / 2));
    // Monotone in the offset.
    CHECK(cylinder_half_displacement(1.0, 2.0) > cylinder_half_displacement(1.0, 1.0));
}

TEST_CASE("formula domain errors") {
    CHECK_THROWS_AS(figure_eight_length(0, 1, 1), std::domain_error);
    CHECK_THROWS_AS(standard_collar_width(0), std::domain_error);
    CHECK_THROWS_AS(standard_collar_width(-1), std::domain_error);
    CHECK_THROWS_AS(fermi_cylinder_volume(1, -0.1), std::domain_error);
    CHECK_THROWS_AS(fermi_boundary_length(-1, 0.1), std::domain_error);
}
