#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tanglefree/formulas.hpp"
#include "tanglefree/geodesics.hpp"
#include "tanglefree/surface.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

using namespace tanglefree;

namespace {

const std::string kData = TF_DATA_DIR;

Word based_product(const Word& u, const Word& v_inverse_of) {
    Word w = u;
    Word vinv = invert_word(v_inverse_of);
    w.insert(w.end(), vinv.begin(), vinv.end());
    return w;
}

} // namespace

TEST_CASE("the minimal class of the most symmetric surface is simple") {
    FuchsianSurface s = load_surface(kData + "/bolza.json");
    ClosedGeodesic sys = systole_geodesic(s);
    CHECK(std::fabs(sys.length - 3.0571418389619963) < 1e-6);
    CHECK(sys.simple.value_or(false));
    CHECK(self_crossing_count(sys, s) == 0);
}

TEST_CASE("a figure eight around two cuffs crosses itself exactly once") {
    FuchsianSurface s = load_surface(kData + "/genus2_theta.json");
    REQUIRE(s.pants_boundary_words.size() == 6);
    // Boundary words of one pants share a base point, so the product of one
    // with the inverse of another is the figure eight around those two cuffs.
    for (int pants = 0; pants < 2; ++pants) {
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3;
            Word w = based_product(s.pants_boundary_words[3 * pants + i],
                                   s.pants_boundary_words[3 * pants + j]);
            ClosedGeodesic f8 = geodesic_from_word(w, s.gens);
            CHECK(f8.length ==
                  doctest::Approx(figure_eight_length(2.0, 2.0, 2.0))
                      .epsilon(1e-10));
            CHECK(self_crossing_count(f8, s) == 1);
            CHECK(!is_simple(f8, s));
        }
    }
}

TEST_CASE("figure eight lengths follow the cuffs they wind around") {
    FuchsianSurface s = load_surface(kData + "/genus2_dumbbell.json");
    REQUIRE(s.pants_boundary_words.size() == 6);
    // Pants 0 of this gluing carries the cuffs of edge 0 (slot 0) and edge 1
    // (slots 1 and 2); lengths are (1.8, 2.6, 2.6).
    Word w01 = based_product(s.pants_boundary_words[0], s.pants_boundary_words[1]);
    ClosedGeodesic f8 = geodesic_from_word(w01, s.gens);
    CHECK(f8.length ==
          doctest::Approx(figure_eight_length(1.8, 2.6, 2.6)).epsilon(1e-9));
    CHECK(self_crossing_count(f8, s) == 1);
}

TEST_CASE("dual handle curves intersect once and disjoint handles do not") {
    FuchsianSurface s = load_surface(kData + "/genus2_theta.json");
    ClosedGeodesic a1 = geodesic_from_word({1}, s.gens);
    ClosedGeodesic b1 = geodesic_from_word({2}, s.gens);
    ClosedGeodesic a2 = geodesic_from_word({3}, s.gens);
    ClosedGeodesic b2 = geodesic_from_word({4}, s.gens);
    CHECK(intersection_number(a1, b1, s) == 1);
    CHECK(intersection_number(a2, b2, s) == 1);
    CHECK(intersection_number(a1, a2, s) == 0);
    CHECK(intersection_number(a1, b2, s) == 0);
    CHECK(is_simple(a1, s));
    CHECK(is_simple(b1, s));
}

TEST_CASE("intersection numbers are symmetric and zero on the same class") {
    FuchsianSurface s = load_surface(kData + "/genus2_theta_twisted.json");
    GeodesicInventory inv = enumerate_geodesics(s, 4.0);
    REQUIRE(inv.classes.size() >= 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            int ij = intersection_number(inv.classes[i], inv.classes[j], s);
            int ji = intersection_number(inv.classes[j], inv.classes[i], s);
            CHECK(ij == ji);
            if (i == j)
                CHECK(ij == 0);
        }
    }
}

TEST_CASE("decomposition cuffs are simple and pairwise disjoint") {
    for (const char* file : {"genus2_theta.json", "genus2_dumbbell.json"}) {
        CAPTURE(file);
        FuchsianSurface s = load_surface(kData + "/" + file);
        std::vector<ClosedGeodesic> cuffs;
        for (const Word& w : s.cuff_words)
            cuffs.push_back(geodesic_from_word(w, s.gens));
        for (std::size_t i = 0; i < cuffs.size(); ++i) {
            CHECK(is_simple(cuffs[i], s));
            CHECK(cuffs[i].length ==
                  doctest::Approx(s.fn.lengths[i]).epsilon(1e-9));
            for (std::size_t j = 0; j < i; ++j)
                CHECK(intersection_number(cuffs[i], cuffs[j], s) == 0);
        }
    }
}

TEST_CASE("classes below the non-simple length floor never cross themselves") {
    FuchsianSurface s = load_surface(kData + "/genus2_dumbbell.json");
    double floor = nonsimple_length_floor();
    GeodesicInventory inv = enumerate_geodesics(s, floor);
    REQUIRE(!inv.classes.empty());
    for (const ClosedGeodesic& g : inv.classes) {
        CAPTURE(g.length);
        CHECK(is_simple(g, s));
    }
}

TEST_CASE("simple flags can be filled for a whole inventory") {
    FuchsianSurface s = load_surface(kData + "/genus2_theta.json");
    GeodesicInventory inv = enumerate_geodesics(s, 4.2);
    ensure_simple_flags(inv, s);
    for (const ClosedGeodesic& g : inv.classes) {
        REQUIRE(g.simple.has_value());
        CHECK(*g.simple == (self_crossing_count(g, s) == 0));
    }
}

TEST_CASE("a point on the minimal axis realizes the minimal loop") {
    FuchsianSurface s = load_surface(kData + "/bolza.json");
    ClosedGeodesic sys = systole_geodesic(s);
    REQUIRE(!sys.axis.has_infinite_end());
    double mid = 0.5 * (sys.axis.p + sys.axis.q);
    double rad = 0.5 * (sys.axis.q - sys.axis.p);
    auto [len, map] = shortest_loop_at(PlanePoint(mid, rad), s);
    CHECK(len == doctest::Approx(sys.length).epsilon(1e-10));
    CHECK(classify(map) == MapClass::Hyperbolic);
}

TEST_CASE("loops at random points obey the global bounds") {
    FuchsianSurface theta = load_surface(kData + "/genus2_theta.json");
    ClosedGeodesic sys = systole_geodesic(theta);
    LoopScanTable tab = build_loop_scan_table(theta);
    std::mt19937 rng(618);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.3, 3.0);
    for (int k = 0; k < 12; ++k) {
        PlanePoint z(ux(rng), uy(rng));
        auto [len, map] = shortest_loop_at(z, theta, tab);
        double inj = injectivity_radius_at(z, theta, tab);
        CHECK(std::fabs(2.0 * inj - len) <= 1e-12);
        // The shortest loop through any point is at least the systole and at
        // most the genus-wide ceiling attained by the thickest surface.
        CHECK(len >= sys.length - 1e-9);
        CHECK(len <= bavard_bound(theta.genus) + 1e-6);
        double disp = dist(z, map.apply(z));
        CHECK(disp == doctest::Approx(len).epsilon(1e-12));
    }
}
