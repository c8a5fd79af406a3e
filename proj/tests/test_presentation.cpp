#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tanglefree/pants.hpp"
#include "tanglefree/presentation.hpp"

#include <random>

using namespace tanglefree;

TEST_CASE("word reduction cancels adjacent inverse pairs") {
    CHECK(reduce_word({1, 2, -2, 3}) == Word{1, 3});
    CHECK(reduce_word({1, 2, -2, -1}) == Word{});
    CHECK(reduce_word({1, -2, 2, -1, 3}) == Word{3});
    CHECK(reduce_word({}) == Word{});
    CHECK_THROWS_AS(reduce_word({1, 0}), std::invalid_argument);
}

TEST_CASE("cyclic reduction trims matching ends") {
    CHECK(cyclic_reduce({1, 2, 3, -1}) == Word{2, 3});
    CHECK(cyclic_reduce({2, 1, -1, 3, -2}) == Word{3});
    CHECK(cyclic_reduce({1, -1}) == Word{});
    CHECK(is_cyclically_reduced(Word{1, 2, -1}) == false);
    CHECK(is_cyclically_reduced(Word{1, 2, -1, 2}) == true);
}

TEST_CASE("inversion and rotation behave as expected") {
    Word w{1, -2, 3};
    CHECK(invert_word(w) == Word{-3, 2, -1});
    CHECK(reduce_word([&] {
        Word u = w;
        Word v = invert_word(w);
        u.insert(u.end(), v.begin(), v.end());
        return u;
    }()) == Word{});
    CHECK(rotate_word(w, 1) == Word{-2, 3, 1});
    CHECK(rotate_word(w, 3) == w);
}

TEST_CASE("canonical class is invariant under rotation and inversion") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> letter(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        Word w;
        int len = 1 + trial % 6;
        for (int i = 0; i < len; ++i) {
            int v = letter(rng);
            w.push_back(v < 2 ? v + 1 : -(v - 1));
        }
        Word base = canonical_class(w);
        Word r = cyclic_reduce(w);
        for (std::size_t k = 0; k < r.size(); ++k) {
            CHECK(canonical_class(rotate_word(r, k)) == base);
            CHECK(canonical_class(invert_word(rotate_word(r, k))) == base);
        }
        // The canonical form is itself one of the candidates and no
        // candidate sorts below it.
        if (!r.empty()) {
            bool found = false;
            for (std::size_t k = 0; k < r.size(); ++k)
                for (const Word& cand :
                     {rotate_word(r, k), rotate_word(invert_word(r), k)}) {
                    CHECK(!(cand < base));
                    found = found || cand == base;
                }
            CHECK(found);
        }
    }
}

TEST_CASE("substitution rewrites a generator and reduces") {
    CHECK(substitute({1, 2, 3}, 2, {1, -3}) == Word{1, 1});
    CHECK(substitute({2, -1, -2}, 2, {1}) == Word{-1});
    CHECK(substitute({1, -2}, 2, {3, 1}) == Word{-3});
}

TEST_CASE("word matrices multiply generator images") {
    std::vector<MobiusMap> gens = {MobiusMap::axis_translation(1.0),
                                   frame_rotation(0.6)};
    MobiusMap direct = gens[0] * gens[1] * gens[0].inverse();
    CHECK(proj_equal(word_matrix({1, 2, -1}, gens), direct));
    CHECK(proj_equal(word_matrix({}, gens), MobiusMap::identity()));
    CHECK_THROWS_AS(word_matrix({3}, gens), std::invalid_argument);
}

namespace {

MobiusMap half_turn() { return MobiusMap::raw(0.0, -1.0, 1.0, 0.0); }

MobiusMap conjugate(const MobiusMap& c, const MobiusMap& m) {
    return c * m * c.inverse();
}

void check_standard(const GeneratedGroup& grp, int genus) {
    StandardGenerators std_gens = standard_form(grp);
    CHECK(std_gens.genus == genus);
    CHECK(std_gens.gens.size() == static_cast<std::size_t>(2 * genus));
    MobiusMap rel;
    for (std::size_t i = 0; i + 1 < std_gens.gens.size(); i += 2) {
        const MobiusMap &a = std_gens.gens[i], &b = std_gens.gens[i + 1];
        CHECK(classify(a) == MapClass::Hyperbolic);
        CHECK(classify(b) == MapClass::Hyperbolic);
        rel = rel * a * b * a.inverse() * b.inverse();
    }
    CHECK(proj_dist(rel, MobiusMap::identity()) < 1e-9);
    REQUIRE(std_gens.expressions.size() == grp.gens.size());
    for (std::size_t k = 0; k < grp.gens.size(); ++k)
        CHECK(proj_dist(word_matrix(std_gens.expressions[k], std_gens.gens),
                        grp.gens[k]) < 1e-9);
}

} // namespace

TEST_CASE("two pants glued along all three cuffs reach the standard form") {
    BoundaryPiece P = build_pants(2.0, 2.2, 2.4);
    BoundaryPiece Q = build_pants(2.0, 2.2, 2.4);
    MobiusMap J = half_turn();
    MobiusMap CQ = P.slot_frame[0] * MobiusMap::axis_translation(0.3) * J *
                   Q.slot_frame[0].inverse();
    MobiusMap t2 = P.slot_frame[1] * MobiusMap::axis_translation(-0.7) * J *
                   Q.slot_frame[1].inverse() * CQ.inverse();
    MobiusMap t3 = P.slot_frame[2] * MobiusMap::axis_translation(1.1) * J *
                   Q.slot_frame[2].inverse() * CQ.inverse();

    GeneratedGroup grp;
    grp.gens = {P.boundary[0], P.boundary[1], P.boundary[2],
                conjugate(CQ, Q.boundary[0]), conjugate(CQ, Q.boundary[1]),
                conjugate(CQ, Q.boundary[2]), t2, t3};
    // Cuff identifications hold on the nose before any rewriting happens.
    CHECK(proj_dist(grp.gens[3], grp.gens[0].inverse()) < 1e-12);
    CHECK(proj_dist(conjugate(t2, grp.gens[4]), grp.gens[1].inverse()) < 1e-12);
    CHECK(proj_dist(conjugate(t3, grp.gens[5]), grp.gens[2].inverse()) < 1e-12);

    grp.relations = {{1, 2, 3}, {4, 5, 6}, {4, 1}, {7, 5, -7, 2}, {8, 6, -8, 3}};
    check_standard(grp, 2);
}

TEST_CASE("two handles joined by a bar reach the standard form") {
    BoundaryPiece P = build_pants(1.8, 2.6, 2.6);
    BoundaryPiece Q = build_pants(1.8, 3.0, 3.0);
    MobiusMap J = half_turn();
    MobiusMap CQ = P.slot_frame[0] * MobiusMap::axis_translation(0.4) * J *
                   Q.slot_frame[0].inverse();
    MobiusMap tP = P.slot_frame[1] * MobiusMap::axis_translation(0.9) * J *
                   P.slot_frame[2].inverse();
    MobiusMap tQ = CQ * Q.slot_frame[1] * MobiusMap::axis_translation(-1.2) * J *
                   Q.slot_frame[2].inverse() * CQ.inverse();

    GeneratedGroup grp;
    grp.gens = {P.boundary[0], P.boundary[1], P.boundary[2],
                conjugate(CQ, Q.boundary[0]), conjugate(CQ, Q.boundary[1]),
                conjugate(CQ, Q.boundary[2]), tP, tQ};
    CHECK(proj_dist(grp.gens[3], grp.gens[0].inverse()) < 1e-12);
    CHECK(proj_dist(conjugate(tP, grp.gens[2]), grp.gens[1].inverse()) < 1e-12);
    CHECK(proj_dist(conjugate(tQ, grp.gens[5]), grp.gens[4].inverse()) < 1e-12);

    grp.relations = {{1, 2, 3}, {4, 5, 6}, {4, 1}, {7, 3, -7, 2}, {8, 6, -8, 5}};
    check_standard(grp, 2);
}

TEST_CASE("standard form rejects malformed presentations") {
    GeneratedGroup grp;
    grp.gens = {MobiusMap::axis_translation(1.0)};
    grp.relations = {{1}};
    CHECK_THROWS_AS(standard_form(grp), std::invalid_argument);
    grp.relations = {{1, 1}, {1, 1}};
    CHECK_THROWS_AS(standard_form(grp), std::invalid_argument);
}
