#pragma once

#include "tanglefree/pants.hpp"
#include "tanglefree/presentation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tanglefree {

// One gluing of two cuff slots; slot values are 0..2 on each pants.
struct GluingEdge {
    int pants_a = 0;
    int slot_a = 0;
    int pants_b = 0;
    int slot_b = 0;
};

struct FNCoordinates {
    int genus = 0;
    std::vector<GluingEdge> edges; // 3g-3 entries; edge k owns lengths[k], twists[k]
    std::vector<double> lengths;
    std::vector<double> twists;
    bool approximate_wp = false; // set when produced by the box sampler
};

// Canonical trivalent pants graph on 2g-2 pants: a ring through slots 0 and
// 1 with the spare slot-2 cuffs paired off consecutively.
std::vector<GluingEdge> ring_pants_graph(int genus);

// Throws std::invalid_argument when the coordinates are not a closed
// genus-g gluing (wrong counts, reused slot, disconnected graph, bad length).
void validate_fn(const FNCoordinates& fn);

struct ValidationReport {
    double relation_residual = 0.0;
    bool generators_hyperbolic = false;
    bool jorgensen_ok = false;
    double area = 0.0; // 2 pi (2g - 2), the Gauss-Bonnet budget
    bool approximate_wp = false;
};

struct FuchsianSurface {
    int genus = 0;
    std::vector<MobiusMap> gens;
    Word relation; // evaluates to the identity on gens
    bool from_fn = false;
    FNCoordinates fn; // meaningful when from_fn
    // One word per gluing edge (input order) naming the decomposition curve
    // in the surface generators; empty for raw-matrix surfaces.
    std::vector<Word> cuff_words;
    // Boundary elements of every pants before canonicalization, indexed
    // 3 * pants + slot. Words of the same pants are based at a common point
    // and may be multiplied to form based products (figure eights between
    // two cuffs of one pants). Empty for raw-matrix surfaces.
    std::vector<Word> pants_boundary_words;
    ValidationReport report;
};

// Assembles the holonomy of the glued pants along a spanning tree of the
// pants graph (lexicographic edge order), closes the remaining gluings with
// stable letters, and rewrites everything onto standard generators
// a1, b1, ..., ag, bg with the commutator relation.
FuchsianSurface build_surface(const FNCoordinates& fn);

// Validates generator matrices supplied directly (relation residual,
// hyperbolicity, Jorgensen pair tests) without rewriting them.
FuchsianSurface surface_from_generators(int genus, std::vector<MobiusMap> gens,
                                        Word relation);

FuchsianSurface load_surface(const std::string& path);
void save_surface(const FuchsianSurface& s, const std::string& path);

// Inline coordinate form "g=2;l=2,2,2;t=0,0,0" over the ring pants graph;
// the twist block may be omitted for zero twists.
FNCoordinates parse_fn_shorthand(const std::string& text);

// Lengths uniform in (0, length_cap], twists uniform in [0, l_i): the
// Lebesgue-in-FN box approximation of the Weil-Petersson measure on the
// ring pants graph. Deterministic in the seed.
FNCoordinates sample_fn(int genus, double length_cap, std::uint64_t seed);

} // namespace tanglefree
