#pragma once

#include "tanglefree/mobius.hpp"
#include "tanglefree/orbit.hpp"
#include "tanglefree/presentation.hpp"
#include "tanglefree/surface.hpp"

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tanglefree {

// A search ran out of its configured budget before the answer was decided.
// Distinct from input errors (invalid_argument / domain_error) and from
// internal consistency failures (logic_error).
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchBudget {
    // Longest generator word considered when listing conjugacy classes.
    int max_word_length = 8;
    // Word length of the ball scanned when testing conjugacy inside the group.
    int conjugator_ball = 6;
    // Extra reach added to every axis-translate search radius.
    double translate_margin = 2.0;
    // Orbit exploration continues this far beyond the target radius to catch
    // paths that leave the ball before re-entering it.
    double ball_slack = 2.0;
    // Same role for the loop scan table walk.
    double table_slack = 5.0;
    std::size_t max_ball_elements = 4000000;
    std::size_t max_search_nodes = 60000000;
};

struct ClosedGeodesic {
    Word word; // canonical class representative
    MobiusMap element;
    double trace = 0.0; // of the sign-normalized element
    double length = 0.0;
    bool primitive = true;
    int word_length_found = 0;
    std::optional<bool> simple;
    AxisGeodesic axis{0.0, std::numeric_limits<double>::infinity()};
};

struct CompletenessStamp {
    int max_word_length = 0;
    int conjugator_ball = 0;
    // No class at or below the cutoff first appeared in the last two word
    // length layers, so deeper words are unlikely to contribute.
    bool sealed = false;
    bool possibly_incomplete = true;
};

struct GeodesicInventory {
    std::string surface_id;
    double cutoff = 0.0;
    CompletenessStamp stamp;
    std::vector<ClosedGeodesic> classes; // sorted by (length, word)
};

// Closed-geodesic classes of length <= L with a representative word of
// length <= budget.max_word_length. Canonical-word search tree, pruned to
// rotation-minimal words, fanned out over worker threads; the output is
// independent of thread count.
GeodesicInventory enumerate_geodesics(const FuchsianSurface& s, double L,
                                      const SearchBudget& budget = {});

// Serial twin that walks every reduced word and dedups through
// canonical_class; used as the enumeration oracle in tests.
GeodesicInventory enumerate_geodesics_reference(const FuchsianSurface& s, double L,
                                                const SearchBudget& budget = {});

// Group-level versions for subgroups given by explicit generators.
GeodesicInventory enumerate_group_geodesics(const std::vector<MobiusMap>& gens,
                                            const std::string& id, double L,
                                            const SearchBudget& budget,
                                            bool parallel);
GeodesicInventory enumerate_group_geodesics_reference(
    const std::vector<MobiusMap>& gens, const std::string& id, double L,
    const SearchBudget& budget);

// Wraps a word over the surface generators as a geodesic class; rejects words
// that are not hyperbolic on this surface.
ClosedGeodesic geodesic_from_word(const Word& w, const std::vector<MobiusMap>& gens);

// Number of self-intersection points of the geodesic representative,
// computed from axis translates crossing one fundamental period.
int self_crossing_count(const ClosedGeodesic& g, const FuchsianSurface& s,
                        const SearchBudget& budget = {});

bool is_simple(const ClosedGeodesic& g, const FuchsianSurface& s,
               const SearchBudget& budget = {});

// Geometric intersection number of two distinct classes; same-class input
// returns 0 by convention (self-crossings live in self_crossing_count).
int intersection_number(const ClosedGeodesic& g1, const ClosedGeodesic& g2,
                        const FuchsianSurface& s, const SearchBudget& budget = {});

// Smallest gap between the axis of g1 and any group translate of the axis of
// g2 (or of g1 itself when g2 is null), zero if some translate crosses.
// `reach` bounds the gap values searched for.
double axis_translate_gap(const ClosedGeodesic& g1, const ClosedGeodesic* g2,
                          const FuchsianSurface& s, double reach,
                          const SearchBudget& budget = {});

// Minimum-length class of a sealed inventory; throws BudgetExhausted when the
// seal fails, logic_error if the minimum fails to be simple.
ClosedGeodesic systole_geodesic(const FuchsianSurface& s,
                                const SearchBudget& budget = {});

// Precomputed data for shortest-loop queries: one core point per handle and
// every group element that can realize a loop below the Bavard ceiling at any
// point within (radius - ceiling) / 2 of a core. Build once per surface and
// reuse across sample points; `steps` drives the point reduction.
struct LoopScanTable {
    double ceiling = 0.0; // largest certifiable loop length
    double radius = 0.0;  // displacement coverage at each core
    std::vector<PlanePoint> cores;
    std::vector<MobiusMap> elements;
    std::vector<MobiusMap> steps;           // sorted by word length
    std::vector<std::size_t> step_blocks;   // end index per word length
};

LoopScanTable build_loop_scan_table(const FuchsianSurface& s,
                                    const SearchBudget& budget = {});

// Shortest geodesic loop based at z: minimizes dist(z, T z) over group
// elements T != id, returning the value and the minimizer. The table form
// amortizes the per-surface setup; the two-argument form builds it on the
// fly. Throws BudgetExhausted when the reduced point falls outside the
// table's certified coverage.
std::pair<double, MobiusMap> shortest_loop_at(const PlanePoint& z,
                                              const FuchsianSurface& s,
                                              const LoopScanTable& table,
                                              const SearchBudget& budget = {});
std::pair<double, MobiusMap> shortest_loop_at(const PlanePoint& z,
                                              const FuchsianSurface& s,
                                              const SearchBudget& budget = {});

double injectivity_radius_at(const PlanePoint& z, const FuchsianSurface& s,
                             const LoopScanTable& table,
                             const SearchBudget& budget = {});
double injectivity_radius_at(const PlanePoint& z, const FuchsianSurface& s,
                             const SearchBudget& budget = {});

struct MultiplicityGroup {
    double length = 0.0; // shortest member
    std::vector<Word> words;
};

// Groups inventory lengths that agree within `resolution` (chained).
std::vector<MultiplicityGroup> spectrum_multiplicities(const GeodesicInventory& inv,
                                                       double resolution);

// Decides Gamma-conjugacy of u with v or v^-1 by scanning a word ball for a
// conjugator; a miss only means no conjugator within the ball.
bool conjugate_in_group(const MobiusMap& u, const MobiusMap& v,
                        const std::vector<MobiusMap>& gens, int ball_word_length,
                        std::size_t max_elements);

void ensure_simple_flags(GeodesicInventory& inv, const FuchsianSurface& s,
                         const SearchBudget& budget = {});

// Delimited text export, one row per class:
// word (space-separated letters), trace, length, primitive, simple.
void write_inventory(std::ostream& out, const GeodesicInventory& inv);

} // namespace tanglefree
