#pragma once

#include "tanglefree/mobius.hpp"
#include "tanglefree/presentation.hpp"

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace tanglefree {

// Set of PSL(2,R) elements with projective (sign-folded) equality. Entries
// are bucketed by a scalar key of the normalized matrix so lookups touch a
// handful of candidates. Distinct elements of a discrete group are separated
// by far more than the bucket width at the matrix scales handled here.
class MatrixSet {
  public:
    // Inserts m unless an equal element is present; returns the index of the
    // stored representative either way, with `added` reporting insertion.
    std::size_t insert(const MobiusMap& m, bool& added);
    std::size_t size() const { return items_.size(); }
    const MobiusMap& at(std::size_t i) const { return items_[i]; }

  private:
    std::vector<MobiusMap> items_;
    std::unordered_map<long long, std::vector<std::size_t>> buckets_;
};

struct OrbitElement {
    Word word;
    MobiusMap map;
    double displacement = 0.0; // dist(base, map(base))
};

struct OrbitBall {
    std::vector<OrbitElement> elements; // identity first, then breadth-first
    double radius = 0.0;
    double slack = 0.0;
    // Expansion hit the word-length cap while frontier elements still sat
    // inside radius + slack, so coverage of the ball is not assured.
    bool word_budget_hit = false;
    bool element_budget_hit = false;
};

// Breadth-first exploration of the orbit of `base`: returns every distinct
// group element found with displacement <= radius, expanding through elements
// with displacement <= radius + slack. The slack absorbs orbit paths that
// leave the target ball before re-entering it; callers needing certainty
// should compare runs at increasing slack.
OrbitBall group_ball(const std::vector<MobiusMap>& gens, const PlanePoint& base,
                     double radius, double slack, int max_word_length,
                     std::size_t max_elements);

// Multi-base form: displacement of an element is the smallest displacement
// over the given base points, both for admission and in the result. One
// shared sweep over the union of the windows reaches elements whose orbit
// paths route through any base's neighbourhood.
OrbitBall group_ball(const std::vector<MobiusMap>& gens,
                     const std::vector<PlanePoint>& bases, double radius,
                     double slack, int max_word_length,
                     std::size_t max_elements);

// Every distinct group element spelled by a word of length <= max_word_length.
OrbitBall word_ball(const std::vector<MobiusMap>& gens, int max_word_length,
                    std::size_t max_elements);

} // namespace tanglefree
