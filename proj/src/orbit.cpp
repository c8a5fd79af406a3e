#include "tanglefree/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tanglefree {

namespace {

constexpr double kBucketWidth = 1e-6;

double entry_scale(const MobiusMap& m) {
    double s = std::fabs(m.a);
    s = std::max(s, std::fabs(m.b));
    s = std::max(s, std::fabs(m.c));
    return std::max(s, std::fabs(m.d));
}

// Sign-fold invariant key, relative to the entry scale so that products with
// large entries still land in a stable bucket.
long long bucket_key(const MobiusMap& m) {
    double s = std::fabs(m.a) + 2.0 * std::fabs(m.b) + 4.0 * std::fabs(m.c) +
               8.0 * std::fabs(m.d);
    return static_cast<long long>(
        std::llround(s / (kBucketWidth * (1.0 + entry_scale(m)))));
}

bool same_element(const MobiusMap& m, const MobiusMap& n) {
    double scale = std::max(entry_scale(m), entry_scale(n));
    return proj_dist(m, n) <= 1e-9 * (1.0 + scale);
}

} // namespace

std::size_t MatrixSet::insert(const MobiusMap& m, bool& added) {
    long long key = bucket_key(m);
    for (long long k = key - 1; k <= key + 1; ++k) {
        auto it = buckets_.find(k);
        if (it == buckets_.end())
            continue;
        for (std::size_t idx : it->second)
            if (same_element(items_[idx], m))
                return added = false, idx;
    }
    items_.push_back(m.normalized());
    buckets_[key].push_back(items_.size() - 1);
    added = true;
    return items_.size() - 1;
}

OrbitBall group_ball(const std::vector<MobiusMap>& gens, const PlanePoint& base,
                     double radius, double slack, int max_word_length,
                     std::size_t max_elements) {
    return group_ball(gens, std::vector<PlanePoint>{base}, radius, slack,
                      max_word_length, max_elements);
}

OrbitBall group_ball(const std::vector<MobiusMap>& gens,
                     const std::vector<PlanePoint>& bases, double radius,
                     double slack, int max_word_length,
                     std::size_t max_elements) {
    if (gens.empty())
        throw std::invalid_argument("group_ball: no generators");
    if (bases.empty())
        throw std::invalid_argument("group_ball: no base points");
    if (!(radius >= 0.0) || !(slack >= 0.0))
        throw std::invalid_argument("group_ball: negative radius or slack");

    std::vector<MobiusMap> letters;
    for (const MobiusMap& g : gens) {
        letters.push_back(g);
        letters.push_back(g.inverse());
    }

    OrbitBall ball;
    ball.radius = radius;
    ball.slack = slack;

    MatrixSet seen;
    bool added = false;
    seen.insert(MobiusMap::identity(), added);

    // Visited nodes in discovery order; words are reconstructed through the
    // parent links only for recorded elements, and the window test runs
    // before dedup so rejected children never grow the matrix set.
    struct Node {
        MobiusMap map;
        std::size_t parent;
        int letter;
    };
    std::vector<Node> nodes;
    nodes.push_back({MobiusMap::identity(), 0, 0});
    ball.elements.push_back({Word{}, MobiusMap::identity(), 0.0});

    auto word_of = [&](std::size_t i) {
        Word w;
        for (; i != 0; i = nodes[i].parent)
            w.push_back(nodes[i].letter);
        std::reverse(w.begin(), w.end());
        return w;
    };

    std::size_t lo = 0, hi = nodes.size();
    int depth = 0;
    while (lo < hi) {
        if (depth == max_word_length) {
            ball.word_budget_hit = true;
            break;
        }
        ++depth;
        for (std::size_t fi = lo; fi < hi; ++fi) {
            const MobiusMap parent = nodes[fi].map;
            for (std::size_t li = 0; li < letters.size(); ++li) {
                MobiusMap child = parent * letters[li];
                double disp = std::numeric_limits<double>::infinity();
                for (const PlanePoint& base : bases)
                    disp = std::min(disp, dist(base, child.apply(base)));
                if (disp > radius + slack)
                    continue;
                seen.insert(child, added);
                if (!added)
                    continue;
                int letter = static_cast<int>(li / 2) + 1;
                nodes.push_back({child, fi, li % 2 == 0 ? letter : -letter});
                if (disp <= radius)
                    ball.elements.push_back(
                        {word_of(nodes.size() - 1), child, disp});
                if (nodes.size() >= max_elements) {
                    ball.element_budget_hit = true;
                    return ball;
                }
            }
        }
        lo = hi;
        hi = nodes.size();
    }
    return ball;
}

OrbitBall word_ball(const std::vector<MobiusMap>& gens, int max_word_length,
                    std::size_t max_elements) {
    return group_ball(gens, PlanePoint{0.0, 1.0},
                      std::numeric_limits<double>::infinity(), 0.0,
                      max_word_length, max_elements);
}

} // namespace tanglefree
