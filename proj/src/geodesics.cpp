#include "tanglefree/geodesics.hpp"

#include "tanglefree/formulas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>
#include <unordered_set>

namespace tanglefree {

namespace {

MobiusMap letter_matrix(int letter, const std::vector<MobiusMap>& gens) {
    std::size_t idx = static_cast<std::size_t>(letter > 0 ? letter : -letter);
    return letter > 0 ? gens[idx - 1] : gens[idx - 1].inverse();
}

std::string word_string(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(w[i]);
    }
    return s;
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// A word survives here when no rotation of it is lexicographically smaller
// within the letters already placed. Ties that the existing letters cannot
// decide are kept, since a later letter may still resolve them either way.
bool rotation_viable(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t i = 0; i + s < n; ++i) {
            if (w[s + i] != w[i]) {
                if (w[s + i] < w[i])
                    return false;
                break;
            }
        }
    }
    return true;
}

bool is_proper_power(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t d = 1; 2 * d <= n; ++d) {
        if (n % d != 0)
            continue;
        bool power = true;
        for (std::size_t i = d; i < n && power; ++i)
            power = w[i] == w[i % d];
        if (power)
            return true;
    }
    return false;
}

struct Candidate {
    Word word;
    MobiusMap mat;
    double abs_trace = 0.0;
};

// Trace window plus the identity/precision split. Words that multiply to the
// identity are relator artifacts and are skipped; anything else that fails to
// classify as hyperbolic means the matrices cannot be a discrete surface
// group at working precision.
bool keep_candidate(const Word& w, const MobiusMap& m, double trace_limit,
                    Candidate& out) {
    switch (classify(m, 1e-8)) {
    case MapClass::Identity:
        return false;
    case MapClass::Hyperbolic:
        break;
    default:
        throw std::domain_error("enumeration: word " + word_string(w) +
                                " is neither trivial nor hyperbolic at working "
                                "precision");
    }
    double t = std::fabs(m.trace());
    if (t > trace_limit)
        return false;
    out = Candidate{w, m, t};
    return true;
}

struct DfsLimits {
    int cap = 0;
    double trace_limit = 0.0;
    std::size_t node_limit = 0;
};

// Depth-first sweep of rotation-minimal words below the prefix in `w`,
// collecting canonical hyperbolic words inside the trace window. `m` must be
// the left-to-right product for `w` seeded from the identity so that the
// entries match word_matrix bit for bit.
void canonical_dfs(Word& w, const MobiusMap& m, const std::vector<MobiusMap>& gens,
                   const std::vector<int>& letters, const DfsLimits& lim,
                   std::atomic<std::size_t>& nodes, std::vector<Candidate>& out) {
    if (nodes.fetch_add(1, std::memory_order_relaxed) >= lim.node_limit)
        throw BudgetExhausted("enumeration: node budget exhausted");
    if (!rotation_viable(w))
        return;
    if (is_canonical_word(w)) {
        Candidate c;
        if (keep_candidate(w, m, lim.trace_limit, c))
            out.push_back(std::move(c));
    }
    if (static_cast<int>(w.size()) == lim.cap)
        return;
    for (int letter : letters) {
        if (letter == -w.back())
            continue;
        w.push_back(letter);
        canonical_dfs(w, m * letter_matrix(letter, gens), gens, letters, lim,
                      nodes, out);
        w.pop_back();
    }
}

std::vector<int> alphabet(std::size_t ngens) {
    std::vector<int> letters;
    for (int k = static_cast<int>(ngens); k >= 1; --k)
        letters.push_back(-k);
    for (int k = 1; k <= static_cast<int>(ngens); ++k)
        letters.push_back(k);
    return letters;
}

bool candidate_order(const Candidate& x, const Candidate& y) {
    if (x.word.size() != y.word.size())
        return x.word.size() < y.word.size();
    return x.word < y.word;
}

std::vector<Candidate> canonical_candidates(const std::vector<MobiusMap>& gens,
                                            double L, const SearchBudget& budget,
                                            bool parallel) {
    const std::vector<int> letters = alphabet(gens.size());
    DfsLimits lim{budget.max_word_length, 2.0 * std::cosh(L / 2.0) + 1e-9,
                  budget.max_search_nodes};
    std::atomic<std::size_t> nodes{0};

    std::vector<Candidate> out;
    if (lim.cap < 1)
        return out;
    for (int l1 : letters) {
        Word w{l1};
        MobiusMap m1 = MobiusMap::identity() * letter_matrix(l1, gens);
        if (is_canonical_word(w)) {
            Candidate c;
            if (keep_candidate(w, m1, lim.trace_limit, c))
                out.push_back(std::move(c));
        }
    }
    if (lim.cap < 2) {
        std::sort(out.begin(), out.end(), candidate_order);
        return out;
    }

    struct Task {
        int l1, l2;
    };
    std::vector<Task> tasks;
    for (int l1 : letters)
        for (int l2 : letters)
            if (l2 != -l1 && rotation_viable(Word{l1, l2}))
                tasks.push_back({l1, l2});

    std::vector<std::vector<Candidate>> results(tasks.size());
    std::exception_ptr failure = nullptr;

#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        try {
            Word w{tasks[ti].l1, tasks[ti].l2};
            MobiusMap m = MobiusMap::identity() *
                          letter_matrix(tasks[ti].l1, gens) *
                          letter_matrix(tasks[ti].l2, gens);
            canonical_dfs(w, m, gens, letters, lim, nodes, results[ti]);
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    for (const std::vector<Candidate>& r : results)
        out.insert(out.end(), r.begin(), r.end());
    std::sort(out.begin(), out.end(), candidate_order);
    return out;
}

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : w) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::vector<Candidate> reference_candidates(const std::vector<MobiusMap>& gens,
                                            double L, const SearchBudget& budget) {
    const std::vector<int> letters = alphabet(gens.size());
    DfsLimits lim{budget.max_word_length, 2.0 * std::cosh(L / 2.0) + 1e-9,
                  budget.max_search_nodes};
    std::size_t nodes = 0;

    std::unordered_set<Word, WordHash> seen;
    std::vector<Candidate> out;
    Word w;

    // Walk every reduced word; each one contributes its conjugacy class
    // representative once.
    auto walk = [&](auto&& self) -> void {
        for (int letter : letters) {
            if (!w.empty() && letter == -w.back())
                continue;
            w.push_back(letter);
            if (++nodes > lim.node_limit)
                throw BudgetExhausted("reference enumeration: node budget exhausted");
            Word canon = canonical_class(w);
            if (seen.insert(canon).second) {
                MobiusMap m = word_matrix(canon, gens);
                Candidate c;
                if (keep_candidate(canon, m, lim.trace_limit, c))
                    out.push_back(std::move(c));
            }
            if (static_cast<int>(w.size()) < lim.cap)
                self(self);
            w.pop_back();
        }
    };
    if (lim.cap >= 1)
        walk(walk);
    std::sort(out.begin(), out.end(), candidate_order);
    return out;
}

double matrix_scale(const MobiusMap& m) {
    double s = std::fabs(m.a);
    s = std::max(s, std::fabs(m.b));
    s = std::max(s, std::fabs(m.c));
    return std::max(s, std::fabs(m.d));
}

bool conjugates_to(const MobiusMap& t, const MobiusMap& u, const MobiusMap& v) {
    MobiusMap x = t * u * t.inverse();
    double tol = 1e-6 * (1.0 + std::max(matrix_scale(x), matrix_scale(v)));
    return proj_dist(x, v) <= tol;
}

bool ball_conjugate(const OrbitBall& ball, const MobiusMap& u, const MobiusMap& v) {
    MobiusMap vinv = v.inverse();
    for (const OrbitElement& e : ball.elements)
        if (conjugates_to(e.map, u, v) || conjugates_to(e.map, u, vinv))
            return true;
    return false;
}

GeodesicInventory assemble_inventory(std::vector<Candidate> cands,
                                     const std::vector<MobiusMap>& gens,
                                     const std::string& id, double L,
                                     const SearchBudget& budget) {
    // Union-find over candidates; the candidates arrive sorted by
    // (word length, word), so the smallest index of a class is its preferred
    // representative.
    std::vector<std::size_t> parent(cands.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    auto unite = [&](std::size_t i, std::size_t j) {
        i = find(i);
        j = find(j);
        if (i != j)
            parent[std::max(i, j)] = std::min(i, j);
    };

    // Group by trace (fast pre-filter only; equal lengths do not merge
    // anything by themselves), then confirm with a conjugator scan.
    std::vector<std::size_t> by_trace(cands.size());
    std::iota(by_trace.begin(), by_trace.end(), 0);
    std::sort(by_trace.begin(), by_trace.end(), [&](std::size_t x, std::size_t y) {
        if (cands[x].abs_trace != cands[y].abs_trace)
            return cands[x].abs_trace < cands[y].abs_trace;
        return x < y;
    });

    OrbitBall conj_ball;
    bool have_ball = false;
    std::size_t group_begin = 0;
    for (std::size_t k = 1; k <= by_trace.size(); ++k) {
        bool breaks = k == by_trace.size() ||
                      cands[by_trace[k]].abs_trace -
                              cands[by_trace[k - 1]].abs_trace >
                          1e-7;
        if (!breaks)
            continue;
        if (k - group_begin >= 2) {
            if (!have_ball) {
                conj_ball = word_ball(gens, budget.conjugator_ball,
                                      budget.max_ball_elements);
                if (conj_ball.element_budget_hit)
                    throw BudgetExhausted(
                        "conjugacy ball: element budget exhausted");
                have_ball = true;
            }
            for (std::size_t i = group_begin; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j) {
                    std::size_t a = by_trace[i], b = by_trace[j];
                    if (find(a) == find(b))
                        continue;
                    if (ball_conjugate(conj_ball, cands[a].mat, cands[b].mat))
                        unite(a, b);
                }
        }
        group_begin = k;
    }

    GeodesicInventory inv;
    inv.surface_id = id;
    inv.cutoff = L;
    inv.stamp.max_word_length = budget.max_word_length;
    inv.stamp.conjugator_ball = budget.conjugator_ball;

    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (find(i) != i)
            continue;
        ClosedGeodesic g;
        g.word = cands[i].word;
        g.element = cands[i].mat.normalized();
        g.trace = g.element.trace();
        g.length = 2.0 * std::acosh(cands[i].abs_trace / 2.0);
        g.primitive = !is_proper_power(g.word);
        g.word_length_found = static_cast<int>(g.word.size());
        g.axis = axis(g.element);
        inv.classes.push_back(std::move(g));
    }
    std::sort(inv.classes.begin(), inv.classes.end(),
              [](const ClosedGeodesic& x, const ClosedGeodesic& y) {
                  if (x.length != y.length)
                      return x.length < y.length;
                  return x.word < y.word;
              });

    int deepest = 0;
    for (const ClosedGeodesic& g : inv.classes)
        deepest = std::max(deepest, g.word_length_found);
    inv.stamp.sealed = budget.max_word_length >= 2 &&
                       deepest <= budget.max_word_length - 2;
    inv.stamp.possibly_incomplete = !inv.stamp.sealed;
    return inv;
}

void check_enumeration_inputs(const std::vector<MobiusMap>& gens, double L) {
    if (gens.empty())
        throw std::invalid_argument("enumeration: no generators");
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("enumeration: cutoff must be positive");
}

} // namespace

GeodesicInventory enumerate_group_geodesics(const std::vector<MobiusMap>& gens,
                                            const std::string& id, double L,
                                            const SearchBudget& budget,
                                            bool parallel) {
    check_enumeration_inputs(gens, L);
    return assemble_inventory(canonical_candidates(gens, L, budget, parallel),
                              gens, id, L, budget);
}

GeodesicInventory enumerate_group_geodesics_reference(
    const std::vector<MobiusMap>& gens, const std::string& id, double L,
    const SearchBudget& budget) {
    check_enumeration_inputs(gens, L);
    return assemble_inventory(reference_candidates(gens, L, budget), gens, id, L,
                              budget);
}

GeodesicInventory enumerate_geodesics(const FuchsianSurface& s, double L,
                                      const SearchBudget& budget) {
    return enumerate_group_geodesics(
        s.gens, "genus-" + std::to_string(s.genus), L, budget, true);
}

GeodesicInventory enumerate_geodesics_reference(const FuchsianSurface& s, double L,
                                                const SearchBudget& budget) {
    return enumerate_group_geodesics_reference(
        s.gens, "genus-" + std::to_string(s.genus), L, budget);
}

ClosedGeodesic geodesic_from_word(const Word& w, const std::vector<MobiusMap>& gens) {
    if (w.empty())
        throw std::invalid_argument("geodesic_from_word: empty word");
    for (int letter : w) {
        std::size_t idx = static_cast<std::size_t>(letter > 0 ? letter : -letter);
        if (letter == 0 || idx > gens.size())
            throw std::invalid_argument("geodesic_from_word: letter out of range");
    }
    Word canon = canonical_class(w);
    if (canon.empty())
        throw std::invalid_argument("geodesic_from_word: word is contractible");
    MobiusMap m = word_matrix(canon, gens);
    if (classify(m, 1e-8) != MapClass::Hyperbolic)
        throw std::invalid_argument(
            "geodesic_from_word: word is not hyperbolic on this surface");
    ClosedGeodesic g;
    g.word = std::move(canon);
    g.element = m.normalized();
    g.trace = g.element.trace();
    g.length = 2.0 * std::acosh(std::fabs(g.trace) / 2.0);
    g.primitive = !is_proper_power(g.word);
    g.word_length_found = static_cast<int>(g.word.size());
    g.axis = axis(g.element);
    return g;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Orbit lines T(target) deduplicated by their ideal endpoints, folded to the
// atan chart so infinite endpoints compare cleanly.
class LineSet {
  public:
    bool insert(const AxisGeodesic& g) {
        double kp = std::atan(g.p);
        double kq = std::atan(g.q);
        long long key = static_cast<long long>(
            std::llround((kp + 4.0 * kq) / 1e-7));
        for (long long k = key - 1; k <= key + 1; ++k) {
            auto it = buckets_.find(k);
            if (it == buckets_.end())
                continue;
            for (std::size_t idx : it->second)
                if (std::fabs(items_[idx].first - kp) <= 1e-8 &&
                    std::fabs(items_[idx].second - kq) <= 1e-8)
                    return false;
        }
        items_.emplace_back(kp, kq);
        buckets_[key].push_back(items_.size() - 1);
        return true;
    }

  private:
    std::vector<std::pair<double, double>> items_;
    std::unordered_map<long long, std::vector<std::size_t>> buckets_;
};

struct TranslateSurvey {
    std::vector<double> crossing_params; // in [0, period), deduplicated
    double min_gap = kInf; // over non-crossing translates within reach
};

// Sweeps group translates of `target` near one period of the imaginary axis.
// The conjugated generators must present the surveyed geodesic as the segment
// from i to i*e^period on the imaginary axis. `radius` bounds the orbit ball
// explored; crossings are recorded by their height parameter mod period, and
// gaps up to `reach` feed min_gap.
TranslateSurvey survey_translates(const std::vector<MobiusMap>& conj_gens,
                                  double period, const AxisGeodesic& target,
                                  double radius, double reach,
                                  const SearchBudget& budget) {
    PlanePoint center{0.0, std::exp(period / 2.0)};
    OrbitBall ball = group_ball(conj_gens, center, radius, budget.ball_slack, 64,
                                budget.max_ball_elements);
    if (ball.element_budget_hit)
        throw BudgetExhausted("translate survey: element budget exhausted");
    if (ball.word_budget_hit)
        throw BudgetExhausted("translate survey: word budget exhausted");

    const AxisGeodesic base{0.0, kInf};
    LineSet seen;
    TranslateSurvey survey;
    std::vector<double> params;
    auto survey_one = [&](const MobiusMap& map) {
        // Powers of the standardized primitive are near-diagonal; their
        // rounding dirt grows with the entries, so test the off-diagonal
        // entries against the element's own scale rather than the mapped
        // endpoints against an absolute threshold.
        double scale = matrix_scale(map);
        if (std::fabs(map.b) <= 1e-8 * scale && std::fabs(map.c) <= 1e-8 * scale)
            return; // the surveyed axis itself (stabilizer orbit)
        double u = map.apply_boundary(target.p);
        double v = map.apply_boundary(target.q);
        AxisGeodesic line(u, v);
        if (line.has_infinite_end() && std::fabs(line.p) <= 1e-9)
            return;
        if (!seen.insert(line))
            return;
        if (!line.has_infinite_end() && line.p < 0.0 && line.q > 0.0) {
            double s = std::fmod(0.5 * std::log(-line.p * line.q), period);
            if (s < 0.0)
                s += period;
            params.push_back(s);
        } else if (reach >= 0.0) {
            double gap = geodesic_gap(line, base);
            if (gap <= reach)
                survey.min_gap = std::min(survey.min_gap, gap);
        }
    };
    // A self-crossing at parameter s is visited again at the parameter of the
    // inverse translate, so closing the processed set under inversion keeps
    // the visit pairing intact even when the inverse fell outside the ball.
    for (const OrbitElement& e : ball.elements) {
        survey_one(e.map);
        survey_one(e.map.inverse());
    }

    std::sort(params.begin(), params.end());
    double ptol = 1e-7 * (1.0 + period);
    for (double s : params) {
        if (!survey.crossing_params.empty() &&
            s - survey.crossing_params.back() <= ptol)
            continue;
        survey.crossing_params.push_back(s);
    }
    // The parameter line wraps: a crossing recorded near period may duplicate
    // one near zero.
    if (survey.crossing_params.size() >= 2 &&
        period - survey.crossing_params.back() + survey.crossing_params.front() <=
            ptol)
        survey.crossing_params.pop_back();
    return survey;
}

struct StandardizedSurface {
    std::vector<MobiusMap> conj_gens;
    MobiusMap frame; // maps the geodesic axis to the imaginary axis
};

StandardizedSurface standardize_to_axis(const ClosedGeodesic& g,
                                        const FuchsianSurface& s) {
    StandardizedSurface st;
    st.frame = standardize_axis(g.axis);
    st.conj_gens.reserve(s.gens.size());
    MobiusMap inv = st.frame.inverse();
    for (const MobiusMap& gen : s.gens)
        st.conj_gens.push_back(st.frame * gen * inv);
    return st;
}

} // namespace

int self_crossing_count(const ClosedGeodesic& g, const FuchsianSurface& s,
                        const SearchBudget& budget) {
    StandardizedSurface st = standardize_to_axis(g, s);
    double radius = g.length + budget.translate_margin;
    TranslateSurvey survey = survey_translates(st.conj_gens, g.length,
                                               AxisGeodesic{0.0, kInf}, radius,
                                               -1.0, budget);
    std::size_t n = survey.crossing_params.size();
    if (n % 2 != 0)
        throw std::logic_error("self_crossing_count: crossings failed to pair up");
    return static_cast<int>(n / 2);
}

bool is_simple(const ClosedGeodesic& g, const FuchsianSurface& s,
               const SearchBudget& budget) {
    return self_crossing_count(g, s, budget) == 0;
}

int intersection_number(const ClosedGeodesic& g1, const ClosedGeodesic& g2,
                        const FuchsianSurface& s, const SearchBudget& budget) {
    if (g1.word == g2.word)
        return 0;
    StandardizedSurface st = standardize_to_axis(g1, s);
    MobiusMap m2 = st.frame * g2.element * st.frame.inverse();
    AxisGeodesic target = axis(m2);
    PlanePoint center{0.0, std::exp(g1.length / 2.0)};
    double offset = dist_to_geodesic(center, target);
    double radius =
        g1.length / 2.0 + g2.length / 2.0 + offset + budget.translate_margin;
    TranslateSurvey survey = survey_translates(st.conj_gens, g1.length, target,
                                               radius, -1.0, budget);
    return static_cast<int>(survey.crossing_params.size());
}

double axis_translate_gap(const ClosedGeodesic& g1, const ClosedGeodesic* g2,
                          const FuchsianSurface& s, double reach,
                          const SearchBudget& budget) {
    if (!(reach >= 0.0))
        throw std::invalid_argument("axis_translate_gap: reach must be >= 0");
    StandardizedSurface st = standardize_to_axis(g1, s);
    AxisGeodesic target{0.0, kInf};
    double other_length = g1.length;
    double offset = 0.0;
    if (g2 != nullptr) {
        MobiusMap m2 = st.frame * g2->element * st.frame.inverse();
        target = axis(m2);
        other_length = g2->length;
        offset = dist_to_geodesic(PlanePoint{0.0, std::exp(g1.length / 2.0)},
                                  target);
    }
    double radius = g1.length / 2.0 + other_length / 2.0 + offset + reach +
                    budget.translate_margin;
    TranslateSurvey survey =
        survey_translates(st.conj_gens, g1.length, target, radius, reach, budget);
    if (!survey.crossing_params.empty())
        return 0.0;
    return survey.min_gap;
}

ClosedGeodesic systole_geodesic(const FuchsianSurface& s,
                                const SearchBudget& budget) {
    double guess = kInf;
    for (const MobiusMap& g : s.gens)
        guess = std::min(guess, translation_length(g));
    GeodesicInventory inv = enumerate_geodesics(s, guess, budget);
    if (inv.classes.empty())
        throw std::logic_error("systole: generator class missing from inventory");
    if (!inv.stamp.sealed) {
        // The generator guess can sit far above the minimum, in which case
        // deep words keep contributing near the cutoff and the seal fails.
        // Shrinking the cutoff to just above the current best candidate asks
        // the cheaper question that actually matters: is anything at or
        // below the candidate still appearing in the deepest layers?
        double cand = inv.classes.front().length;
        inv = enumerate_geodesics(s, cand * (1.0 + 1e-9), budget);
        if (inv.classes.empty())
            throw std::logic_error("systole: candidate class vanished on re-run");
    }
    if (!inv.stamp.sealed)
        throw BudgetExhausted(
            "systole: enumeration not sealed at this word budget; raise "
            "max_word_length");
    ClosedGeodesic best = inv.classes.front();
    if (!is_simple(best, s, budget))
        throw std::logic_error("systole: minimal class is not simple");
    best.simple = true;
    return best;
}

namespace {

// Displacement reach of the table beyond the loop ceiling. One core per
// handle spreads thinner as the genus grows, so the reach grows with it to
// keep ceiling-sized loops certifiable at the resulting core distances.
double table_reach(int genus) { return 7.0 + 2.0 * (genus - 2); }

PlanePoint axis_summit(const MobiusMap& m) {
    AxisGeodesic a = axis(m);
    if (a.has_infinite_end())
        return {a.p, 1.0};
    return {0.5 * (a.p + a.q), 0.5 * (a.q - a.p)};
}

// Greedy descent of min-distance-to-a-core over the step blocks, cheapest
// word lengths first and escalating only on a stall. Returns the reduced
// point and accumulates the applied composition.
PlanePoint reduce_to_cores(const PlanePoint& z, const LoopScanTable& t,
                           MobiusMap& to_core) {
    auto core_dist = [&](const PlanePoint& w) {
        double best = kInf;
        for (const PlanePoint& c : t.cores)
            best = std::min(best, dist(w, c));
        return best;
    };
    PlanePoint zr = z;
    std::size_t level = 1;
    for (int round = 0; round < 400; ++round) {
        double best = core_dist(zr);
        const MobiusMap* pick = nullptr;
        for (std::size_t i = 0; i < t.step_blocks[level - 1]; ++i) {
            double d = core_dist(t.steps[i].apply(zr));
            if (d < best - 1e-9) {
                best = d;
                pick = &t.steps[i];
            }
        }
        if (pick != nullptr) {
            zr = pick->apply(zr);
            to_core = (*pick * to_core).unit_det();
            level = 1;
            continue;
        }
        if (level < t.step_blocks.size()) {
            ++level;
            continue;
        }
        break;
    }
    return zr;
}

} // namespace

LoopScanTable build_loop_scan_table(const FuchsianSurface& s,
                                    const SearchBudget& budget) {
    LoopScanTable t;
    t.ceiling = bavard_bound(s.genus) + 1e-6;
    t.radius = t.ceiling + table_reach(s.genus);
    for (std::size_t k = 0; 2 * k < s.gens.size(); ++k)
        t.cores.push_back(axis_summit(s.gens[2 * k]));

    // Any loop at a covered point that beats the ceiling is realized by an
    // element whose displacement at the nearest core is at most
    // ceiling + 2 dist(point, core) <= radius, so the table must hold every
    // element up to that displacement at some core. Each entry is taken
    // directly from an orbit walk, so it is a plain product of generator
    // letters along a displacement-admissible path; rebuilding or chaining
    // conjugates would compound rounding noise into matrices that no longer
    // lie in the group, and a near-miss matrix with a plausible axis is
    // exactly the kind of junk a displacement filter cannot reject. Elements
    // translating further than the ceiling never realize a loop below it, so
    // the trace band drops them along with the non-hyperbolic leftovers.
    OrbitBall ball = group_ball(s.gens, t.cores, t.radius, budget.table_slack,
                                64, budget.max_ball_elements);
    if (ball.element_budget_hit || ball.word_budget_hit)
        throw BudgetExhausted("loop table: walk budget exhausted");
    double trace_max = 2.0 * std::cosh(0.5 * t.ceiling) + 1e-9;
    for (const OrbitElement& e : ball.elements) {
        double tr = std::fabs(e.map.a + e.map.d);
        if (tr <= 2.0 + 1e-8 || tr > trace_max)
            continue;
        t.elements.push_back(e.map);
    }

    OrbitBall wb = word_ball(s.gens, 5, budget.max_ball_elements);
    std::vector<const OrbitElement*> by_length;
    for (const OrbitElement& e : wb.elements)
        if (!e.word.empty())
            by_length.push_back(&e);
    std::stable_sort(by_length.begin(), by_length.end(),
                     [](const OrbitElement* x, const OrbitElement* y) {
                         return x->word.size() < y->word.size();
                     });
    std::size_t j = 0;
    for (std::size_t wl = 1; wl <= 5; ++wl) {
        while (j < by_length.size() && by_length[j]->word.size() == wl) {
            t.steps.push_back(by_length[j]->map);
            ++j;
        }
        t.step_blocks.push_back(t.steps.size());
    }
    return t;
}

std::pair<double, MobiusMap> shortest_loop_at(const PlanePoint& z,
                                              const FuchsianSurface& s,
                                              const LoopScanTable& table,
                                              const SearchBudget& budget) {
    (void)s;
    (void)budget;
    if (table.cores.empty() || table.step_blocks.empty())
        throw std::invalid_argument("shortest loop: empty scan table");
    MobiusMap to_core;
    PlanePoint zr = reduce_to_cores(z, table, to_core);
    double dcore = kInf;
    for (const PlanePoint& c : table.cores)
        dcore = std::min(dcore, dist(zr, c));
    if (2.0 * dcore > table.radius)
        throw BudgetExhausted(
            "shortest loop: reduced point outside table coverage");
    double best = kInf;
    const MobiusMap* arg = nullptr;
    for (const MobiusMap& m : table.elements) {
        double d = dist(zr, m.apply(zr));
        if (d < best) {
            best = d;
            arg = &m;
        }
    }
    // Every point of a closed surface admits a loop below the ceiling, so a
    // larger scan minimum proves the table missed the minimizer.
    if (arg == nullptr || best > table.ceiling)
        throw BudgetExhausted("shortest loop: scan exceeded the loop ceiling");
    // Certificate that the scan minimum is the true minimum: any shorter loop
    // at zr comes from an element displacing the nearest core by at most
    // best + 2 dcore, and up to that displacement the table is complete. The
    // bound adapts to the point: deep in a thin tube the scan value is small,
    // so even a reduction stall far from every core still certifies.
    if (best + 2.0 * dcore > table.radius)
        throw BudgetExhausted(
            "shortest loop: scan not certified at this core distance");
    MobiusMap back = to_core.inverse();
    MobiusMap loop = (back * (*arg) * to_core).unit_det();
    return {dist(z, loop.apply(z)), loop};
}

std::pair<double, MobiusMap> shortest_loop_at(const PlanePoint& z,
                                              const FuchsianSurface& s,
                                              const SearchBudget& budget) {
    return shortest_loop_at(z, s, build_loop_scan_table(s, budget), budget);
}

double injectivity_radius_at(const PlanePoint& z, const FuchsianSurface& s,
                             const LoopScanTable& table,
                             const SearchBudget& budget) {
    return 0.5 * shortest_loop_at(z, s, table, budget).first;
}

double injectivity_radius_at(const PlanePoint& z, const FuchsianSurface& s,
                             const SearchBudget& budget) {
    return 0.5 * shortest_loop_at(z, s, budget).first;
}

std::vector<MultiplicityGroup> spectrum_multiplicities(const GeodesicInventory& inv,
                                                       double resolution) {
    if (!(resolution > 0.0))
        throw std::invalid_argument("spectrum_multiplicities: resolution must be "
                                    "positive");
    if (inv.stamp.possibly_incomplete)
        throw std::invalid_argument("spectrum_multiplicities: inventory is not "
                                    "complete at its cutoff");
    std::vector<MultiplicityGroup> out;
    double last = -kInf;
    for (const ClosedGeodesic& g : inv.classes) {
        if (out.empty() || g.length - last > resolution)
            out.push_back({g.length, {}});
        out.back().words.push_back(g.word);
        last = g.length;
    }
    return out;
}

bool conjugate_in_group(const MobiusMap& u, const MobiusMap& v,
                        const std::vector<MobiusMap>& gens, int ball_word_length,
                        std::size_t max_elements) {
    OrbitBall ball = word_ball(gens, ball_word_length, max_elements);
    if (ball.element_budget_hit)
        throw BudgetExhausted("conjugate_in_group: element budget exhausted");
    return ball_conjugate(ball, u, v);
}

void ensure_simple_flags(GeodesicInventory& inv, const FuchsianSurface& s,
                         const SearchBudget& budget) {
    for (ClosedGeodesic& g : inv.classes)
        if (!g.simple.has_value())
            g.simple = is_simple(g, s, budget);
}

void write_inventory(std::ostream& out, const GeodesicInventory& inv) {
    out << "# surface=" << inv.surface_id << " cutoff=" << format_g17(inv.cutoff)
        << " max_word_length=" << inv.stamp.max_word_length
        << " conjugator_ball=" << inv.stamp.conjugator_ball
        << " sealed=" << (inv.stamp.sealed ? 1 : 0) << "\n";
    out << "# word,trace,length,primitive,simple\n";
    for (const ClosedGeodesic& g : inv.classes) {
        out << word_string(g.word) << ',' << format_g17(g.trace) << ','
            << format_g17(g.length) << ',' << (g.primitive ? 1 : 0) << ',';
        if (g.simple.has_value())
            out << (*g.simple ? 1 : 0);
        else
            out << '?';
        out << "\n";
    }
}

} // namespace tanglefree
