#include "tanglefree/surface.hpp"

#include "tanglefree/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tanglefree {

namespace {

using nlohmann::json;

constexpr double kResidualTol = 1e-8;

MobiusMap half_turn() { return MobiusMap::raw(0.0, -1.0, 1.0, 0.0); }

std::array<int, 4> edge_key(const GluingEdge& e) {
    std::array<int, 4> lo{e.pants_a, e.slot_a, e.pants_b, e.slot_b};
    std::array<int, 4> hi{e.pants_b, e.slot_b, e.pants_a, e.slot_a};
    return std::min(lo, hi);
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

bool jorgensen_pair(const MobiusMap& a, const MobiusMap& b) {
    MobiusMap comm = a * b * a.inverse() * b.inverse();
    double ta = a.trace();
    return std::fabs(ta * ta - 4.0) + std::fabs(comm.trace() - 2.0) >= 1.0 - 1e-9;
}

ValidationReport validate_group(int genus, const std::vector<MobiusMap>& gens,
                                const Word& relation) {
    ValidationReport rep;
    rep.area = 2.0 * std::numbers::pi * (2.0 * genus - 2.0);
    rep.relation_residual =
        proj_dist(word_matrix(relation, gens), MobiusMap::identity());
    if (rep.relation_residual > kResidualTol)
        throw std::domain_error("surface: relation residual " +
                                std::to_string(rep.relation_residual) +
                                " exceeds tolerance");
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (classify(gens[i]) != MapClass::Hyperbolic)
            throw std::domain_error("surface: generator " + std::to_string(i + 1) +
                                    " is not hyperbolic");
    rep.generators_hyperbolic = true;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!jorgensen_pair(gens[i], gens[j]) || !jorgensen_pair(gens[j], gens[i]))
                throw std::domain_error("surface: generator pair (" +
                                        std::to_string(i + 1) + ", " +
                                        std::to_string(j + 1) +
                                        ") fails the Jorgensen test");
    rep.jorgensen_ok = true;
    return rep;
}

double parse_real(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("surface file: bad real '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v))
        throw std::invalid_argument("surface file: bad real '" + text + "'");
    return v;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::vector<GluingEdge> ring_pants_graph(int genus) {
    if (genus < 2)
        throw std::invalid_argument("ring_pants_graph: genus must be at least 2");
    int n = 2 * genus - 2;
    std::vector<GluingEdge> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({i, 0, (i + 1) % n, 1});
    for (int i = 0; i + 1 < n; i += 2)
        edges.push_back({i, 2, i + 1, 2});
    return edges;
}

void validate_fn(const FNCoordinates& fn) {
    if (fn.genus < 2)
        throw std::invalid_argument("fn: genus must be at least 2");
    std::size_t want = static_cast<std::size_t>(3 * fn.genus - 3);
    if (fn.edges.size() != want)
        throw std::invalid_argument("fn: expected " + std::to_string(want) +
                                    " gluing edges");
    if (fn.lengths.size() != want || fn.twists.size() != want)
        throw std::invalid_argument("fn: lengths and twists must match the edge count");
    int pants = 2 * fn.genus - 2;
    std::vector<bool> used(static_cast<std::size_t>(pants) * 3, false);
    DisjointSet comp(pants);
    for (const GluingEdge& e : fn.edges) {
        for (auto [p, s] : {std::pair{e.pants_a, e.slot_a}, std::pair{e.pants_b, e.slot_b}}) {
            if (p < 0 || p >= pants || s < 0 || s > 2)
                throw std::invalid_argument("fn: slot reference out of range");
            std::size_t k = static_cast<std::size_t>(p) * 3 + static_cast<std::size_t>(s);
            if (used[k])
                throw std::invalid_argument("fn: slot glued twice");
            used[k] = true;
        }
        comp.unite(e.pants_a, e.pants_b);
    }
    for (int i = 1; i < pants; ++i)
        if (comp.find(i) != comp.find(0))
            throw std::invalid_argument("fn: pants graph is disconnected");
    for (double l : fn.lengths)
        if (!(l > 0.0) || !std::isfinite(l))
            throw std::invalid_argument("fn: lengths must be positive");
    for (double t : fn.twists)
        if (!std::isfinite(t))
            throw std::invalid_argument("fn: twists must be finite");
}

FuchsianSurface build_surface(const FNCoordinates& fn) {
    validate_fn(fn);
    int pants_count = 2 * fn.genus - 2;

    struct OrderedEdge {
        GluingEdge e; // normalized so (pants_a, slot_a) is the smaller end
        double length = 0.0;
        double twist = 0.0;
        std::size_t input_index = 0;
    };
    std::vector<OrderedEdge> edges(fn.edges.size());
    for (std::size_t k = 0; k < fn.edges.size(); ++k) {
        GluingEdge e = fn.edges[k];
        if (std::tie(e.pants_b, e.slot_b) < std::tie(e.pants_a, e.slot_a)) {
            std::swap(e.pants_a, e.pants_b);
            std::swap(e.slot_a, e.slot_b);
        }
        edges[k] = {e, fn.lengths[k], fn.twists[k], k};
    }
    std::sort(edges.begin(), edges.end(), [](const OrderedEdge& x, const OrderedEdge& y) {
        return edge_key(x.e) < edge_key(y.e);
    });

    // Cuff length per slot, then the pants pieces themselves.
    std::vector<std::array<double, 3>> cuff(
        static_cast<std::size_t>(pants_count), {0.0, 0.0, 0.0});
    for (const OrderedEdge& oe : edges) {
        cuff[static_cast<std::size_t>(oe.e.pants_a)][static_cast<std::size_t>(oe.e.slot_a)] =
            oe.length;
        cuff[static_cast<std::size_t>(oe.e.pants_b)][static_cast<std::size_t>(oe.e.slot_b)] =
            oe.length;
    }
    std::vector<BoundaryPiece> piece;
    piece.reserve(static_cast<std::size_t>(pants_count));
    for (int p = 0; p < pants_count; ++p)
        piece.push_back(build_pants(cuff[static_cast<std::size_t>(p)][0],
                                    cuff[static_cast<std::size_t>(p)][1],
                                    cuff[static_cast<std::size_t>(p)][2]));

    // Spanning tree in sorted edge order, then placements away from pants 0.
    DisjointSet comp(pants_count);
    std::vector<bool> is_tree(edges.size(), false);
    for (std::size_t k = 0; k < edges.size(); ++k)
        is_tree[k] = comp.unite(edges[k].e.pants_a, edges[k].e.pants_b);

    const MobiusMap J = half_turn();
    std::vector<MobiusMap> place(static_cast<std::size_t>(pants_count));
    std::vector<bool> placed(static_cast<std::size_t>(pants_count), false);
    placed[0] = true;
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (!is_tree[k])
                continue;
            const OrderedEdge& oe = edges[k];
            auto pa = static_cast<std::size_t>(oe.e.pants_a);
            auto pb = static_cast<std::size_t>(oe.e.pants_b);
            if (placed[pa] == placed[pb])
                continue;
            // The gluing map is symmetric under swapping the two ends, so
            // the same formula serves whichever side is already placed.
            std::size_t from = placed[pa] ? pa : pb;
            std::size_t to = placed[pa] ? pb : pa;
            int slot_from = placed[pa] ? oe.e.slot_a : oe.e.slot_b;
            int slot_to = placed[pa] ? oe.e.slot_b : oe.e.slot_a;
            place[to] = place[from] *
                        piece[from].slot_frame[static_cast<std::size_t>(slot_from)] *
                        MobiusMap::axis_translation(oe.twist) * J *
                        piece[to].slot_frame[static_cast<std::size_t>(slot_to)].inverse();
            placed[to] = true;
            progress = true;
        }
    }

    // Generators: one per cuff slot, then one stable letter per cycle edge.
    auto slot_gen = [](int p, int s) { return 3 * p + s + 1; };
    GeneratedGroup grp;
    grp.gens.resize(static_cast<std::size_t>(pants_count) * 3);
    for (int p = 0; p < pants_count; ++p)
        for (int s = 0; s < 3; ++s)
            grp.gens[static_cast<std::size_t>(slot_gen(p, s)) - 1] =
                place[static_cast<std::size_t>(p)] *
                piece[static_cast<std::size_t>(p)].boundary[static_cast<std::size_t>(s)] *
                place[static_cast<std::size_t>(p)].inverse();
    for (int p = 0; p < pants_count; ++p)
        grp.relations.push_back({slot_gen(p, 0), slot_gen(p, 1), slot_gen(p, 2)});
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const OrderedEdge& oe = edges[k];
        if (is_tree[k]) {
            grp.relations.push_back({slot_gen(oe.e.pants_b, oe.e.slot_b),
                                     slot_gen(oe.e.pants_a, oe.e.slot_a)});
        } else {
            auto pa = static_cast<std::size_t>(oe.e.pants_a);
            auto pb = static_cast<std::size_t>(oe.e.pants_b);
            MobiusMap t = place[pa] *
                          piece[pa].slot_frame[static_cast<std::size_t>(oe.e.slot_a)] *
                          MobiusMap::axis_translation(oe.twist) * J *
                          piece[pb].slot_frame[static_cast<std::size_t>(oe.e.slot_b)].inverse() *
                          place[pb].inverse();
            grp.gens.push_back(t);
            int tg = static_cast<int>(grp.gens.size());
            grp.relations.push_back({tg, slot_gen(oe.e.pants_b, oe.e.slot_b), -tg,
                                     slot_gen(oe.e.pants_a, oe.e.slot_a)});
        }
    }

    // Intermediate rewriting tolerates more drift than the final surface:
    // long substitution words on nearly degenerate samples accumulate noise,
    // and the binding 1e-8 contract is enforced on the result below.
    StandardGenerators std_gens = standard_form(grp, 1e-6);
    if (std_gens.genus != fn.genus)
        throw std::logic_error("build_surface: rewriting changed the genus");

    FuchsianSurface s;
    s.genus = fn.genus;
    s.gens = std_gens.gens;
    for (int i = 1; i <= fn.genus; ++i) {
        s.relation.push_back(2 * i - 1);
        s.relation.push_back(2 * i);
        s.relation.push_back(-(2 * i - 1));
        s.relation.push_back(-(2 * i));
    }
    s.from_fn = true;
    s.fn = fn;
    s.cuff_words.resize(edges.size());
    for (const OrderedEdge& oe : edges) {
        const Word& expr = std_gens.expressions[static_cast<std::size_t>(
            slot_gen(oe.e.pants_a, oe.e.slot_a)) - 1];
        s.cuff_words[oe.input_index] = canonical_class(expr);
    }
    s.pants_boundary_words.resize(3 * pants_count);
    for (std::size_t k = 0; k < s.pants_boundary_words.size(); ++k)
        s.pants_boundary_words[k] = std_gens.expressions[k];
    s.report = validate_group(s.genus, s.gens, s.relation);
    s.report.approximate_wp = fn.approximate_wp;

    // Cuff round-trip: each decomposition curve must translate by its
    // prescribed length.
    for (std::size_t k = 0; k < edges.size(); ++k) {
        double got = translation_length(
            word_matrix(s.cuff_words[edges[k].input_index], s.gens));
        if (std::fabs(got - edges[k].length) >
            1e-8 * std::max(1.0, edges[k].length))
            throw std::domain_error("build_surface: cuff length drifted in rewriting");
    }
    return s;
}

FuchsianSurface surface_from_generators(int genus, std::vector<MobiusMap> gens,
                                        Word relation) {
    if (genus < 2)
        throw std::invalid_argument("surface: genus must be at least 2");
    if (gens.size() != static_cast<std::size_t>(2 * genus))
        throw std::invalid_argument("surface: expected 2g generators");
    FuchsianSurface s;
    s.genus = genus;
    s.gens = std::move(gens);
    s.relation = reduce_word(std::move(relation));
    if (s.relation.empty())
        throw std::invalid_argument("surface: relation must be a nonempty word");
    s.report = validate_group(s.genus, s.gens, s.relation);
    return s;
}

namespace {

FNCoordinates fn_from_json(const json& j) {
    FNCoordinates fn;
    fn.genus = j.at("genus").get<int>();
    for (const auto& row : j.at("pants_graph")) {
        if (!row.is_array() || row.size() != 4)
            throw std::invalid_argument("surface file: pants_graph rows need 4 entries");
        fn.edges.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                            row[3].get<int>()});
    }
    for (const auto& v : j.at("lengths"))
        fn.lengths.push_back(parse_real(v.get<std::string>()));
    for (const auto& v : j.at("twists"))
        fn.twists.push_back(parse_real(v.get<std::string>()));
    return fn;
}

} // namespace

FuchsianSurface load_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("surface file: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("surface file: " + std::string(e.what()));
    }
    try {
        if (j.at("schema_version").get<int>() != 1)
            throw std::invalid_argument("surface file: unsupported schema version");
        std::string mode = j.at("mode").get<std::string>();
        if (mode == "fn") {
            return build_surface(fn_from_json(j));
        } else if (mode == "matrices") {
            int genus = j.at("genus").get<int>();
            std::vector<MobiusMap> gens;
            for (const auto& row : j.at("generators")) {
                if (!row.is_array() || row.size() != 4)
                    throw std::invalid_argument(
                        "surface file: generator rows need 4 entries");
                double a = parse_real(row[0].get<std::string>());
                double b = parse_real(row[1].get<std::string>());
                double c = parse_real(row[2].get<std::string>());
                double d = parse_real(row[3].get<std::string>());
                // The checked constructor renormalizes determinants within
                // 1e-6 of one and rejects anything further out.
                gens.push_back(MobiusMap(a, b, c, d));
            }
            if (gens.empty())
                throw std::invalid_argument("surface file: empty generator list");
            Word relation = j.at("relation").get<Word>();
            return surface_from_generators(genus, std::move(gens), std::move(relation));
        }
        throw std::invalid_argument("surface file: unknown mode '" + mode + "'");
    } catch (const json::exception& e) {
        throw std::invalid_argument("surface file: " + std::string(e.what()));
    }
}

void save_surface(const FuchsianSurface& s, const std::string& path) {
    json j;
    j["schema_version"] = 1;
    j["genus"] = s.genus;
    if (s.from_fn) {
        j["mode"] = "fn";
        json graph = json::array();
        for (const GluingEdge& e : s.fn.edges)
            graph.push_back({e.pants_a, e.slot_a, e.pants_b, e.slot_b});
        j["pants_graph"] = graph;
        json lens = json::array(), tws = json::array();
        for (double l : s.fn.lengths)
            lens.push_back(format_real(l));
        for (double t : s.fn.twists)
            tws.push_back(format_real(t));
        j["lengths"] = lens;
        j["twists"] = tws;
    } else {
        j["mode"] = "matrices";
        json gens = json::array();
        for (const MobiusMap& m : s.gens)
            gens.push_back({format_real(m.a), format_real(m.b), format_real(m.c),
                            format_real(m.d)});
        j["generators"] = gens;
        j["relation"] = s.relation;
    }
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("surface file: cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

FNCoordinates parse_fn_shorthand(const std::string& text) {
    FNCoordinates fn;
    bool saw_l = false, saw_t = false;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        if (part.empty())
            continue;
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("fn shorthand: expected key=value in '" + part + "'");
        std::string key = part.substr(0, eq);
        std::string val = part.substr(eq + 1);
        if (key == "g") {
            fn.genus = static_cast<int>(parse_real(val));
        } else if (key == "l" || key == "t") {
            std::vector<double> vals;
            std::stringstream vs(val);
            std::string item;
            while (std::getline(vs, item, ','))
                vals.push_back(parse_real(item));
            (key == "l" ? fn.lengths : fn.twists) = vals;
            (key == "l" ? saw_l : saw_t) = true;
        } else {
            throw std::invalid_argument("fn shorthand: unknown key '" + key + "'");
        }
    }
    if (fn.genus < 2 || !saw_l)
        throw std::invalid_argument("fn shorthand: need g=... and l=...");
    if (!saw_t)
        fn.twists.assign(fn.lengths.size(), 0.0);
    fn.edges = ring_pants_graph(fn.genus);
    validate_fn(fn);
    return fn;
}

FNCoordinates sample_fn(int genus, double length_cap, std::uint64_t seed) {
    if (genus < 2 || !(length_cap > 0.0))
        throw std::invalid_argument("sample_fn: need genus >= 2 and positive cap");
    FNCoordinates fn;
    fn.genus = genus;
    fn.edges = ring_pants_graph(genus);
    NamedRng len_rng = NamedRng::of(seed, "fn.lengths");
    NamedRng twist_rng = NamedRng::of(seed, "fn.twists");
    for (std::size_t k = 0; k < fn.edges.size(); ++k)
        fn.lengths.push_back(length_cap * (1.0 - len_rng.uniform()));
    for (std::size_t k = 0; k < fn.edges.size(); ++k)
        fn.twists.push_back(fn.lengths[k] * twist_rng.uniform());
    fn.approximate_wp = true;
    return fn;
}

} // namespace tanglefree
