#include "tanglefree/presentation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tanglefree {

Word reduce_word(Word w) {
    Word out;
    out.reserve(w.size());
    for (int letter : w) {
        if (letter == 0)
            throw std::invalid_argument("reduce_word: zero letter");
        if (!out.empty() && out.back() == -letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

Word cyclic_reduce(Word w) {
    w = reduce_word(std::move(w));
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
        ++lo;
        --hi;
    }
    return Word(w.begin() + lo, w.begin() + hi);
}

Word invert_word(const Word& w) {
    Word out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = -w[w.size() - 1 - i];
    return out;
}

Word rotate_word(const Word& w, std::size_t k) {
    if (w.empty())
        return w;
    k %= w.size();
    Word out(w.begin() + k, w.end());
    out.insert(out.end(), w.begin(), w.begin() + k);
    return out;
}

bool is_reduced(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == -w[i + 1])
            return false;
    return true;
}

bool is_cyclically_reduced(const Word& w) {
    if (!is_reduced(w))
        return false;
    return w.size() < 2 || w.front() != -w.back();
}

Word canonical_class(const Word& w) {
    Word r = cyclic_reduce(w);
    if (r.empty())
        return r;
    Word best = r;
    Word inv = invert_word(r);
    for (std::size_t k = 0; k < r.size(); ++k) {
        for (const Word* base : {&r, &inv}) {
            Word cand = rotate_word(*base, k);
            if (cand < best)
                best = std::move(cand);
        }
    }
    return best;
}

bool is_canonical_word(const Word& w) {
    if (w.empty() || !is_cyclically_reduced(w))
        return false;
    const std::size_t n = w.size();
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            int rot = w[(k + i) % n];
            if (rot != w[i]) {
                if (rot < w[i])
                    return false;
                break;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            int rot = -w[n - 1 - (k + i) % n];
            if (rot != w[i]) {
                if (rot < w[i])
                    return false;
                break;
            }
        }
    }
    return true;
}

Word substitute(const Word& w, int gen, const Word& expr) {
    if (gen <= 0)
        throw std::invalid_argument("substitute: generator index must be positive");
    Word out;
    out.reserve(w.size());
    Word inv = invert_word(expr);
    for (int letter : w) {
        if (letter == gen)
            out.insert(out.end(), expr.begin(), expr.end());
        else if (letter == -gen)
            out.insert(out.end(), inv.begin(), inv.end());
        else
            out.push_back(letter);
    }
    return reduce_word(std::move(out));
}

MobiusMap word_matrix(const Word& w, const std::vector<MobiusMap>& gens) {
    MobiusMap m;
    for (int letter : w) {
        std::size_t idx = static_cast<std::size_t>(letter > 0 ? letter : -letter);
        if (idx == 0 || idx > gens.size())
            throw std::invalid_argument("word_matrix: letter outside generator range");
        m = m * (letter > 0 ? gens[idx - 1] : gens[idx - 1].inverse());
    }
    return m;
}

namespace {

// Mutable rewriting state. Generator indices are stable for the whole run;
// handle moves append new generators at the end. `expr` rewrites each input
// generator over the currently alive ones.
struct Rewrite {
    std::vector<MobiusMap> mat; // 1-based via mat[idx - 1]
    std::vector<bool> alive;
    std::vector<Word> rels;
    std::vector<Word> expr;
    double tol = 1e-8;

    const MobiusMap& matrix(int idx) const { return mat[static_cast<std::size_t>(idx) - 1]; }

    MobiusMap eval(const Word& w) const { return word_matrix(w, mat); }

    void check(const Word& w, const MobiusMap& want, const char* where) const {
        if (proj_dist(eval(w), want) > tol)
            throw std::domain_error(std::string(where) +
                                    ": rewritten word drifted from its matrix");
    }
};

std::size_t count_gen(const Word& w, int gen) {
    std::size_t n = 0;
    for (int letter : w)
        if (letter == gen || letter == -gen)
            ++n;
    return n;
}

// Tietze elimination: repeatedly pick a generator with a single occurrence
// in some relation, solve that relation for it and substitute everywhere,
// until a single relation remains.
void eliminate(Rewrite& rw) {
    while (rw.rels.size() > 1) {
        int gen = 0;
        std::size_t rel_idx = 0;
        for (std::size_t g = 1; g <= rw.alive.size() && gen == 0; ++g) {
            if (!rw.alive[g - 1])
                continue;
            for (std::size_t r = 0; r < rw.rels.size(); ++r) {
                if (count_gen(rw.rels[r], static_cast<int>(g)) == 1) {
                    gen = static_cast<int>(g);
                    rel_idx = r;
                    break;
                }
            }
        }
        if (gen == 0)
            throw std::logic_error("standard_form: no eliminable generator left");

        Word rel = rw.rels[rel_idx];
        std::size_t pos = 0;
        while (rel[pos] != gen && rel[pos] != -gen)
            ++pos;
        Word rest = rotate_word(rel, pos);
        int head = rest.front();
        rest.erase(rest.begin());
        // head * rest = 1, so gen = rest^-1 when head is positive and
        // gen = rest when it is the inverse letter.
        Word def = head > 0 ? invert_word(rest) : rest;
        rw.check(def, rw.matrix(gen), "eliminate");

        rw.rels.erase(rw.rels.begin() + static_cast<std::ptrdiff_t>(rel_idx));
        for (Word& r : rw.rels) {
            r = cyclic_reduce(substitute(r, gen, def));
            if (r.empty())
                throw std::logic_error("standard_form: relation collapsed");
        }
        for (Word& e : rw.expr)
            e = substitute(e, gen, def);
        rw.alive[static_cast<std::size_t>(gen) - 1] = false;
    }
}

MobiusMap letter_matrix(const Rewrite& rw, int letter) {
    const MobiusMap& m = rw.matrix(letter > 0 ? letter : -letter);
    return letter > 0 ? m : m.inverse();
}

Word slice(const Word& w, std::size_t lo, std::size_t hi) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(lo),
                w.begin() + static_cast<std::ptrdiff_t>(hi));
}

// Turns the single quadratic relation into a product of commutator blocks.
// One pass finds letters x, y interleaved as x..y..x^-1..y^-1, introduces
// z1 = (CBA)^-1 xA and z2 = yBA, and rewrites the relation with the block
// [z1, z2] in front and the tail subwords reversed; each pass commits one
// handle and removes two of the old generators.
void collect_handles(Rewrite& rw, Word& rel, std::vector<bool>& committed) {
    auto is_committed = [&](int letter) {
        return committed[static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1];
    };

    for (;;) {
        bool open = false;
        for (int letter : rel)
            if (!is_committed(letter)) {
                open = true;
                break;
            }
        if (!open)
            break;

        // Find a rotation starting with an uncommitted letter x whose pair
        // straddles the pair of some y later in the word.
        std::size_t n = rel.size();
        std::size_t rot = n, ypos = 0, xbar = 0, ybar = 0;
        for (std::size_t i = 0; i < n && rot == n; ++i) {
            if (is_committed(rel[i]))
                continue;
            Word cand = rotate_word(rel, i);
            std::size_t p = 1;
            while (cand[p] != -cand[0])
                ++p;
            for (std::size_t k = 1; k < p; ++k) {
                if (is_committed(cand[k]))
                    continue;
                std::size_t q = 0;
                for (std::size_t t = p + 1; t < n; ++t)
                    if (cand[t] == -cand[k]) {
                        q = t;
                        break;
                    }
                if (q != 0) {
                    rot = i;
                    ypos = k;
                    xbar = p;
                    ybar = q;
                    rel = std::move(cand);
                    break;
                }
            }
        }
        if (rot == n)
            throw std::logic_error("standard_form: quadratic relation has no "
                                   "crossing pair left to collect");

        Word A = slice(rel, 1, ypos);
        Word B = slice(rel, ypos + 1, xbar);
        Word C = slice(rel, xbar + 1, ybar);
        Word D = slice(rel, ybar + 1, rel.size());
        int X = rel[0];
        int Y = rel[ypos];

        MobiusMap MA = rw.eval(A), MB = rw.eval(B), MC = rw.eval(C);
        // The handle generators are committed matrices that every later pass
        // builds on, so scrub the determinant drift their long product chains
        // picked up; at their small entry scale the computed det is reliable.
        MobiusMap z1 =
            ((MC * MB * MA).inverse() * letter_matrix(rw, X) * MA).unit_det();
        MobiusMap z2 = (letter_matrix(rw, Y) * MB * MA).unit_det();
        rw.mat.push_back(z1);
        rw.alive.push_back(true);
        committed.push_back(true);
        int n1 = static_cast<int>(rw.mat.size());
        rw.mat.push_back(z2);
        rw.alive.push_back(true);
        committed.push_back(true);
        int n2 = static_cast<int>(rw.mat.size());

        // x = CBA z1 A^-1 and y = z2 A^-1 B^-1, inverted when the letters
        // found were the inverse occurrences.
        Word invA = invert_word(A);
        Word def_x = C;
        def_x.insert(def_x.end(), B.begin(), B.end());
        def_x.insert(def_x.end(), A.begin(), A.end());
        def_x.push_back(n1);
        def_x.insert(def_x.end(), invA.begin(), invA.end());
        def_x = reduce_word(std::move(def_x));
        Word def_y = {n2};
        def_y.insert(def_y.end(), invA.begin(), invA.end());
        Word invB = invert_word(B);
        def_y.insert(def_y.end(), invB.begin(), invB.end());
        def_y = reduce_word(std::move(def_y));
        int gx = X > 0 ? X : -X;
        int gy = Y > 0 ? Y : -Y;
        if (X < 0)
            def_x = invert_word(def_x);
        if (Y < 0)
            def_y = invert_word(def_y);
        rw.check(def_x, rw.matrix(gx), "collect_handles");
        rw.check(def_y, rw.matrix(gy), "collect_handles");
        for (Word& e : rw.expr)
            e = substitute(substitute(e, gx, def_x), gy, def_y);
        rw.alive[static_cast<std::size_t>(gx) - 1] = false;
        rw.alive[static_cast<std::size_t>(gy) - 1] = false;

        Word next = {n1, n2, -n1, -n2};
        next.insert(next.end(), D.begin(), D.end());
        next.insert(next.end(), C.begin(), C.end());
        next.insert(next.end(), B.begin(), B.end());
        next.insert(next.end(), A.begin(), A.end());
        next = cyclic_reduce(std::move(next));
        for (std::size_t g = 1; g <= rw.alive.size(); ++g)
            if (rw.alive[g - 1] && count_gen(next, static_cast<int>(g)) != 2)
                throw std::logic_error("standard_form: handle move lost a generator");
        rel = std::move(next);
    }
}

} // namespace

StandardGenerators standard_form(const GeneratedGroup& g, double tol) {
    if (g.gens.empty() || g.relations.empty())
        throw std::invalid_argument("standard_form: empty presentation");

    Rewrite rw;
    rw.mat = g.gens;
    rw.alive.assign(g.gens.size(), true);
    rw.tol = tol;
    rw.expr.resize(g.gens.size());
    for (std::size_t k = 0; k < g.gens.size(); ++k)
        rw.expr[k] = {static_cast<int>(k + 1)};
    for (const Word& r : g.relations) {
        Word red = cyclic_reduce(r);
        if (red.empty())
            throw std::invalid_argument("standard_form: trivial relation");
        rw.rels.push_back(std::move(red));
    }
    for (std::size_t k = 1; k <= g.gens.size(); ++k) {
        std::size_t occ = 0;
        for (const Word& r : rw.rels)
            occ += count_gen(r, static_cast<int>(k));
        if (occ != 2)
            throw std::invalid_argument(
                "standard_form: each generator must occur exactly twice");
    }

    eliminate(rw);

    Word rel = rw.rels.front();
    if (proj_dist(rw.eval(rel), MobiusMap::identity()) > tol)
        throw std::domain_error("standard_form: surviving relation is not the identity");
    for (std::size_t k = 1; k <= rw.alive.size(); ++k) {
        if (!rw.alive[k - 1])
            continue;
        int plus = 0, minus = 0;
        for (int letter : rel) {
            if (letter == static_cast<int>(k)) ++plus;
            if (letter == -static_cast<int>(k)) ++minus;
        }
        if (plus != 1 || minus != 1)
            throw std::logic_error("standard_form: relation pairs a generator "
                                   "with itself instead of its inverse");
    }

    std::vector<bool> committed(rw.alive.size(), false);
    collect_handles(rw, rel, committed);

    // The relation is now a cyclic product of 4-letter commutator blocks;
    // find the rotation where the blocks line up.
    std::size_t n = rel.size();
    if (n % 4 != 0)
        throw std::logic_error("standard_form: collected relation length is not 4g");
    Word lined;
    for (std::size_t r = 0; r < n && lined.empty(); ++r) {
        Word cand = rotate_word(rel, r);
        bool ok = true;
        for (std::size_t b = 0; b + 3 < n && ok; b += 4)
            ok = cand[b] > 0 && cand[b + 1] > 0 && cand[b + 2] == -cand[b] &&
                 cand[b + 3] == -cand[b + 1];
        if (ok)
            lined = std::move(cand);
    }
    if (lined.empty())
        throw std::logic_error("standard_form: relation did not split into "
                               "commutator blocks");

    StandardGenerators out;
    out.genus = static_cast<int>(n / 4);
    out.gens.reserve(n / 2);
    std::vector<int> remap(rw.mat.size() + 1, 0);
    for (std::size_t b = 0; b < n; b += 4) {
        remap[static_cast<std::size_t>(lined[b])] = static_cast<int>(out.gens.size()) + 1;
        out.gens.push_back(rw.matrix(lined[b]));
        remap[static_cast<std::size_t>(lined[b + 1])] =
            static_cast<int>(out.gens.size()) + 1;
        out.gens.push_back(rw.matrix(lined[b + 1]));
    }

    out.expressions.resize(g.gens.size());
    for (std::size_t k = 0; k < g.gens.size(); ++k) {
        Word e = rw.expr[k];
        for (int& letter : e) {
            int idx = remap[static_cast<std::size_t>(letter > 0 ? letter : -letter)];
            if (idx == 0)
                throw std::logic_error("standard_form: expression references a "
                                       "retired generator");
            letter = letter > 0 ? idx : -idx;
        }
        out.expressions[k] = e;
        if (proj_dist(word_matrix(e, out.gens), g.gens[k]) > tol)
            throw std::domain_error("standard_form: final expression drifted from "
                                    "its generator");
    }

    MobiusMap relcheck;
    for (std::size_t i = 0; i + 1 < out.gens.size(); i += 2) {
        const MobiusMap &a = out.gens[i], &b = out.gens[i + 1];
        relcheck = relcheck * a * b * a.inverse() * b.inverse();
    }
    if (proj_dist(relcheck, MobiusMap::identity()) > tol)
        throw std::domain_error("standard_form: commutator relation failed to close");
    return out;
}

} // namespace tanglefree
