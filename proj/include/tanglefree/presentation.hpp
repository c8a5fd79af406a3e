#pragma once

#include "tanglefree/mobius.hpp"

#include <cstddef>
#include <vector>

namespace tanglefree {

// Group word: letter k > 0 is generator k, letter -k its inverse.
using Word = std::vector<int>;

Word reduce_word(Word w);
Word cyclic_reduce(Word w);
Word invert_word(const Word& w);
Word rotate_word(const Word& w, std::size_t k);
bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);

// Representative of the unoriented conjugacy class: the lexicographic
// minimum over all rotations of the cyclic reduction and of its inverse.
Word canonical_class(const Word& w);

// Allocation-free test for w == canonical_class(w) (nonempty, cyclically
// reduced, minimal among rotations of itself and of its inverse).
bool is_canonical_word(const Word& w);

// Replace every occurrence of `gen` (a positive index) by `expr` and reduce.
Word substitute(const Word& w, int gen, const Word& expr);

MobiusMap word_matrix(const Word& w, const std::vector<MobiusMap>& gens);

// Finitely generated subgroup of PSL(2,R) together with defining relations.
struct GeneratedGroup {
    std::vector<MobiusMap> gens; // generator k is gens[k-1]
    std::vector<Word> relations;
};

struct StandardGenerators {
    int genus = 0;
    // a1, b1, ..., ag, bg with defining relation [a1,b1]...[ag,bg].
    std::vector<MobiusMap> gens;
    // Input generator k rewritten as expressions[k-1] over the standard ones.
    std::vector<Word> expressions;
};

// Rewrites a presentation in which every generator occurs exactly twice
// across the relations (the shape produced by gluing pairs of pants) into
// the one-relator surface form. The matrix image of every rewriting step is
// verified against the original generators; `tol` bounds the allowed
// projective drift before the rewrite is declared inconsistent.
StandardGenerators standard_form(const GeneratedGroup& g, double tol = 1e-8);

} // namespace tanglefree
