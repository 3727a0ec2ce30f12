#pragma once

#include <cstdint>
#include <vector>

#include "pdwa/formula.hpp"

namespace pdwa {

struct CorpusItem {
    int id = 0;
    Fptr phi;
    int base = 2;
    bool prenex = false;  // prenex items form the growth-bound sub-corpus
};

struct CorpusSet {
    VarPool vars;
    std::vector<CorpusItem> items;
};

// Deterministic random formula corpus: at most 3 variables, at most 2
// quantifier alternations, |coefficients| <= 5, |constants| <= 8,
// divisors <= 4, bases drawn from {2,3}.
CorpusSet make_corpus(uint64_t seed, size_t count);

}  // namespace pdwa
