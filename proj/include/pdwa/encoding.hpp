#pragma once

#include <string>
#include <vector>

#include "pdwa/ints.hpp"

namespace pdwa {

// Word over the alphabet of r-tuples of base-rho digits, most significant
// letter first. Arity-0 words are sequences of the unit letter, so the length
// is stored explicitly.
struct TupleWord {
    int arity = 0;
    int base = 2;
    size_t len = 0;
    std::vector<int> digits;  // letter-major, len * arity entries

    TupleWord() = default;
    TupleWord(int arity, int base) : arity(arity), base(base) {}

    size_t length() const { return len; }
    bool empty() const { return len == 0; }
    int digit(size_t letter, int track) const { return digits[letter * arity + track]; }

    void push_letter(const std::vector<int>& letter);
};

// per-track base-rho value of the whole word; zero tuple for the empty word
std::vector<Int> decode_nat(const TupleWord& w);

// per-track rho's-complement value; the first letter is the sign letter
std::vector<Int> decode_int(const TupleWord& w);

// shortest word whose first letter is in {0, rho-1}^r decoding to z;
// the single unit letter for arity 0
TupleWord encode_int(const std::vector<Int>& z, int base);

// 0 for digit 0, -1 otherwise, per track
std::vector<int> sign_vector(const std::vector<int>& letter);

// canonicalizes the sign letter (nonzero digit -> rho-1) and prepends k
// copies of the per-track repeat letter
TupleWord sign_extend(const TupleWord& w, size_t k);

// digits joined by ',' within a letter, letters joined by ';'
std::string word_text(const TupleWord& w);
TupleWord parse_word(const std::string& text, int base);

}  // namespace pdwa
