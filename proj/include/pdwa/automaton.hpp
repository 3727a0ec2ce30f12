#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdwa/encoding.hpp"

namespace pdwa {

size_t letter_count(int arity, int base);
size_t letter_index(const std::vector<int>& digits, int base);
std::vector<int> letter_digits(size_t index, int arity, int base);
// digit of one track without materializing the tuple
int letter_digit(size_t index, int track, int arity, int base);

enum class BoolOp { And, Or, Xor, Implies, Iff };
bool apply_op(BoolOp op, bool a, bool b);

// Deterministic word automaton over r-tuples of base-rho digits. The
// transition table is total. Automata that represent integer sets keep a
// dedicated initial state: non-accepting and without incoming transitions,
// so the empty word is structurally rejected and complementation stays a
// flip of the accepting set.
struct Dwa {
    int arity = 0;
    int base = 2;
    int initial = 0;
    std::vector<char> accepting;          // per state
    std::vector<std::vector<int>> next;   // [state][letter]

    size_t state_count() const { return next.size(); }
    size_t letters() const { return letter_count(arity, base); }
    int step(int q, size_t letter) const { return next[q][letter]; }
};

struct Nfa {
    int arity = 0;
    int base = 2;
    std::vector<int> initials;
    std::vector<char> accepting;
    std::vector<std::vector<std::vector<int>>> next;  // [state][letter] -> sorted targets

    size_t state_count() const { return next.size(); }
    size_t letters() const { return letter_count(arity, base); }
};

bool initial_has_no_incoming(const Dwa& a);
// structural represents_set invariant: dedicated non-accepting initial
void assert_represents_set(const Dwa& a);

bool membership(const Dwa& a, const TupleWord& w);

// language = op(L(a), L(b)) on nonempty words; the initial state of the
// result is forced non-accepting so the empty word stays rejected
Dwa product(const Dwa& a, const Dwa& b, BoolOp op);

Dwa complement_set(const Dwa& a);

// insert an ignored track at the given position
Dwa cylindrify(const Dwa& a, int position);

// drop a track, with sign-saturation: a fresh start state additionally feeds
// in the states reachable by reading the (lifted) canonical repeat letter of
// the first letter one or more times, so tuples whose dropped component needs
// a longer encoding than the remaining ones are kept
Nfa project_exists(const Dwa& a, int track);

Dwa determinize(const Nfa& n);

// reachable states only, BFS numbering
Dwa trim(const Dwa& a);

// Hopcroft partition refinement after trimming. If the input has a dedicated
// initial (no incoming transitions), the output keeps one too, so the
// represents_set convention survives minimization.
Dwa minimize(const Dwa& a);

bool is_empty_nonlambda(const Dwa& a);
// shortest accepted word of length >= 1; canonical sign letters preferred,
// then lexicographically smallest
std::optional<TupleWord> find_witness(const Dwa& a);

bool equivalent(const Dwa& a, const Dwa& b);

std::string to_dot(const Dwa& a);
std::string to_json_text(const Dwa& a);
Dwa from_json_text(const std::string& text);

}  // namespace pdwa
