#pragma once

#include <vector>

#include "pdwa/automaton.hpp"
#include "pdwa/formula.hpp"
#include "pdwa/ints.hpp"

namespace pdwa {

// Per-letter weights of a linear form whose variable ids are track indices.
// value[l] is the form applied to the digits of letter l; sign_value[l]
// applies it to the sign vector of l (each digit mapped to 0 or -1).
struct TrackForm {
    int arity = 0;
    int base = 2;
    std::vector<Int> coeffs;
    std::vector<Int> value;
    std::vector<Int> sign_value;
};

TrackForm make_track_form(const LinearTerm& t, int arity, int base);

// state reached from the initial state on one letter
Int eta_init(const TrackForm& f, size_t letter);
// state update on a subsequent letter
Int eta_step(const TrackForm& f, const Int& q, size_t letter);

struct Bounds {
    Int small;  // below every value the automaton must distinguish
    Int large;  // above every value the automaton must distinguish
};

// tightest valid clamp range for the comparison's tracked value
Bounds tightest_bounds(const CmpAtom& atom);

// Clamped value-tracking automaton: one state per value in [small, large]
// plus the initial state. Requires small < min(constant, -pos_norm) and
// large > max(constant, neg_norm).
Dwa build_bounded(const CmpAtom& atom, int arity, int base, const Int& small, const Int& large);

struct ReducedCmp {
    bool is_constant = false;
    bool truth = false;
    CmpAtom atom;
};

// divide out the coefficient gcd, tightening the constant
ReducedCmp gcd_reduce(const CmpAtom& atom);

// Interval endpoints d_1 > d_2 > ... > d_l = neg_norm for a strict "greater
// than" atom with nonnegative constant and coprime coefficients: [d_i, d_{i-1})
// are exactly the mergeable runs of high states, computed greedily from the
// top. d_0 is an implicit +infinity.
std::vector<Int> merge_sequence(const CmpAtom& atom, int arity, int base);

// minimal automaton for a strict inequation, built directly from the merge
// intervals (no product or minimization pass)
Dwa build_ineq_optimal(const CmpAtom& atom, int arity, int base);

// minimal-size direct automaton for an equation, built from the values that
// can still reach the target constant
Dwa build_eq_optimal(const CmpAtom& atom, int arity, int base);

// Residue-tracking automaton for a divisibility constraint, one state per
// residue plus the initial state. With filter set, only residues generated
// by the coefficients are kept.
Dwa build_div(const DivAtom& atom, int arity, int base, bool filter);

Dwa build_true(int arity, int base);
Dwa build_false(int arity, int base);

// dispatch on an atomic formula (True/False/Cmp/Div); variable ids in the
// atom are track indices
Dwa build_atom(const Formula& atom, int arity, int base);

}  // namespace pdwa
