#pragma once

#include <map>
#include <string>
#include <vector>

#include "pdwa/formula.hpp"

namespace pdwa {

// Classification of an atom relative to the variable x being eliminated:
//   A: k*x < t      (x-coefficient positive in "term < c" form)
//   B: t < k*x      (x-coefficient negative)
//   C: d | t(x,...) (divisibility whose term mentions x)
//   Free: x does not occur
struct XClassifiedAtom {
    enum class Type { A, B, C, Free } type = Type::Free;
    Int k;            // positive coefficient of x (A and B)
    LinearTerm t_hom; // affine side opposite k*x (A and B)
    Int t_const;
    DivAtom c_atom;   // type C
};

// atom must be Cmp (strict, as produced by step1_rewrite, when x occurs) or Div
XClassifiedAtom classify_x_atom(const Formula& atom, int x);

struct QeStep {
    int var = -1;
    Int lcm;
    size_t b_count = 0;
    size_t disjuncts = 0;
    MetricsReport before, after;
};

struct QeTrace {
    std::vector<QeStep> steps;
};

// Connectives -> and <-> eliminated, negations pushed to the atoms, and every
// atom mentioning x rewritten to a strict inequation (or kept as divisibility).
// Negated equations become disjunctions of two strict inequations.
Fptr step1_rewrite(const Fptr& phi, int x);

// least common multiple of the divisors of x-divisibility atoms and the
// x-coefficients of type-B atoms; 1 if there are none
Int lcm_of(int x, const Fptr& phi_prime);

// type-A atoms replaced by true, type-B atoms by false, then simplified
Fptr psi_minus_inf(const Fptr& phi_prime, int x);

// substitute the affine term (t_hom + t_const) for k*x in one atom: the atom
// is multiplied by k and k'*(k*x) is replaced by k'*(t_hom + t_const)
Fptr substitute(const Fptr& atom, const LinearTerm& t_hom, const Int& t_const, const Int& k,
                int x);

// quantifier-free formula equivalent to "exists x. phi" (phi quantifier-free)
Fptr eliminate_exists(int x, const Fptr& phi, QeTrace* trace = nullptr);

// Eliminates every quantifier, innermost first; universal quantifiers via
// negation, existentials distributed over disjunctions and split past
// x-free conjuncts before the core elimination step.
Fptr eliminate_all(const Fptr& phi, VarPool& vars, QeTrace* trace = nullptr);

// direct arithmetic evaluation; throws on quantifiers or missing variables
bool eval_qf(const Fptr& phi, const std::map<int, Int>& assignment);

// evaluation with quantified variables ranging over [-range, range] only;
// a finite approximation used as a sanity oracle on tiny instances
bool eval_bruteforce(const Fptr& phi, const std::map<int, Int>& assignment, const Int& range);

// quantifier range that is safe for eval_bruteforce on formulas whose
// witnesses stay near the constants: twice (divisor/coefficient lcm bound +
// largest |constant| + 1)
Int bruteforce_range(const Fptr& phi);

struct BoundCheck {
    std::string name;
    Int measured;
    std::string bound_text;
    bool pass = false;
};

struct BoundsReport {
    std::vector<BoundCheck> checks;
    bool all_pass = true;
};

// Compares the measured term/divisor counts and coefficient/divisor/constant
// magnitudes of psi against the growth bounds implied by phi's metrics
// (n-based family always; T/D-based family additionally when phi is prenex).
BoundsReport check_bounds(const Fptr& phi, const Fptr& psi, const QeTrace& trace);

}  // namespace pdwa
