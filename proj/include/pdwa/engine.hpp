#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdwa/automaton.hpp"
#include "pdwa/formula.hpp"

namespace pdwa {

enum class Backend { Automata, QeThenAutomata };

struct CompileOptions {
    int base = 2;
    bool minimize_each_step = true;
    Backend backend = Backend::Automata;
    std::vector<int> variable_order;  // track order; empty = free variables in pool order
    long bound_exponent_cap_bits = 1'000'000;  // cap for materializing size bounds
};

struct LedgerEntry {
    std::string step;   // rendered subformula
    size_t before = 0;  // states entering minimization
    size_t after = 0;   // states after (== before when minimization is skipped)
};

struct SizeLedger {
    std::vector<LedgerEntry> entries;
    size_t final_size = 0;
    // 2^(n^((qbl+1)^(qa+4))), materialized only under the exponent cap
    bool main_bound_materialized = false;
    Int main_bound;
    bool main_bound_pass = true;
    // (2+2*l)^|T| * l'^|D| with l = 1+max(norms, |constants|), l' = 1+max divisor;
    // quantifier-free inputs only
    bool qf_bound_present = false;
    Int qf_bound;
    bool qf_bound_pass = true;
};

// Compiles phi to a deterministic automaton representing its solution set over
// the tracks in opts.variable_order. Bound variables are renamed apart first;
// the QeThenAutomata backend eliminates all quantifiers before compiling.
Dwa compile(const Fptr& phi, VarPool& vars, const CompileOptions& opts,
            SizeLedger* ledger = nullptr);

// truth value of a sentence (no free variables)
bool decide(const Fptr& phi, VarPool& vars, const CompileOptions& opts);

// a satisfying assignment of the free variables, or nullopt when unsatisfiable
std::optional<std::map<int, Int>> solve(const Fptr& phi, VarPool& vars,
                                        const CompileOptions& opts);

struct CrosscheckReport {
    std::string formula;
    size_t automata_size = 0;
    size_t qe_automata_size = 0;
    bool languages_equal = false;
    size_t samples_checked = 0;
    size_t sample_mismatches = 0;
    bool pass = false;
};

// Compiles via both backends and checks language equality; for at most two
// free variables additionally compares every assignment in [-16,16]^r against
// the evaluator on the eliminated formula. inject_fault flips one accepting
// bit of the second automaton first, as a negative control.
CrosscheckReport crosscheck(const Fptr& phi, VarPool& vars, const CompileOptions& opts,
                            bool inject_fault = false);

SizeLedger size_report(const Fptr& phi, VarPool& vars, const CompileOptions& opts);

// multiplication table {(a,b,c) : 0 <= a,b < base^m, c = a*b}, minimized;
// throws when base^(4m) value-tracking states exceed the enumeration cap
Dwa build_mult(int m, int base);

}  // namespace pdwa
