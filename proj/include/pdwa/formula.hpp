#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdwa/ints.hpp"

namespace pdwa {

// Linear term over integer variables, kept in normal form: no zero coefficients.
// Variables are identified by their index into a VarPool.
struct LinearTerm {
    std::map<int, Int> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    Int coeff(int var) const {
        auto it = coeffs.find(var);
        return it == coeffs.end() ? Int(0) : it->second;
    }
    void add(int var, const Int& k) {
        if (k == 0) return;
        auto it = coeffs.find(var);
        if (it == coeffs.end()) {
            coeffs.emplace(var, k);
        } else {
            it->second += k;
            if (it->second == 0) coeffs.erase(it);
        }
    }

    LinearTerm& operator+=(const LinearTerm& o) {
        for (auto& [v, k] : o.coeffs) add(v, k);
        return *this;
    }
    LinearTerm& operator-=(const LinearTerm& o) {
        for (auto& [v, k] : o.coeffs) add(v, -k);
        return *this;
    }
    friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
    friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
    friend LinearTerm operator*(const Int& k, const LinearTerm& t) {
        LinearTerm r;
        if (k == 0) return r;
        for (auto& [v, c] : t.coeffs) r.coeffs.emplace(v, k * c);
        return r;
    }
    friend bool operator==(const LinearTerm& a, const LinearTerm& b) { return a.coeffs == b.coeffs; }
    friend bool operator<(const LinearTerm& a, const LinearTerm& b) { return a.coeffs < b.coeffs; }

    // sum of positive coefficients
    Int pos_norm() const {
        Int s = 0;
        for (auto& [v, k] : coeffs)
            if (k > 0) s += k;
        return s;
    }
    // sum of absolute values of negative coefficients
    Int neg_norm() const {
        Int s = 0;
        for (auto& [v, k] : coeffs)
            if (k < 0) s -= k;
        return s;
    }
    // gcd of |coefficients|; 1 for the empty term
    Int gcd() const {
        Int g = 0;
        for (auto& [v, k] : coeffs) g = gcd_int(g, k);
        return g == 0 ? Int(1) : g;
    }
    std::vector<int> vars() const {
        std::vector<int> r;
        r.reserve(coeffs.size());
        for (auto& [v, k] : coeffs) r.push_back(v);
        return r;
    }
};

enum class Rel { Eq, Ne, Lt, Le, Gt, Ge };

const char* rel_text(Rel r);
Rel rel_negate(Rel r);
bool rel_holds(const Int& lhs, Rel rel, const Int& rhs);

// term rel constant, term homogeneous
struct CmpAtom {
    LinearTerm term;
    Rel rel = Rel::Eq;
    Int constant;

    friend bool operator==(const CmpAtom& a, const CmpAtom& b) {
        return a.rel == b.rel && a.constant == b.constant && a.term == b.term;
    }
};

// divisor | term + constant, divisor >= 2, term homogeneous
struct DivAtom {
    Int divisor;
    LinearTerm term;
    Int constant;

    friend bool operator==(const DivAtom& a, const DivAtom& b) {
        return a.divisor == b.divisor && a.constant == b.constant && a.term == b.term;
    }
};

enum class Kind {
    True,
    False,
    Cmp,
    Div,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,
    Forall,
};

struct Formula;
using Fptr = std::shared_ptr<const Formula>;

struct Formula {
    Kind kind;
    CmpAtom cmp;   // Kind::Cmp
    DivAtom div;   // Kind::Div
    Fptr a, b;     // children (unary ops use a)
    int var = -1;  // quantified variable

    bool is_atom() const {
        return kind == Kind::True || kind == Kind::False || kind == Kind::Cmp || kind == Kind::Div;
    }
    bool is_quant() const { return kind == Kind::Exists || kind == Kind::Forall; }
    bool is_literal() const {
        return is_atom() || (kind == Kind::Not && a->is_atom());
    }
};

Fptr mk_true();
Fptr mk_false();
Fptr mk_bool(bool v);
Fptr mk_cmp(CmpAtom atom);
Fptr mk_div(DivAtom atom);
Fptr mk_not(Fptr a);
Fptr mk_and(Fptr a, Fptr b);
Fptr mk_or(Fptr a, Fptr b);
Fptr mk_implies(Fptr a, Fptr b);
Fptr mk_iff(Fptr a, Fptr b);
Fptr mk_quant(Kind q, int var, Fptr body);
Fptr mk_and_all(const std::vector<Fptr>& fs);  // true for empty
Fptr mk_or_all(const std::vector<Fptr>& fs);   // false for empty

// Variable names in order of first occurrence; index is the track order used
// everywhere downstream.
struct VarPool {
    std::vector<std::string> names;
    std::map<std::string, int> index;

    int intern(const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        int id = (int)names.size();
        names.push_back(name);
        index.emplace(name, id);
        return id;
    }
    const std::string& name(int id) const { return names.at(id); }
    int size() const { return (int)names.size(); }
    // fresh variable derived from the given name (primes appended)
    int fresh(const std::string& base);
};

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int line, int column, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + msg),
          line(line),
          column(column) {}
};

struct Parsed {
    Fptr phi;
    VarPool vars;
};

// Parses the surface syntax:
//   formula := quant | iff
//   quant   := ("E" | "A") var ("," var)* "." formula
//   iff     := imp ("<->" imp)*
//   imp     := or ("->" or)*            (right associative)
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "!" unary | "(" formula ")" | atom
//   atom    := term rel term | INT "divides" term | "true" | "false"
//   rel     := "=" | "!=" | "<" | "<=" | ">" | ">="
//   term    := ["-"] addend (("+" | "-") addend)*
//   addend  := INT | var | INT "*" var
Parsed parse(const std::string& text);

// lhs rel rhs with both sides raw (hom term + constant); moves everything
// into "hom rel constant" form. Returns a Cmp formula, or True/False if the
// variables cancel.
Fptr normalize_cmp(const LinearTerm& lhs_hom, const Int& lhs_const, Rel rel,
                   const LinearTerm& rhs_hom, const Int& rhs_const);
// divisor | hom + constant. Returns Div, or True/False if hom is empty.
// Throws std::invalid_argument for divisor < 2.
Fptr normalize_div(const Int& divisor, const LinearTerm& hom, const Int& constant);

std::string term_text(const LinearTerm& t, const Int& constant, const VarPool& vars);
std::string formula_text(const Fptr& phi, const VarPool& vars);

// free variables, sorted by index
std::vector<int> free_vars(const Fptr& phi);
bool is_free_in(const Fptr& phi, int var);

// Renames bound variables so that each quantifier binds a distinct variable,
// all distinct from every free variable. Fresh names are added to the pool.
Fptr rename_apart(const Fptr& phi, VarPool& vars);

// substitute an integer constant for a variable
Fptr substitute_const(const Fptr& phi, int var, const Int& value);

// Boolean constant folding, absorption of true/false, double-negation removal,
// and deduplication of structurally identical siblings in &/| chains.
Fptr simplify_bool(const Fptr& phi);

bool formula_equal(const Fptr& a, const Fptr& b);

struct MetricsReport {
    Int length_linear;    // integer k written with |k| letters
    Int length_log;       // integer k written with ceil(log2(|k|+1)) letters
    int qn = 0;           // number of quantifiers
    int qa = 0;           // quantifier alternation depth
    int qbl = 0;          // quantifier block length
    size_t t_count = 0;   // distinct homogeneous comparison terms
    size_t d_count = 0;   // distinct (divisor, homogeneous term) pairs
    Int max_coef;         // max |coefficient| over all atoms, 0 if none
    Int max_div;          // max divisor, 0 if none
    Int max_const;        // max |constant| over all atoms, 0 if none
};

MetricsReport metrics(const Fptr& phi);
std::set<LinearTerm> t_set(const Fptr& phi);
std::set<std::pair<Int, LinearTerm>> d_set(const Fptr& phi);

bool is_quantifier_free(const Fptr& phi);
bool is_prenex(const Fptr& phi);

}  // namespace pdwa
