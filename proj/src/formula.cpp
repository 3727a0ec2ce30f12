#include "pdwa/formula.hpp"

#include <algorithm>

namespace pdwa {

const char* rel_text(Rel r) {
    switch (r) {
        case Rel::Eq: return "=";
        case Rel::Ne: return "!=";
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Gt: return ">";
        case Rel::Ge: return ">=";
    }
    return "?";
}

Rel rel_negate(Rel r) {
    switch (r) {
        case Rel::Eq: return Rel::Ne;
        case Rel::Ne: return Rel::Eq;
        case Rel::Lt: return Rel::Ge;
        case Rel::Le: return Rel::Gt;
        case Rel::Gt: return Rel::Le;
        case Rel::Ge: return Rel::Lt;
    }
    return r;
}

bool rel_holds(const Int& lhs, Rel rel, const Int& rhs) {
    switch (rel) {
        case Rel::Eq: return lhs == rhs;
        case Rel::Ne: return lhs != rhs;
        case Rel::Lt: return lhs < rhs;
        case Rel::Le: return lhs <= rhs;
        case Rel::Gt: return lhs > rhs;
        case Rel::Ge: return lhs >= rhs;
    }
    return false;
}

static Fptr mk(Kind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

Fptr mk_true() {
    static Fptr t = mk(Kind::True);
    return t;
}
Fptr mk_false() {
    static Fptr f = mk(Kind::False);
    return f;
}
Fptr mk_bool(bool v) { return v ? mk_true() : mk_false(); }

Fptr mk_cmp(CmpAtom atom) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Cmp;
    f->cmp = std::move(atom);
    return f;
}

Fptr mk_div(DivAtom atom) {
    if (atom.divisor < 2) throw std::invalid_argument("divisor must be at least 2");
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Div;
    f->div = std::move(atom);
    return f;
}

Fptr mk_not(Fptr a) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Not;
    f->a = std::move(a);
    return f;
}

static Fptr mk_bin(Kind k, Fptr a, Fptr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

Fptr mk_and(Fptr a, Fptr b) { return mk_bin(Kind::And, std::move(a), std::move(b)); }
Fptr mk_or(Fptr a, Fptr b) { return mk_bin(Kind::Or, std::move(a), std::move(b)); }
Fptr mk_implies(Fptr a, Fptr b) { return mk_bin(Kind::Implies, std::move(a), std::move(b)); }
Fptr mk_iff(Fptr a, Fptr b) { return mk_bin(Kind::Iff, std::move(a), std::move(b)); }

Fptr mk_quant(Kind q, int var, Fptr body) {
    if (q != Kind::Exists && q != Kind::Forall) throw std::invalid_argument("not a quantifier");
    auto f = std::make_shared<Formula>();
    f->kind = q;
    f->var = var;
    f->a = std::move(body);
    return f;
}

Fptr mk_and_all(const std::vector<Fptr>& fs) {
    if (fs.empty()) return mk_true();
    Fptr r = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) r = mk_and(r, fs[i]);
    return r;
}

Fptr mk_or_all(const std::vector<Fptr>& fs) {
    if (fs.empty()) return mk_false();
    Fptr r = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) r = mk_or(r, fs[i]);
    return r;
}

int VarPool::fresh(const std::string& base) {
    std::string name = base;
    do {
        name += '\'';
    } while (index.count(name));
    return intern(name);
}

Fptr normalize_cmp(const LinearTerm& lhs_hom, const Int& lhs_const, Rel rel,
                   const LinearTerm& rhs_hom, const Int& rhs_const) {
    CmpAtom atom;
    atom.term = lhs_hom - rhs_hom;
    atom.rel = rel;
    atom.constant = rhs_const - lhs_const;
    if (atom.term.is_zero()) {
        const Int& c = atom.constant;
        switch (rel) {
            case Rel::Eq: return mk_bool(c == 0);
            case Rel::Ne: return mk_bool(c != 0);
            case Rel::Lt: return mk_bool(0 < c);
            case Rel::Le: return mk_bool(0 <= c);
            case Rel::Gt: return mk_bool(0 > c);
            case Rel::Ge: return mk_bool(0 >= c);
        }
    }
    return mk_cmp(std::move(atom));
}

Fptr normalize_div(const Int& divisor, const LinearTerm& hom, const Int& constant) {
    if (divisor < 2) throw std::invalid_argument("divisor must be at least 2");
    if (hom.is_zero()) return mk_bool(mod_floor(constant, divisor) == 0);
    DivAtom atom;
    atom.divisor = divisor;
    atom.term = hom;
    atom.constant = constant;
    return mk_div(std::move(atom));
}

std::string term_text(const LinearTerm& t, const Int& constant, const VarPool& vars) {
    std::string out;
    bool first = true;
    for (auto& [v, k] : t.coeffs) {
        Int a = abs_int(k);
        if (first) {
            if (k < 0) out += "-";
            first = false;
        } else {
            out += k < 0 ? " - " : " + ";
        }
        if (a != 1) out += a.get_str() + "*";
        out += vars.name(v);
    }
    if (first) {
        out = constant.get_str();
    } else if (constant != 0) {
        out += constant < 0 ? " - " : " + ";
        out += abs_int(constant).get_str();
    }
    return out;
}

// precedence levels: iff=1, implies=2, or=3, and=4, unary=5
static void print_rec(const Fptr& phi, const VarPool& vars, int parent_level, std::string& out) {
    auto wrap = [&](int level, auto&& body) {
        bool paren = level < parent_level;
        if (paren) out += "(";
        body(level);
        if (paren) out += ")";
    };
    switch (phi->kind) {
        case Kind::True: out += "true"; return;
        case Kind::False: out += "false"; return;
        case Kind::Cmp:
            out += term_text(phi->cmp.term, 0, vars);
            out += " ";
            out += rel_text(phi->cmp.rel);
            out += " ";
            out += phi->cmp.constant.get_str();
            return;
        case Kind::Div:
            out += phi->div.divisor.get_str();
            out += " divides ";
            out += term_text(phi->div.term, phi->div.constant, vars);
            return;
        case Kind::Not:
            out += "!";
            print_rec(phi->a, vars, 5, out);
            return;
        case Kind::And:
            wrap(4, [&](int lv) {
                print_rec(phi->a, vars, lv, out);
                out += " & ";
                print_rec(phi->b, vars, lv, out);
            });
            return;
        case Kind::Or:
            wrap(3, [&](int lv) {
                print_rec(phi->a, vars, lv, out);
                out += " | ";
                print_rec(phi->b, vars, lv, out);
            });
            return;
        case Kind::Implies:
            wrap(2, [&](int lv) {
                print_rec(phi->a, vars, lv + 1, out);
                out += " -> ";
                print_rec(phi->b, vars, lv, out);
            });
            return;
        case Kind::Iff:
            wrap(1, [&](int lv) {
                print_rec(phi->a, vars, lv, out);
                out += " <-> ";
                print_rec(phi->b, vars, lv + 1, out);
            });
            return;
        case Kind::Exists:
        case Kind::Forall: {
            // quantifiers extend to the end of the formula, so any enclosing
            // context needs parentheses
            bool paren = parent_level > 0;
            if (paren) out += "(";
            out += phi->kind == Kind::Exists ? "E " : "A ";
            out += vars.name(phi->var);
            out += ". ";
            print_rec(phi->a, vars, 0, out);
            if (paren) out += ")";
            return;
        }
    }
}

std::string formula_text(const Fptr& phi, const VarPool& vars) {
    std::string out;
    print_rec(phi, vars, 0, out);
    return out;
}

static void free_vars_rec(const Fptr& phi, std::set<int>& bound, std::set<int>& out) {
    switch (phi->kind) {
        case Kind::True:
        case Kind::False: return;
        case Kind::Cmp:
            for (auto& [v, k] : phi->cmp.term.coeffs)
                if (!bound.count(v)) out.insert(v);
            return;
        case Kind::Div:
            for (auto& [v, k] : phi->div.term.coeffs)
                if (!bound.count(v)) out.insert(v);
            return;
        case Kind::Not: free_vars_rec(phi->a, bound, out); return;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff:
            free_vars_rec(phi->a, bound, out);
            free_vars_rec(phi->b, bound, out);
            return;
        case Kind::Exists:
        case Kind::Forall: {
            bool fresh = bound.insert(phi->var).second;
            free_vars_rec(phi->a, bound, out);
            if (fresh) bound.erase(phi->var);
            return;
        }
    }
}

std::vector<int> free_vars(const Fptr& phi) {
    std::set<int> bound, out;
    free_vars_rec(phi, bound, out);
    return std::vector<int>(out.begin(), out.end());
}

bool is_free_in(const Fptr& phi, int var) {
    auto fv = free_vars(phi);
    return std::binary_search(fv.begin(), fv.end(), var);
}

static LinearTerm rename_term(const LinearTerm& t, const std::map<int, int>& sub) {
    LinearTerm r;
    for (auto& [v, k] : t.coeffs) {
        auto it = sub.find(v);
        r.add(it == sub.end() ? v : it->second, k);
    }
    return r;
}

static Fptr rename_rec(const Fptr& phi, VarPool& vars, std::map<int, int>& sub,
                       std::set<int>& used) {
    switch (phi->kind) {
        case Kind::True:
        case Kind::False: return phi;
        case Kind::Cmp: {
            CmpAtom atom = phi->cmp;
            atom.term = rename_term(atom.term, sub);
            return mk_cmp(std::move(atom));
        }
        case Kind::Div: {
            DivAtom atom = phi->div;
            atom.term = rename_term(atom.term, sub);
            return mk_div(std::move(atom));
        }
        case Kind::Not: return mk_not(rename_rec(phi->a, vars, sub, used));
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: {
            Fptr a = rename_rec(phi->a, vars, sub, used);
            Fptr b = rename_rec(phi->b, vars, sub, used);
            auto f = std::make_shared<Formula>();
            f->kind = phi->kind;
            f->a = std::move(a);
            f->b = std::move(b);
            return f;
        }
        case Kind::Exists:
        case Kind::Forall: {
            int v = phi->var;
            int v2 = used.count(v) ? vars.fresh(vars.name(v)) : v;
            used.insert(v2);
            auto saved = sub.find(v) == sub.end() ? std::pair<bool, int>{false, 0}
                                                  : std::pair<bool, int>{true, sub[v]};
            if (v2 != v)
                sub[v] = v2;
            else
                sub.erase(v);
            Fptr body = rename_rec(phi->a, vars, sub, used);
            if (saved.first)
                sub[v] = saved.second;
            else
                sub.erase(v);
            return mk_quant(phi->kind, v2, std::move(body));
        }
    }
    return phi;
}

Fptr rename_apart(const Fptr& phi, VarPool& vars) {
    std::map<int, int> sub;
    std::set<int> used;
    for (int v : free_vars(phi)) used.insert(v);
    return rename_rec(phi, vars, sub, used);
}

Fptr substitute_const(const Fptr& phi, int var, const Int& value) {
    switch (phi->kind) {
        case Kind::True:
        case Kind::False: return phi;
        case Kind::Cmp: {
            Int k = phi->cmp.term.coeff(var);
            if (k == 0) return phi;
            LinearTerm hom = phi->cmp.term;
            hom.add(var, -k);
            return normalize_cmp(hom, k * value, phi->cmp.rel, {}, phi->cmp.constant);
        }
        case Kind::Div: {
            Int k = phi->div.term.coeff(var);
            if (k == 0) return phi;
            LinearTerm hom = phi->div.term;
            hom.add(var, -k);
            return normalize_div(phi->div.divisor, hom, phi->div.constant + k * value);
        }
        case Kind::Not: return mk_not(substitute_const(phi->a, var, value));
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: {
            auto f = std::make_shared<Formula>();
            f->kind = phi->kind;
            f->a = substitute_const(phi->a, var, value);
            f->b = substitute_const(phi->b, var, value);
            return f;
        }
        case Kind::Exists:
        case Kind::Forall:
            if (phi->var == var) return phi;
            return mk_quant(phi->kind, phi->var, substitute_const(phi->a, var, value));
    }
    return phi;
}

bool formula_equal(const Fptr& a, const Fptr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::True:
        case Kind::False: return true;
        case Kind::Cmp: return a->cmp == b->cmp;
        case Kind::Div: return a->div == b->div;
        case Kind::Not: return formula_equal(a->a, b->a);
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: return formula_equal(a->a, b->a) && formula_equal(a->b, b->b);
        case Kind::Exists:
        case Kind::Forall: return a->var == b->var && formula_equal(a->a, b->a);
    }
    return false;
}

static void collect_chain(const Fptr& phi, Kind k, std::vector<Fptr>& out) {
    if (phi->kind == k) {
        collect_chain(phi->a, k, out);
        collect_chain(phi->b, k, out);
    } else {
        out.push_back(phi);
    }
}

Fptr simplify_bool(const Fptr& phi) {
    switch (phi->kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Cmp:
        case Kind::Div: return phi;
        case Kind::Not: {
            Fptr a = simplify_bool(phi->a);
            if (a->kind == Kind::True) return mk_false();
            if (a->kind == Kind::False) return mk_true();
            if (a->kind == Kind::Not) return a->a;
            return mk_not(a);
        }
        case Kind::And:
        case Kind::Or: {
            bool conj = phi->kind == Kind::And;
            std::vector<Fptr> parts;
            collect_chain(phi, phi->kind, parts);
            std::vector<Fptr> kept;
            for (auto& p : parts) {
                Fptr s = simplify_bool(p);
                if (s->kind == (conj ? Kind::True : Kind::False)) continue;
                if (s->kind == (conj ? Kind::False : Kind::True)) return mk_bool(!conj);
                std::vector<Fptr> sub;
                collect_chain(s, phi->kind, sub);
                for (auto& q : sub) {
                    bool dup = false;
                    for (auto& seen : kept)
                        if (formula_equal(seen, q)) {
                            dup = true;
                            break;
                        }
                    if (!dup) kept.push_back(q);
                }
            }
            if (kept.empty()) return mk_bool(conj);
            return conj ? mk_and_all(kept) : mk_or_all(kept);
        }
        case Kind::Implies: {
            Fptr a = simplify_bool(phi->a);
            Fptr b = simplify_bool(phi->b);
            if (a->kind == Kind::False || b->kind == Kind::True) return mk_true();
            if (a->kind == Kind::True) return b;
            if (b->kind == Kind::False) return simplify_bool(mk_not(a));
            return mk_implies(a, b);
        }
        case Kind::Iff: {
            Fptr a = simplify_bool(phi->a);
            Fptr b = simplify_bool(phi->b);
            if (a->kind == Kind::True) return b;
            if (b->kind == Kind::True) return a;
            if (a->kind == Kind::False) return simplify_bool(mk_not(b));
            if (b->kind == Kind::False) return simplify_bool(mk_not(a));
            return mk_iff(a, b);
        }
        case Kind::Exists:
        case Kind::Forall: {
            Fptr body = simplify_bool(phi->a);
            if (body->is_atom() && !is_free_in(body, phi->var)) return body;
            if (body->kind == Kind::True || body->kind == Kind::False) return body;
            return mk_quant(phi->kind, phi->var, body);
        }
    }
    return phi;
}

bool is_quantifier_free(const Fptr& phi) {
    switch (phi->kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Cmp:
        case Kind::Div: return true;
        case Kind::Not: return is_quantifier_free(phi->a);
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff:
            return is_quantifier_free(phi->a) && is_quantifier_free(phi->b);
        case Kind::Exists:
        case Kind::Forall: return false;
    }
    return true;
}

bool is_prenex(const Fptr& phi) {
    Fptr p = phi;
    while (p->is_quant()) p = p->a;
    return is_quantifier_free(p);
}

}  // namespace pdwa
