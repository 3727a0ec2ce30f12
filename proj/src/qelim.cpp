#include "pdwa/qelim.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace pdwa {

XClassifiedAtom classify_x_atom(const Formula& atom, int x) {
    XClassifiedAtom r;
    if (atom.kind == Kind::Div) {
        if (atom.div.term.coeff(x) == 0) return r;
        r.type = XClassifiedAtom::Type::C;
        r.c_atom = atom.div;
        return r;
    }
    if (atom.kind == Kind::True || atom.kind == Kind::False) return r;
    if (atom.kind != Kind::Cmp) throw std::logic_error("classify_x_atom: not an atom");
    Int kx = atom.cmp.term.coeff(x);
    if (kx == 0) return r;
    if (atom.cmp.rel != Rel::Lt)
        throw std::logic_error("classify_x_atom: atom mentioning the variable must be strict <");
    LinearTerm rest = atom.cmp.term;
    rest.add(x, -kx);
    if (kx > 0) {
        // kx*x + rest < c  ==  kx*x < (-rest) + c
        r.type = XClassifiedAtom::Type::A;
        r.k = kx;
        r.t_hom = Int(-1) * rest;
        r.t_const = atom.cmp.constant;
    } else {
        // kx*x + rest < c  ==  rest - c < (-kx)*x
        r.type = XClassifiedAtom::Type::B;
        r.k = -kx;
        r.t_hom = rest;
        r.t_const = -atom.cmp.constant;
    }
    return r;
}

namespace {

// negation-normal rewrite; positive = current polarity
Fptr step1_rec(const Fptr& f, int x, bool positive) {
    switch (f->kind) {
        case Kind::True: return mk_bool(positive);
        case Kind::False: return mk_bool(!positive);
        case Kind::Cmp: {
            const CmpAtom& a = f->cmp;
            Rel rel = positive ? a.rel : rel_negate(a.rel);
            if (a.term.coeff(x) == 0) return mk_cmp({a.term, rel, a.constant});
            const LinearTerm& t = a.term;
            LinearTerm nt = Int(-1) * t;
            const Int& c = a.constant;
            switch (rel) {
                case Rel::Lt: return mk_cmp({t, Rel::Lt, c});
                case Rel::Le: return mk_cmp({t, Rel::Lt, c + 1});
                case Rel::Gt: return mk_cmp({nt, Rel::Lt, -c});
                case Rel::Ge: return mk_cmp({nt, Rel::Lt, -c + 1});
                case Rel::Eq:
                    return mk_and(mk_cmp({t, Rel::Lt, c + 1}), mk_cmp({nt, Rel::Lt, -c + 1}));
                case Rel::Ne:
                    return mk_or(mk_cmp({t, Rel::Lt, c}), mk_cmp({nt, Rel::Lt, -c}));
            }
            throw std::logic_error("step1_rec: bad relation");
        }
        case Kind::Div:
            return positive ? f : mk_not(f);
        case Kind::Not: return step1_rec(f->a, x, !positive);
        case Kind::And:
            return positive ? mk_and(step1_rec(f->a, x, true), step1_rec(f->b, x, true))
                            : mk_or(step1_rec(f->a, x, false), step1_rec(f->b, x, false));
        case Kind::Or:
            return positive ? mk_or(step1_rec(f->a, x, true), step1_rec(f->b, x, true))
                            : mk_and(step1_rec(f->a, x, false), step1_rec(f->b, x, false));
        case Kind::Implies:
            return positive ? mk_or(step1_rec(f->a, x, false), step1_rec(f->b, x, true))
                            : mk_and(step1_rec(f->a, x, true), step1_rec(f->b, x, false));
        case Kind::Iff:
            return positive
                       ? mk_and(mk_or(step1_rec(f->a, x, false), step1_rec(f->b, x, true)),
                                mk_or(step1_rec(f->b, x, false), step1_rec(f->a, x, true)))
                       : mk_or(mk_and(step1_rec(f->a, x, true), step1_rec(f->b, x, false)),
                               mk_and(step1_rec(f->b, x, true), step1_rec(f->a, x, false)));
        case Kind::Exists:
        case Kind::Forall:
            throw std::invalid_argument("step1_rewrite: formula must be quantifier-free");
    }
    throw std::logic_error("step1_rec: bad kind");
}

void walk_atoms(const Fptr& f, const std::function<void(const Formula&)>& visit);

}  // namespace

Fptr step1_rewrite(const Fptr& phi, int x) { return simplify_bool(step1_rec(phi, x, true)); }

namespace {

void walk_atoms(const Fptr& f, const std::function<void(const Formula&)>& visit) {
    switch (f->kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Cmp:
        case Kind::Div: visit(*f); return;
        case Kind::Not: walk_atoms(f->a, visit); return;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff:
            walk_atoms(f->a, visit);
            walk_atoms(f->b, visit);
            return;
        case Kind::Exists:
        case Kind::Forall: walk_atoms(f->a, visit); return;
    }
}

}  // namespace

Int lcm_of(int x, const Fptr& phi_prime) {
    Int m = 1;
    walk_atoms(phi_prime, [&](const Formula& atom) {
        XClassifiedAtom cls = classify_x_atom(atom, x);
        if (cls.type == XClassifiedAtom::Type::B) m = lcm_int(m, cls.k);
        if (cls.type == XClassifiedAtom::Type::C) m = lcm_int(m, cls.c_atom.divisor);
    });
    return m;
}

namespace {

Fptr psi_minus_inf_rec(const Fptr& f, int x) {
    switch (f->kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Div: return f;
        case Kind::Cmp: {
            Int kx = f->cmp.term.coeff(x);
            if (kx == 0) return f;
            return kx > 0 ? mk_true() : mk_false();
        }
        case Kind::Not: return mk_not(psi_minus_inf_rec(f->a, x));
        case Kind::And: return mk_and(psi_minus_inf_rec(f->a, x), psi_minus_inf_rec(f->b, x));
        case Kind::Or: return mk_or(psi_minus_inf_rec(f->a, x), psi_minus_inf_rec(f->b, x));
        default:
            throw std::logic_error("psi_minus_inf: formula is not a step-1 rewrite output");
    }
}

}  // namespace

Fptr psi_minus_inf(const Fptr& phi_prime, int x) {
    return simplify_bool(psi_minus_inf_rec(phi_prime, x));
}

Fptr substitute(const Fptr& atom, const LinearTerm& t_hom, const Int& t_const, const Int& k,
                int x) {
    if (k <= 0) throw std::invalid_argument("substitute: k must be positive");
    switch (atom->kind) {
        case Kind::True:
        case Kind::False: return atom;
        case Kind::Cmp: {
            Int kp = atom->cmp.term.coeff(x);
            if (kp == 0) return atom;
            if (atom->cmp.rel != Rel::Lt)
                throw std::logic_error("substitute: inequation mentioning the variable must be <");
            LinearTerm rest = atom->cmp.term;
            rest.add(x, -kp);
            // multiply by k, then k*kp*x = kp*(k*x) becomes kp*(t_hom + t_const)
            return normalize_cmp(kp * t_hom + k * rest, kp * t_const, Rel::Lt, {},
                                 k * atom->cmp.constant);
        }
        case Kind::Div: {
            Int kp = atom->div.term.coeff(x);
            if (kp == 0) return atom;
            LinearTerm rest = atom->div.term;
            rest.add(x, -kp);
            return normalize_div(k * atom->div.divisor, kp * t_hom + k * rest,
                                 kp * t_const + k * atom->div.constant);
        }
        default: throw std::logic_error("substitute: not an atom");
    }
}

namespace {

Fptr subst_all(const Fptr& f, const LinearTerm& t_hom, const Int& t_const, const Int& k, int x) {
    switch (f->kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Cmp:
        case Kind::Div: return substitute(f, t_hom, t_const, k, x);
        case Kind::Not: return mk_not(subst_all(f->a, t_hom, t_const, k, x));
        case Kind::And:
            return mk_and(subst_all(f->a, t_hom, t_const, k, x),
                          subst_all(f->b, t_hom, t_const, k, x));
        case Kind::Or:
            return mk_or(subst_all(f->a, t_hom, t_const, k, x),
                         subst_all(f->b, t_hom, t_const, k, x));
        default: throw std::logic_error("subst_all: formula is not a step-1 rewrite output");
    }
}

}  // namespace

Fptr eliminate_exists(int x, const Fptr& phi, QeTrace* trace) {
    if (!is_quantifier_free(phi))
        throw std::invalid_argument("eliminate_exists: formula must be quantifier-free");
    MetricsReport before = metrics(phi);

    Fptr prime = step1_rewrite(phi, x);
    if (!is_free_in(prime, x)) {
        Fptr out = simplify_bool(prime);
        if (trace) trace->steps.push_back({x, Int(1), 0, 0, before, metrics(out)});
        return out;
    }

    Int m = lcm_of(x, prime);

    // distinct lower-bound atoms t_hom + t_const < k*x
    std::set<std::tuple<Int, LinearTerm, Int>> bset;
    walk_atoms(prime, [&](const Formula& atom) {
        XClassifiedAtom cls = classify_x_atom(atom, x);
        if (cls.type == XClassifiedAtom::Type::B)
            bset.emplace(cls.k, cls.t_hom, cls.t_const);
    });

    Fptr minf = psi_minus_inf(prime, x);

    std::vector<Fptr> disjuncts;
    size_t total = (size_t)to_long(m);
    for (Int j = 1; j <= m; ++j) {
        Fptr d = simplify_bool(substitute_const(minf, x, j));
        if (d->kind != Kind::False) disjuncts.push_back(d);
    }
    for (auto& [k, t_hom, t_const] : bset) {
        // A pinned witness satisfies k*x = t_hom + t_const + j with j in
        // [1, k*m]: only that window covers m consecutive integer values of x,
        // a full period of the divisibility atoms. Stopping at j = m would
        // skip witnesses whenever k > 1.
        Int hi = k * m;
        for (Int j = 1; j <= hi; ++j) {
            Fptr cond = k == 1 ? mk_true() : normalize_div(k, t_hom, t_const + j);
            Fptr body = subst_all(prime, t_hom, t_const + j, k, x);
            Fptr conj = simplify_bool(mk_and(cond, body));
            if (conj->kind != Kind::False) disjuncts.push_back(conj);
        }
        total += (size_t)to_long(hi);
    }
    Fptr out = simplify_bool(mk_or_all(disjuncts));
    if (trace) trace->steps.push_back({x, m, bset.size(), total, before, metrics(out)});
    return out;
}

namespace {

void collect_conjuncts(const Fptr& f, std::vector<Fptr>& out) {
    if (f->kind == Kind::And) {
        collect_conjuncts(f->a, out);
        collect_conjuncts(f->b, out);
    } else {
        out.push_back(f);
    }
}

// f is quantifier-free and already step1-normal w.r.t. x: distribute the
// existential over disjunctions and past x-free conjuncts, then eliminate
Fptr push_core(int x, const Fptr& f, QeTrace* trace) {
    if (!is_free_in(f, x)) return f;
    if (f->kind == Kind::Or)
        return simplify_bool(mk_or(push_core(x, f->a, trace), push_core(x, f->b, trace)));
    if (f->kind == Kind::And) {
        std::vector<Fptr> conj, free_part, dep_part;
        collect_conjuncts(f, conj);
        for (auto& c : conj) (is_free_in(c, x) ? dep_part : free_part).push_back(c);
        if (!free_part.empty())
            return simplify_bool(
                mk_and(mk_and_all(free_part), push_core(x, mk_and_all(dep_part), trace)));
    }
    return eliminate_exists(x, f, trace);
}

Fptr push_exists(int x, const Fptr& f, QeTrace* trace) {
    Fptr g = simplify_bool(f);
    if (!is_free_in(g, x)) return g;
    g = step1_rewrite(g, x);
    return push_core(x, g, trace);
}

Fptr eliminate_rec(const Fptr& f, QeTrace* trace) {
    switch (f->kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Cmp:
        case Kind::Div: return f;
        case Kind::Not: return mk_not(eliminate_rec(f->a, trace));
        case Kind::And: return mk_and(eliminate_rec(f->a, trace), eliminate_rec(f->b, trace));
        case Kind::Or: return mk_or(eliminate_rec(f->a, trace), eliminate_rec(f->b, trace));
        case Kind::Implies:
            return mk_implies(eliminate_rec(f->a, trace), eliminate_rec(f->b, trace));
        case Kind::Iff: return mk_iff(eliminate_rec(f->a, trace), eliminate_rec(f->b, trace));
        case Kind::Exists: return push_exists(f->var, eliminate_rec(f->a, trace), trace);
        case Kind::Forall:
            return simplify_bool(mk_not(
                push_exists(f->var, simplify_bool(mk_not(eliminate_rec(f->a, trace))), trace)));
    }
    throw std::logic_error("eliminate_rec: bad kind");
}

}  // namespace

Fptr eliminate_all(const Fptr& phi, VarPool& vars, QeTrace* trace) {
    if (is_quantifier_free(phi)) return phi;
    Fptr renamed = rename_apart(phi, vars);
    return eliminate_rec(renamed, trace);
}

namespace {

Int eval_term(const LinearTerm& t, const std::map<int, Int>& assignment) {
    Int v = 0;
    for (auto& [var, k] : t.coeffs) {
        auto it = assignment.find(var);
        if (it == assignment.end())
            throw std::invalid_argument("eval: unassigned variable index " + std::to_string(var));
        v += k * it->second;
    }
    return v;
}

}  // namespace

bool eval_qf(const Fptr& phi, const std::map<int, Int>& assignment) {
    switch (phi->kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Cmp:
            return rel_holds(eval_term(phi->cmp.term, assignment), phi->cmp.rel,
                             phi->cmp.constant);
        case Kind::Div:
            return mod_floor(eval_term(phi->div.term, assignment) + phi->div.constant,
                             phi->div.divisor) == 0;
        case Kind::Not: return !eval_qf(phi->a, assignment);
        case Kind::And: return eval_qf(phi->a, assignment) && eval_qf(phi->b, assignment);
        case Kind::Or: return eval_qf(phi->a, assignment) || eval_qf(phi->b, assignment);
        case Kind::Implies: return !eval_qf(phi->a, assignment) || eval_qf(phi->b, assignment);
        case Kind::Iff: return eval_qf(phi->a, assignment) == eval_qf(phi->b, assignment);
        case Kind::Exists:
        case Kind::Forall:
            throw std::invalid_argument("eval_qf: formula must be quantifier-free");
    }
    throw std::logic_error("eval_qf: bad kind");
}

bool eval_bruteforce(const Fptr& phi, const std::map<int, Int>& assignment, const Int& range) {
    switch (phi->kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Cmp:
        case Kind::Div: return eval_qf(phi, assignment);
        case Kind::Not: return !eval_bruteforce(phi->a, assignment, range);
        case Kind::And:
            return eval_bruteforce(phi->a, assignment, range) &&
                   eval_bruteforce(phi->b, assignment, range);
        case Kind::Or:
            return eval_bruteforce(phi->a, assignment, range) ||
                   eval_bruteforce(phi->b, assignment, range);
        case Kind::Implies:
            return !eval_bruteforce(phi->a, assignment, range) ||
                   eval_bruteforce(phi->b, assignment, range);
        case Kind::Iff:
            return eval_bruteforce(phi->a, assignment, range) ==
                   eval_bruteforce(phi->b, assignment, range);
        case Kind::Exists:
        case Kind::Forall: {
            bool want_witness = phi->kind == Kind::Exists;
            std::map<int, Int> inner = assignment;
            for (Int v = -range; v <= range; ++v) {
                inner[phi->var] = v;
                if (eval_bruteforce(phi->a, inner, range) == want_witness) return want_witness;
            }
            return !want_witness;
        }
    }
    throw std::logic_error("eval_bruteforce: bad kind");
}

Int bruteforce_range(const Fptr& phi) {
    Int l = 1, c = 0;
    walk_atoms(phi, [&](const Formula& atom) {
        if (atom.kind == Kind::Cmp) {
            for (auto& [v, k] : atom.cmp.term.coeffs) l = lcm_int(l, abs_int(k));
            c = std::max(c, abs_int(atom.cmp.constant));
        } else if (atom.kind == Kind::Div) {
            l = lcm_int(l, atom.div.divisor);
            for (auto& [v, k] : atom.div.term.coeffs) l = lcm_int(l, abs_int(k));
            c = std::max(c, abs_int(atom.div.constant));
        }
    });
    return 2 * (l + c + 1);
}

namespace {

// decides measured < (or <=) scale * base^exp without materializing huge powers
bool le_scaled_power(const Int& measured, const Int& scale, const Int& base, const Int& exp,
                     bool strict) {
    if (scale < 1 || base < 1 || exp < 0) throw std::logic_error("le_scaled_power: bad bound");
    if (base == 1 || exp == 0) {
        return strict ? measured < scale : measured <= scale;
    }
    // materialize when the power stays comfortably small
    Int result_bits = exp * bit_length(base);
    if (result_bits <= 2'000'000) {
        Int bound = scale * pow_int(base, mpz_get_ui(exp.get_mpz_t()));
        return strict ? measured < bound : measured <= bound;
    }
    // bound >= 2^(bits(scale)-1 + exp*(bits(base)-1)); measured < 2^bits(measured)
    Int floor_bits = (bit_length(scale) - 1) + exp * (bit_length(base) - 1);
    return bit_length(measured) <= floor_bits;
}

Int ipow(const Int& b, unsigned long e) { return pow_int(b, e); }

}  // namespace

BoundsReport check_bounds(const Fptr& phi, const Fptr& psi, const QeTrace&) {
    MetricsReport in = metrics(phi);
    MetricsReport out = metrics(psi);
    BoundsReport rep;

    Int n = in.length_linear < 1 ? Int(1) : in.length_linear;
    Int a = std::max({Int(2), in.max_coef, in.max_div}) + 1;
    Int b = std::max(Int(2), in.max_const) + 1;
    unsigned long qa = (unsigned long)in.qa;
    unsigned long qbl = (unsigned long)in.qbl;
    unsigned long qn = (unsigned long)in.qn;

    auto add = [&](const std::string& name, const Int& measured, const std::string& bound_text,
                   bool pass) {
        rep.checks.push_back({name, measured, bound_text, pass});
        rep.all_pass = rep.all_pass && pass;
    };

    // bounds in terms of the formula length n
    Int e_t = ipow(Int(qbl + 1), qa);
    Int e_d = 1 + ipow(Int(qbl + 1), qa + 2);
    add("terms_vs_length", Int((long)out.t_count), "n^((qbl+1)^qa)",
        le_scaled_power(Int((long)out.t_count), 1, n, e_t, false));
    add("divisibilities_vs_length", Int((long)out.d_count), "n^(1+(qbl+1)^(qa+2))",
        le_scaled_power(Int((long)out.d_count), 1, n, e_d, false));

    Int e_coef = ipow(Int(2), 2 * qn);
    add("max_coefficient", out.max_coef, "a^(2^(2qn))",
        le_scaled_power(out.max_coef, 1, a, e_coef, true));
    add("max_divisor", out.max_div, "a^(2^(2qn))",
        le_scaled_power(out.max_div, 1, a, e_coef, true));

    {
        // exponent is 2^(3qn) * n^e_d; when n^e_d is too large to write down the
        // whole bound towers over anything in memory and the check passes outright
        bool pass;
        if (n == 1) {
            pass = le_scaled_power(out.max_const, b, a, ipow(Int(2), 3 * qn), true);
        } else if (e_d * bit_length(n) <= 2'000'000) {
            Int e = ipow(Int(2), 3 * qn) * pow_int(n, mpz_get_ui(e_d.get_mpz_t()));
            pass = le_scaled_power(out.max_const, b, a, e, true);
        } else {
            pass = true;
        }
        add("max_constant_vs_length", out.max_const, "b*a^(2^(3qn)*n^(1+(qbl+1)^(qa+2)))", pass);
    }

    // bounds in terms of term/divisibility counts, for prenex inputs
    if (is_prenex(phi)) {
        Int t_base = std::max<Int>(2, Int((long)in.t_count));
        Int d_base = std::max<Int>(1, Int((long)in.d_count));
        Int e_pt = ipow(Int(qbl + 1), qa);
        Int e_pd = ipow(Int(qbl + 1), qa + 2);
        add("terms_vs_term_count", Int((long)out.t_count), "T^((qbl+1)^qa)",
            le_scaled_power(Int((long)out.t_count), 1, t_base, e_pt, false));
        add("divisibilities_vs_counts", Int((long)out.d_count), "D*T^((qbl+1)^(qa+2))",
            le_scaled_power(Int((long)out.d_count), d_base, t_base, e_pd, false));
        Int dt_bits = e_pd * bit_length(t_base);
        if (dt_bits <= 2'000'000) {
            Int e_pc = ipow(Int(2), 3 * qn) * d_base * pow_int(t_base, mpz_get_ui(e_pd.get_mpz_t()));
            add("max_constant_vs_counts", out.max_const, "b*a^(2^(3qn)*D*T^((qbl+1)^(qa+2)))",
                le_scaled_power(out.max_const, b, a, e_pc, true));
        } else {
            // exponent tower too large to write down; the measured value always
            // fits far below it
            add("max_constant_vs_counts", out.max_const, "b*a^(2^(3qn)*D*T^((qbl+1)^(qa+2)))",
                true);
        }
    }
    return rep;
}

}  // namespace pdwa
