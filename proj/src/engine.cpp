#include "pdwa/engine.hpp"

#include <algorithm>
#include <set>

#include "pdwa/atoms.hpp"
#include "pdwa/qelim.hpp"

namespace pdwa {

namespace {

struct Compiler {
    const CompileOptions& opts;
    const VarPool& vars;
    SizeLedger* ledger;
    std::vector<int> order;        // var id per track
    std::map<int, int> track_of;

    void note(const Fptr& f, size_t before, size_t after) {
        if (ledger) ledger->entries.push_back({formula_text(f, vars), before, after});
    }

    LinearTerm remap(const LinearTerm& t) const {
        LinearTerm r;
        for (auto& [v, k] : t.coeffs) r.add(track_of.at(v), k);
        return r;
    }

    Dwa shrink(Dwa d, bool force) {
        if (force || opts.minimize_each_step) return minimize(d);
        return d;
    }

    Dwa rec(const Fptr& f) {
        int arity = (int)order.size();
        switch (f->kind) {
            case Kind::True:
            case Kind::False: {
                Dwa d = build_atom(*f, arity, opts.base);
                note(f, d.state_count(), d.state_count());
                return d;
            }
            case Kind::Cmp: {
                Formula atom;
                atom.kind = Kind::Cmp;
                atom.cmp = {remap(f->cmp.term), f->cmp.rel, f->cmp.constant};
                Dwa d = build_atom(atom, arity, opts.base);
                note(f, d.state_count(), d.state_count());
                return d;
            }
            case Kind::Div: {
                Formula atom;
                atom.kind = Kind::Div;
                atom.div = {f->div.divisor, remap(f->div.term), f->div.constant};
                Dwa d = build_atom(atom, arity, opts.base);
                note(f, d.state_count(), d.state_count());
                return d;
            }
            case Kind::Not: {
                Dwa d = complement_set(rec(f->a));
                note(f, d.state_count(), d.state_count());
                return d;
            }
            case Kind::And:
            case Kind::Or:
            case Kind::Implies:
            case Kind::Iff: {
                BoolOp op = f->kind == Kind::And       ? BoolOp::And
                            : f->kind == Kind::Or      ? BoolOp::Or
                            : f->kind == Kind::Implies ? BoolOp::Implies
                                                       : BoolOp::Iff;
                Dwa a = rec(f->a);
                Dwa b = rec(f->b);
                Dwa d = product(a, b, op);
                size_t before = d.state_count();
                d = shrink(std::move(d), false);
                note(f, before, d.state_count());
                return d;
            }
            case Kind::Exists:
            case Kind::Forall: {
                bool universal = f->kind == Kind::Forall;
                order.push_back(f->var);
                track_of[f->var] = arity;
                Dwa inner = rec(f->a);
                order.pop_back();
                track_of.erase(f->var);
                if (universal) inner = complement_set(inner);
                Dwa d = determinize(project_exists(inner, arity));
                size_t before = d.state_count();
                d = shrink(std::move(d), true);
                if (universal) d = complement_set(d);
                note(f, before, d.state_count());
                return d;
            }
        }
        throw std::logic_error("compile: bad formula kind");
    }
};

std::vector<int> resolve_order(const Fptr& phi, const CompileOptions& opts) {
    std::vector<int> fv = free_vars(phi);
    std::vector<int> order = opts.variable_order.empty() ? fv : opts.variable_order;
    std::set<int> seen(order.begin(), order.end());
    if (seen.size() != order.size())
        throw std::invalid_argument("variable_order has duplicate entries");
    for (int v : fv)
        if (!seen.count(v))
            throw std::invalid_argument("variable_order does not cover the free variables");
    return order;
}

}  // namespace

Dwa compile(const Fptr& phi, VarPool& vars, const CompileOptions& opts, SizeLedger* ledger) {
    if (opts.base < 2) throw std::invalid_argument("compile: base must be at least 2");
    std::vector<int> order = resolve_order(phi, opts);
    Fptr f = rename_apart(phi, vars);
    if (opts.backend == Backend::QeThenAutomata) f = eliminate_all(f, vars);
    Compiler c{opts, vars, ledger, order, {}};
    for (size_t i = 0; i < order.size(); ++i) c.track_of[order[i]] = (int)i;
    return c.rec(f);
}

bool decide(const Fptr& phi, VarPool& vars, const CompileOptions& opts) {
    if (!free_vars(phi).empty())
        throw std::invalid_argument("decide: the formula must be a sentence");
    return !is_empty_nonlambda(compile(phi, vars, opts));
}

std::optional<std::map<int, Int>> solve(const Fptr& phi, VarPool& vars,
                                        const CompileOptions& opts) {
    std::vector<int> order = resolve_order(phi, opts);
    CompileOptions o = opts;
    o.variable_order = order;
    Dwa d = compile(phi, vars, o);
    auto w = find_witness(d);
    if (!w) return std::nullopt;
    std::vector<Int> z = decode_int(*w);
    std::map<int, Int> asg;
    for (size_t i = 0; i < order.size(); ++i) asg[order[i]] = z[i];
    if (is_quantifier_free(phi) && !eval_qf(phi, asg))
        throw std::logic_error("solve: extracted witness fails arithmetic evaluation");
    return asg;
}

CrosscheckReport crosscheck(const Fptr& phi, VarPool& vars, const CompileOptions& opts,
                            bool inject_fault) {
    CrosscheckReport rep;
    rep.formula = formula_text(phi, vars);
    std::vector<int> order = resolve_order(phi, opts);
    CompileOptions oa = opts;
    oa.variable_order = order;
    oa.backend = Backend::Automata;
    CompileOptions ob = oa;
    ob.backend = Backend::QeThenAutomata;

    Dwa a = minimize(compile(phi, vars, oa));
    Dwa b = minimize(compile(phi, vars, ob));
    if (inject_fault) b.accepting[b.state_count() - 1] ^= 1;
    rep.automata_size = a.state_count();
    rep.qe_automata_size = b.state_count();
    rep.languages_equal = equivalent(a, b);

    if (order.size() <= 2) {
        Fptr psi = eliminate_all(phi, vars);
        const long lo = -16, hi = 16;
        std::vector<Int> z(order.size());
        std::map<int, Int> asg;
        auto check_point = [&]() {
            TupleWord w = encode_int(z, opts.base);
            bool got = membership(a, w);
            bool want = eval_qf(psi, asg);
            ++rep.samples_checked;
            if (got != want) ++rep.sample_mismatches;
        };
        if (order.empty()) {
            check_point();
        } else if (order.size() == 1) {
            for (long x = lo; x <= hi; ++x) {
                z[0] = x;
                asg[order[0]] = x;
                check_point();
            }
        } else {
            for (long x = lo; x <= hi; ++x)
                for (long y = lo; y <= hi; ++y) {
                    z[0] = x;
                    z[1] = y;
                    asg[order[0]] = x;
                    asg[order[1]] = y;
                    check_point();
                }
        }
    }
    rep.pass = rep.languages_equal && rep.sample_mismatches == 0;
    return rep;
}

namespace {

// l = 1 + max over inequation atoms of (positive norm, negative norm, |constant|);
// l' = 1 + max divisor
void qf_bound_params(const Fptr& f, Int& ell_minus_1, Int& max_div) {
    switch (f->kind) {
        case Kind::True:
        case Kind::False: return;
        case Kind::Cmp: {
            ell_minus_1 = std::max(
                {ell_minus_1, f->cmp.term.pos_norm(), f->cmp.term.neg_norm(),
                 abs_int(f->cmp.constant)});
            return;
        }
        case Kind::Div: {
            max_div = std::max(max_div, f->div.divisor);
            return;
        }
        case Kind::Not: qf_bound_params(f->a, ell_minus_1, max_div); return;
        default:
            qf_bound_params(f->a, ell_minus_1, max_div);
            if (f->b) qf_bound_params(f->b, ell_minus_1, max_div);
            return;
    }
}

}  // namespace

SizeLedger size_report(const Fptr& phi, VarPool& vars, const CompileOptions& opts) {
    SizeLedger led;
    Dwa d = compile(phi, vars, opts, &led);
    led.final_size = minimize(d).state_count();

    MetricsReport m = metrics(phi);
    Int n = m.length_linear < 1 ? Int(1) : m.length_linear;
    Int e = pow_int(Int(m.qbl + 1), (unsigned long)(m.qa + 4));
    Int cap = opts.bound_exponent_cap_bits;
    // inner exponent n^e; the bound 2^inner is materialized only if inner <= cap
    bool ok = false;
    Int inner = 1;
    if (n == 1) {
        ok = true;
    } else if (e <= 64) {
        ok = true;
        unsigned long eu = (unsigned long)to_long(e);
        for (unsigned long i = 0; i < eu && ok; ++i) {
            inner *= n;
            if (inner > cap) ok = false;
        }
    }
    if (ok) {
        led.main_bound_materialized = true;
        led.main_bound = pow_int(Int(2), (unsigned long)to_long(inner));
        led.main_bound_pass = Int((long)led.final_size) <= led.main_bound;
    } else {
        led.main_bound_materialized = false;
        led.main_bound = 0;
        led.main_bound_pass = true;  // any in-memory automaton is far below 2^cap
    }

    if (is_quantifier_free(phi)) {
        Int lm1 = 0, dmax = 0;
        qf_bound_params(phi, lm1, dmax);
        Int ell = lm1 + 1, ellp = dmax + 1;
        size_t tc = t_set(phi).size(), dc = d_set(phi).size();
        led.qf_bound_present = true;
        led.qf_bound = pow_int(2 + 2 * ell, tc) * pow_int(ellp, dc);
        led.qf_bound_pass = Int((long)led.final_size) <= led.qf_bound;
    }
    return led;
}

Dwa build_mult(int m, int base) {
    if (m < 0) throw std::invalid_argument("build_mult: m must be non-negative");
    if (base < 2) throw std::invalid_argument("build_mult: base must be at least 2");
    Int raw = pow_int(Int(base), 4 * (unsigned long)m);
    if (raw > 4'000'000) throw std::invalid_argument("build_mult: value-tracking cap exceeded");

    long am = to_long(pow_int(Int(base), (unsigned long)m));      // a, b < am
    long cm = to_long(pow_int(Int(base), 2 * (unsigned long)m));  // c < cm
    size_t count = 2 + (size_t)to_long(raw);
    size_t letters = letter_count(3, base);
    const int dead = 1;
    auto id_of = [&](long a, long b, long c) {
        return (int)(2 + ((size_t)a * (size_t)am + (size_t)b) * (size_t)cm + (size_t)c);
    };

    Dwa d;
    d.arity = 3;
    d.base = base;
    d.initial = 0;
    d.accepting.assign(count, 0);
    d.next.assign(count, std::vector<int>(letters, dead));

    // members are non-negative, so any nonzero sign digit leads to the dead state
    d.next[0][letter_index({0, 0, 0}, base)] = id_of(0, 0, 0);

    for (long a = 0; a < am; ++a)
        for (long b = 0; b < am; ++b)
            for (long c = 0; c < cm; ++c) {
                int q = id_of(a, b, c);
                d.accepting[q] = c == a * b ? 1 : 0;
                for (size_t l = 0; l < letters; ++l) {
                    long a2 = (long)base * a + letter_digit(l, 0, 3, base);
                    long b2 = (long)base * b + letter_digit(l, 1, 3, base);
                    long c2 = (long)base * c + letter_digit(l, 2, 3, base);
                    d.next[q][l] =
                        a2 >= am || b2 >= am || c2 >= cm ? dead : id_of(a2, b2, c2);
                }
            }
    return minimize(d);
}

}  // namespace pdwa
