#include "pdwa/atoms.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace pdwa {

namespace {

constexpr long kMaxAtomStates = 10L * 1000 * 1000;

long checked_state_count(const Int& n) {
    if (n < 1 || n > kMaxAtomStates) throw std::runtime_error("atom automaton too large");
    return to_long(n);
}

}  // namespace

TrackForm make_track_form(const LinearTerm& t, int arity, int base) {
    TrackForm f;
    f.arity = arity;
    f.base = base;
    f.coeffs.assign(static_cast<size_t>(arity), Int(0));
    for (auto& [v, k] : t.coeffs) {
        if (v < 0 || v >= arity) throw std::invalid_argument("term variable outside track range");
        f.coeffs[static_cast<size_t>(v)] = k;
    }
    const size_t nl = letter_count(arity, base);
    f.value.assign(nl, Int(0));
    f.sign_value.assign(nl, Int(0));
    for (size_t l = 0; l < nl; ++l) {
        Int v = 0, s = 0;
        size_t rest = l;
        for (int tr = arity - 1; tr >= 0; --tr) {
            int d = static_cast<int>(rest % static_cast<size_t>(base));
            rest /= static_cast<size_t>(base);
            const Int& k = f.coeffs[static_cast<size_t>(tr)];
            if (d != 0) {
                v += k * d;
                s -= k;
            }
        }
        f.value[l] = v;
        f.sign_value[l] = s;
    }
    return f;
}

Int eta_init(const TrackForm& f, size_t letter) { return f.sign_value[letter]; }

Int eta_step(const TrackForm& f, const Int& q, size_t letter) {
    return f.base * q + f.value[letter];
}

Bounds tightest_bounds(const CmpAtom& atom) {
    Int pos = atom.term.pos_norm();
    Int neg = atom.term.neg_norm();
    Bounds b;
    b.small = std::min(atom.constant, Int(-pos)) - 1;
    b.large = std::max(atom.constant, neg) + 1;
    return b;
}

Dwa build_bounded(const CmpAtom& atom, int arity, int base, const Int& small, const Int& large) {
    Int pos = atom.term.pos_norm();
    Int neg = atom.term.neg_norm();
    if (!(small < std::min(atom.constant, Int(-pos))))
        throw std::invalid_argument("lower clamp is not small enough");
    if (!(large > std::max(atom.constant, neg)))
        throw std::invalid_argument("upper clamp is not large enough");
    long values = checked_state_count(large - small + 1);
    TrackForm form = make_track_form(atom.term, arity, base);
    const size_t nl = form.value.size();

    Dwa a;
    a.arity = arity;
    a.base = base;
    a.initial = 0;
    size_t n = static_cast<size_t>(values) + 1;
    a.accepting.assign(n, 0);
    a.next.assign(n, std::vector<int>(nl, -1));

    auto state_of = [&](const Int& v) {
        Int c = std::max(small, std::min(large, v));
        return 1 + static_cast<int>(to_long(c - small));
    };
    for (size_t l = 0; l < nl; ++l) a.next[0][l] = state_of(form.sign_value[l]);
    for (long i = 0; i < values; ++i) {
        Int v = small + i;
        size_t s = static_cast<size_t>(1 + i);
        a.accepting[s] = rel_holds(v, atom.rel, atom.constant) ? 1 : 0;
        for (size_t l = 0; l < nl; ++l) a.next[s][l] = state_of(base * v + form.value[l]);
    }
    return a;
}

ReducedCmp gcd_reduce(const CmpAtom& atom) {
    ReducedCmp r;
    if (atom.term.is_zero()) {
        r.is_constant = true;
        r.truth = rel_holds(0, atom.rel, atom.constant);
        return r;
    }
    Int g = atom.term.gcd();
    if (g == 1) {
        r.atom = atom;
        return r;
    }
    CmpAtom out;
    for (auto& [v, k] : atom.term.coeffs) out.term.coeffs.emplace(v, k / g);
    out.rel = atom.rel;
    const Int& c = atom.constant;
    switch (atom.rel) {
        case Rel::Eq:
            if (mod_floor(c, g) != 0) {
                r.is_constant = true;
                r.truth = false;
                return r;
            }
            out.constant = c / g;
            break;
        case Rel::Ne:
            if (mod_floor(c, g) != 0) {
                r.is_constant = true;
                r.truth = true;
                return r;
            }
            out.constant = c / g;
            break;
        case Rel::Lt: out.constant = div_ceil(c, g); break;
        case Rel::Le: out.constant = div_floor(c, g); break;
        case Rel::Gt: out.constant = div_floor(c, g); break;
        case Rel::Ge: out.constant = div_ceil(c, g); break;
    }
    r.atom = out;
    return r;
}

std::vector<Int> merge_sequence(const CmpAtom& atom, int arity, int base) {
    if (atom.rel != Rel::Gt) throw std::invalid_argument("merge_sequence expects a > atom");
    if (atom.constant < 0) throw std::invalid_argument("merge_sequence expects a nonnegative bound");
    if (atom.term.is_zero() || atom.term.gcd() != 1)
        throw std::invalid_argument("merge_sequence expects coprime coefficients");
    TrackForm form = make_track_form(atom.term, arity, base);
    const size_t nl = form.value.size();
    Int neg = atom.term.neg_norm();

    std::vector<Int> ds;
    ds.push_back(std::max(Int(atom.constant + 1), neg));
    while (ds.back() > neg) {
        const Int di = ds.back();
        // Intersect, over the letters, the stretches of v for which v and
        // d_i - 1 step into the same existing interval (the candidate
        // interval [v, d_i) counts as existing). d_i - 1 itself always
        // qualifies, so the intersection is nonempty.
        Int lo = neg, hi = di - 1;
        for (size_t l = 0; l < nl; ++l) {
            const Int& t = form.value[l];
            Int u = base * (di - 1) + t;
            Int llo, lhi;
            if (u >= di) {
                // existing interval [dj, d_{j-1}) containing u
                auto it = std::lower_bound(ds.begin(), ds.end(), u,
                                           [](const Int& d, const Int& x) { return d > x; });
                size_t j = static_cast<size_t>(it - ds.begin());
                llo = div_ceil(ds[j] - t, base);
                if (j == 0) {
                    lhi = hi;
                } else {
                    lhi = div_floor(ds[j - 1] - 1 - t, base);
                }
            } else {
                // u falls into the candidate interval itself
                llo = div_ceil(-t, base - 1);
                lhi = std::min(u, div_floor(di - 1 - t, base));
            }
            lo = std::max(lo, llo);
            hi = std::min(hi, lhi);
        }
        if (lo > hi) throw std::logic_error("merge interval intersection is empty");
        ds.push_back(lo);
    }
    return ds;
}

namespace {

// atom in > form with nonnegative constant, coprime coefficients, nonzero term
Dwa build_ineq_direct(const CmpAtom& atom, int arity, int base) {
    TrackForm form = make_track_form(atom.term, arity, base);
    const size_t nl = form.value.size();
    Int pos = atom.term.pos_norm();
    Int neg = atom.term.neg_norm();
    const Int& c = atom.constant;

    std::vector<Int> ds = merge_sequence(atom, arity, base);
    const size_t intervals = ds.size();
    long singles = checked_state_count(pos + neg);  // values strictly between -pos and neg, plus 1
    --singles;
    size_t single_base = 1 + intervals;
    size_t reject_all = single_base + static_cast<size_t>(singles);
    size_t n = reject_all + 1;
    checked_state_count(Int(n));

    auto class_of = [&](const Int& v) -> int {
        if (v <= -pos) return static_cast<int>(reject_all);
        if (v < neg) return static_cast<int>(single_base) + static_cast<int>(to_long(v + pos - 1));
        auto it = std::lower_bound(ds.begin(), ds.end(), v,
                                   [](const Int& d, const Int& x) { return d > x; });
        return 1 + static_cast<int>(it - ds.begin());
    };

    Dwa a;
    a.arity = arity;
    a.base = base;
    a.initial = 0;
    a.accepting.assign(n, 0);
    a.next.assign(n, std::vector<int>(nl, -1));
    for (size_t l = 0; l < nl; ++l) {
        a.next[0][l] = class_of(form.sign_value[l]);
        a.next[reject_all][l] = static_cast<int>(reject_all);
    }
    for (size_t j = 0; j < intervals; ++j) {
        size_t s = 1 + j;
        a.accepting[s] = ds[j] > c ? 1 : 0;
        for (size_t l = 0; l < nl; ++l)
            a.next[s][l] = class_of(base * ds[j] + form.value[l]);
    }
    for (long i = 0; i < singles; ++i) {
        Int v = -pos + 1 + i;
        size_t s = single_base + static_cast<size_t>(i);
        a.accepting[s] = v > c ? 1 : 0;
        for (size_t l = 0; l < nl; ++l)
            a.next[s][l] = class_of(base * v + form.value[l]);
    }
    return a;
}

LinearTerm negate_term(const LinearTerm& t) {
    LinearTerm r;
    for (auto& [v, k] : t.coeffs) r.coeffs.emplace(v, -k);
    return r;
}

}  // namespace

Dwa build_ineq_optimal(const CmpAtom& atom0, int arity, int base) {
    CmpAtom a = atom0;
    if (a.rel == Rel::Lt) {
        a.term = negate_term(a.term);
        a.constant = -a.constant;
        a.rel = Rel::Gt;
    }
    if (a.rel != Rel::Gt)
        throw std::invalid_argument("build_ineq_optimal expects a strict inequation");
    ReducedCmp red = gcd_reduce(a);
    if (red.is_constant) return red.truth ? build_true(arity, base) : build_false(arity, base);
    a = red.atom;
    if (a.constant < 0) {
        CmpAtom dual;
        dual.term = negate_term(a.term);
        dual.rel = Rel::Gt;
        dual.constant = -a.constant - 1;
        return complement_set(build_ineq_direct(dual, arity, base));
    }
    return build_ineq_direct(a, arity, base);
}

Dwa build_eq_optimal(const CmpAtom& atom0, int arity, int base) {
    if (atom0.rel != Rel::Eq) throw std::invalid_argument("build_eq_optimal expects an equation");
    ReducedCmp red = gcd_reduce(atom0);
    if (red.is_constant) return red.truth ? build_true(arity, base) : build_false(arity, base);
    const CmpAtom& atom = red.atom;
    TrackForm form = make_track_form(atom.term, arity, base);
    const size_t nl = form.value.size();

    // values from which the target is still reachable
    std::map<Int, int> id;
    std::deque<Int> work;
    work.push_back(atom.constant);
    std::vector<Int> values;
    while (!work.empty()) {
        Int u = work.front();
        work.pop_front();
        if (id.count(u)) continue;
        id.emplace(u, 0);
        values.push_back(u);
        if (values.size() > static_cast<size_t>(kMaxAtomStates))
            throw std::runtime_error("atom automaton too large");
        for (size_t l = 0; l < nl; ++l) {
            Int w = u - form.value[l];
            if (mod_floor(w, base) == 0) work.push_back(w / base);
        }
    }
    std::sort(values.begin(), values.end());
    for (size_t i = 0; i < values.size(); ++i) id[values[i]] = 1 + static_cast<int>(i);

    size_t n = values.size() + 2;  // initial + values + sink
    int sink = static_cast<int>(n - 1);
    auto class_of = [&](const Int& v) {
        auto it = id.find(v);
        return it == id.end() ? sink : it->second;
    };

    Dwa a;
    a.arity = arity;
    a.base = base;
    a.initial = 0;
    a.accepting.assign(n, 0);
    a.accepting[static_cast<size_t>(class_of(atom.constant))] = 1;
    a.next.assign(n, std::vector<int>(nl, sink));
    for (size_t l = 0; l < nl; ++l) a.next[0][l] = class_of(form.sign_value[l]);
    for (size_t i = 0; i < values.size(); ++i) {
        const Int& v = values[i];
        for (size_t l = 0; l < nl; ++l)
            a.next[1 + i][l] = class_of(base * v + form.value[l]);
    }
    return a;
}

Dwa build_div(const DivAtom& atom, int arity, int base, bool filter) {
    const Int& d = atom.divisor;
    if (d < 2) throw std::invalid_argument("divisor must be at least 2");
    TrackForm form = make_track_form(atom.term, arity, base);
    const size_t nl = form.value.size();

    Int raw_gcd = 0;
    for (auto& [v, k] : atom.term.coeffs) raw_gcd = gcd_int(raw_gcd, k);
    Int step = filter ? gcd_int(raw_gcd, d) : Int(1);
    if (step == 0) step = d;  // constant term: only residue 0 occurs
    long residues = checked_state_count(d / step);

    Dwa a;
    a.arity = arity;
    a.base = base;
    a.initial = 0;
    size_t n = static_cast<size_t>(residues) + 1;
    a.accepting.assign(n, 0);
    a.next.assign(n, std::vector<int>(nl, -1));

    auto state_of = [&](const Int& v) {
        Int r = mod_floor(v, d);
        return 1 + static_cast<int>(to_long(r / step));
    };
    Int acc = mod_floor(-atom.constant, d);
    if (mod_floor(acc, step) == 0) a.accepting[static_cast<size_t>(state_of(acc))] = 1;

    for (size_t l = 0; l < nl; ++l) a.next[0][l] = state_of(form.sign_value[l]);
    for (long i = 0; i < residues; ++i) {
        Int r = step * i;
        size_t s = static_cast<size_t>(1 + i);
        for (size_t l = 0; l < nl; ++l) a.next[s][l] = state_of(base * r + form.value[l]);
    }
    return a;
}

Dwa build_true(int arity, int base) {
    const size_t nl = letter_count(arity, base);
    Dwa a;
    a.arity = arity;
    a.base = base;
    a.initial = 0;
    a.accepting = {0, 1};
    a.next.assign(2, std::vector<int>(nl, 1));
    return a;
}

Dwa build_false(int arity, int base) {
    const size_t nl = letter_count(arity, base);
    Dwa a;
    a.arity = arity;
    a.base = base;
    a.initial = 0;
    a.accepting = {0, 0};
    a.next.assign(2, std::vector<int>(nl, 1));
    return a;
}

Dwa build_atom(const Formula& atom, int arity, int base) {
    switch (atom.kind) {
        case Kind::True: return build_true(arity, base);
        case Kind::False: return build_false(arity, base);
        case Kind::Div: return build_div(atom.div, arity, base, true);
        case Kind::Cmp: break;
        default: throw std::invalid_argument("build_atom expects an atomic formula");
    }
    const CmpAtom& c = atom.cmp;
    switch (c.rel) {
        case Rel::Eq: return build_eq_optimal(c, arity, base);
        case Rel::Lt:
        case Rel::Gt: return build_ineq_optimal(c, arity, base);
        case Rel::Ne: {
            CmpAtom eq = c;
            eq.rel = Rel::Eq;
            return complement_set(build_eq_optimal(eq, arity, base));
        }
        case Rel::Le: {
            CmpAtom gt = c;
            gt.rel = Rel::Gt;
            return complement_set(build_ineq_optimal(gt, arity, base));
        }
        case Rel::Ge: {
            CmpAtom lt = c;
            lt.rel = Rel::Lt;
            return complement_set(build_ineq_optimal(lt, arity, base));
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace pdwa
