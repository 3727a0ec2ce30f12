#include <algorithm>
#include <functional>

#include "pdwa/formula.hpp"

namespace pdwa {

namespace {

Int int_len(const Int& k, bool linear) {
    Int a = abs_int(k);
    if (linear) return a == 0 ? Int(1) : a;
    return Int(std::max<size_t>(bit_length(a), 1));
}

Int term_len(const LinearTerm& t, bool linear) {
    Int s = 0;
    size_t n = 0;
    for (auto& [v, k] : t.coeffs) {
        s += int_len(k, linear) + 1;
        ++n;
    }
    if (n > 1) s += Int((unsigned long)(n - 1));
    return s;
}

Int length_rec(const Fptr& phi, bool linear) {
    switch (phi->kind) {
        case Kind::True:
        case Kind::False: return 1;
        case Kind::Cmp:
            return term_len(phi->cmp.term, linear) + 1 + int_len(phi->cmp.constant, linear);
        case Kind::Div: {
            Int s = int_len(phi->div.divisor, linear) + 1 + term_len(phi->div.term, linear);
            if (phi->div.constant != 0) s += 1 + int_len(phi->div.constant, linear);
            return s;
        }
        case Kind::Not: return 1 + length_rec(phi->a, linear);
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: return 1 + length_rec(phi->a, linear) + length_rec(phi->b, linear);
        case Kind::Exists:
        case Kind::Forall: return 2 + length_rec(phi->a, linear);
    }
    return 0;
}

struct QPair {
    int ex = 0;  // value for Q = exists
    int fa = 0;  // value for Q = forall
};

// quantifier alternation depth, per leading quantifier kind
QPair qa_rec(const Fptr& phi) {
    switch (phi->kind) {
        case Kind::Not: {
            QPair p = qa_rec(phi->a);
            return {p.fa, p.ex};
        }
        case Kind::And:
        case Kind::Or: {
            QPair x = qa_rec(phi->a), y = qa_rec(phi->b);
            return {std::max(x.ex, y.ex), std::max(x.fa, y.fa)};
        }
        case Kind::Implies: {
            QPair x = qa_rec(phi->a), y = qa_rec(phi->b);
            return {std::max(x.fa, y.ex), std::max(x.ex, y.fa)};
        }
        case Kind::Iff: {
            QPair x = qa_rec(phi->a), y = qa_rec(phi->b);
            int m = std::max({x.ex, x.fa, y.ex, y.fa});
            return {m, m};
        }
        case Kind::Exists: {
            QPair p = qa_rec(phi->a);
            return {std::max(1, p.ex), 1 + p.ex};
        }
        case Kind::Forall: {
            QPair p = qa_rec(phi->a);
            return {1 + p.fa, std::max(1, p.fa)};
        }
        default: return {0, 0};
    }
}

// quantifier block length, per leading quantifier kind; tracks the maximum
// over all subformulas on the side
QPair qbl_rec(const Fptr& phi, int& best) {
    QPair r{0, 0};
    switch (phi->kind) {
        case Kind::Not: {
            QPair p = qbl_rec(phi->a, best);
            r = {p.fa, p.ex};
            break;
        }
        case Kind::And:
        case Kind::Or: {
            QPair x = qbl_rec(phi->a, best), y = qbl_rec(phi->b, best);
            r = {x.ex + y.ex, x.fa + y.fa};
            break;
        }
        case Kind::Implies: {
            QPair x = qbl_rec(phi->a, best), y = qbl_rec(phi->b, best);
            r = {x.fa + y.ex, x.ex + y.fa};
            break;
        }
        case Kind::Iff: {
            QPair x = qbl_rec(phi->a, best), y = qbl_rec(phi->b, best);
            r = {x.fa + y.ex + y.fa + x.ex, x.ex + y.fa + y.ex + x.fa};
            break;
        }
        case Kind::Exists: {
            QPair p = qbl_rec(phi->a, best);
            r = {1 + p.ex, 0};
            break;
        }
        case Kind::Forall: {
            QPair p = qbl_rec(phi->a, best);
            r = {0, 1 + p.fa};
            break;
        }
        default: break;
    }
    best = std::max({best, r.ex, r.fa});
    return r;
}

int qn_rec(const Fptr& phi) {
    switch (phi->kind) {
        case Kind::Not: return qn_rec(phi->a);
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: return qn_rec(phi->a) + qn_rec(phi->b);
        case Kind::Exists:
        case Kind::Forall: return 1 + qn_rec(phi->a);
        default: return 0;
    }
}

void visit_atoms(const Fptr& phi, const std::function<void(const Fptr&)>& f) {
    switch (phi->kind) {
        case Kind::Cmp:
        case Kind::Div: f(phi); return;
        case Kind::True:
        case Kind::False: return;
        case Kind::Not:
        case Kind::Exists:
        case Kind::Forall: visit_atoms(phi->a, f); return;
        default:
            visit_atoms(phi->a, f);
            visit_atoms(phi->b, f);
            return;
    }
}

}  // namespace

std::set<LinearTerm> t_set(const Fptr& phi) {
    std::set<LinearTerm> out;
    visit_atoms(phi, [&](const Fptr& a) {
        if (a->kind == Kind::Cmp) out.insert(a->cmp.term);
    });
    return out;
}

std::set<std::pair<Int, LinearTerm>> d_set(const Fptr& phi) {
    std::set<std::pair<Int, LinearTerm>> out;
    visit_atoms(phi, [&](const Fptr& a) {
        if (a->kind == Kind::Div) out.insert({a->div.divisor, a->div.term});
    });
    return out;
}

MetricsReport metrics(const Fptr& phi) {
    MetricsReport r;
    r.length_linear = length_rec(phi, true);
    r.length_log = length_rec(phi, false);
    r.qn = qn_rec(phi);
    QPair qa = qa_rec(phi);
    r.qa = std::min(qa.ex, qa.fa);
    int best = 0;
    qbl_rec(phi, best);
    r.qbl = best;
    r.t_count = t_set(phi).size();
    r.d_count = d_set(phi).size();
    r.max_coef = 0;
    r.max_div = 0;
    r.max_const = 0;
    visit_atoms(phi, [&](const Fptr& a) {
        const LinearTerm& t = a->kind == Kind::Cmp ? a->cmp.term : a->div.term;
        for (auto& [v, k] : t.coeffs) r.max_coef = std::max(r.max_coef, abs_int(k));
        Int c = abs_int(a->kind == Kind::Cmp ? a->cmp.constant : a->div.constant);
        r.max_const = std::max(r.max_const, c);
        if (a->kind == Kind::Div) r.max_div = std::max(r.max_div, a->div.divisor);
    });
    return r;
}

}  // namespace pdwa
