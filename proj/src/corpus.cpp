#include "pdwa/corpus.hpp"

#include <random>

namespace pdwa {

namespace {

// mt19937_64 output is standardized, so the corpus is identical everywhere;
// modulo draw keeps it that way (std::uniform_int_distribution is not portable)
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}
    long pick(long lo, long hi) { return lo + (long)(gen() % (uint64_t)(hi - lo + 1)); }
    bool coin(int percent) { return pick(0, 99) < percent; }
};

// Elimination multiplies coefficients and divisors of nested quantifiers
// together, so deep-alternation shapes get small knobs to keep the whole
// corpus comfortably inside its time budget; the ceilings are coef 5, div 4.
struct Knobs {
    long coef;
    long div_hi;
};

LinearTerm random_term(Rng& rng, const std::vector<int>& scope, const Knobs& kn) {
    LinearTerm t;
    for (int v : scope)
        if (rng.coin(60)) {
            long k = rng.pick(1, kn.coef);
            if (rng.coin(50)) k = -k;
            t.add(v, k);
        }
    if (t.is_zero() && !scope.empty()) {
        long k = rng.pick(1, kn.coef);
        if (rng.coin(50)) k = -k;
        t.add(scope[(size_t)rng.pick(0, (long)scope.size() - 1)], k);
    }
    return t;
}

Fptr random_atom(Rng& rng, const std::vector<int>& scope, const Knobs& kn) {
    LinearTerm t = random_term(rng, scope, kn);
    Int c = rng.pick(-8, 8);
    if (rng.coin(30)) return normalize_div(rng.pick(2, kn.div_hi), t, c);
    Rel rels[] = {Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge};
    return normalize_cmp(t, 0, rels[rng.pick(0, 5)], {}, c);
}

Fptr random_qf(Rng& rng, const std::vector<int>& scope, int depth, const Knobs& kn) {
    if (depth == 0 || rng.coin(45)) return random_atom(rng, scope, kn);
    switch (rng.pick(0, 5)) {
        case 0: return mk_not(random_qf(rng, scope, depth - 1, kn));
        case 1:
            return mk_and(random_qf(rng, scope, depth - 1, kn),
                          random_qf(rng, scope, depth - 1, kn));
        case 2:
            return mk_or(random_qf(rng, scope, depth - 1, kn),
                         random_qf(rng, scope, depth - 1, kn));
        case 3:
            return mk_implies(random_qf(rng, scope, depth - 1, kn),
                              random_qf(rng, scope, depth - 1, kn));
        case 4:
            return mk_iff(random_qf(rng, scope, depth - 1, kn),
                          random_qf(rng, scope, depth - 1, kn));
        default: return random_atom(rng, scope, kn);
    }
}

}  // namespace

CorpusSet make_corpus(uint64_t seed, size_t count) {
    CorpusSet set;
    int x = set.vars.intern("x");
    int y = set.vars.intern("y");
    int z = set.vars.intern("z");
    Rng rng(seed);

    while (set.items.size() < count) {
        CorpusItem item;
        item.id = (int)set.items.size();
        item.base = rng.coin(50) ? 2 : 3;

        long shape = rng.pick(0, 3);
        if (shape == 0) {
            // quantifier-free over one or two variables
            std::vector<int> scope = rng.coin(50) ? std::vector<int>{x} : std::vector<int>{x, y};
            item.phi = random_qf(rng, scope, 2, {5, 4});
        } else if (shape == 1) {
            // prenex, one quantifier
            Kind q = rng.coin(50) ? Kind::Exists : Kind::Forall;
            std::vector<int> scope{x};
            if (rng.coin(60)) scope.push_back(y);
            item.phi = mk_quant(q, x, random_qf(rng, scope, 2, {5, 4}));
        } else if (shape == 2) {
            // prenex, two quantifiers (alternating half the time)
            Kind q1 = rng.coin(50) ? Kind::Exists : Kind::Forall;
            Kind q2 = rng.coin(50) ? q1 : (q1 == Kind::Exists ? Kind::Forall : Kind::Exists);
            std::vector<int> scope{x, y};
            if (rng.coin(40)) scope.push_back(z);
            item.phi = mk_quant(q1, x, mk_quant(q2, y, random_qf(rng, scope, 1, {2, 3})));
        } else {
            // boolean combination of quantified parts sharing the free variable y
            Kind q1 = rng.coin(50) ? Kind::Exists : Kind::Forall;
            Fptr p1 = mk_quant(q1, x, random_qf(rng, {x, y}, 1, {4, 4}));
            Fptr p2;
            if (rng.coin(50)) {
                Kind q2 = rng.coin(50) ? Kind::Exists : Kind::Forall;
                p2 = mk_quant(q2, z, random_qf(rng, {z, y}, 1, {4, 4}));
            } else {
                p2 = random_qf(rng, {y}, 1, {4, 4});
            }
            switch (rng.pick(0, 3)) {
                case 0: item.phi = mk_and(p1, p2); break;
                case 1: item.phi = mk_or(p1, p2); break;
                case 2: item.phi = mk_implies(p1, p2); break;
                default: item.phi = mk_not(mk_and(p1, mk_not(p2))); break;
            }
        }
        item.prenex = is_prenex(item.phi);
        set.items.push_back(std::move(item));
    }
    return set;
}

}  // namespace pdwa
