#include "pdwa/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pdwa {

namespace {

constexpr size_t kMaxLetters = 1u << 24;
constexpr size_t kMaxStates = 4u << 20;

void check_alphabet(int arity, int base) {
    if (arity < 0) throw std::invalid_argument("arity must be nonnegative");
    if (base < 2) throw std::invalid_argument("base must be at least 2");
}

}  // namespace

size_t letter_count(int arity, int base) {
    check_alphabet(arity, base);
    size_t n = 1;
    for (int i = 0; i < arity; ++i) {
        n *= static_cast<size_t>(base);
        if (n > kMaxLetters) throw std::invalid_argument("alphabet too large");
    }
    return n;
}

size_t letter_index(const std::vector<int>& digits, int base) {
    size_t idx = 0;
    for (int d : digits) {
        if (d < 0 || d >= base) throw std::invalid_argument("digit out of range");
        idx = idx * static_cast<size_t>(base) + static_cast<size_t>(d);
    }
    return idx;
}

std::vector<int> letter_digits(size_t index, int arity, int base) {
    std::vector<int> digits(static_cast<size_t>(arity), 0);
    for (int t = arity - 1; t >= 0; --t) {
        digits[static_cast<size_t>(t)] = static_cast<int>(index % static_cast<size_t>(base));
        index /= static_cast<size_t>(base);
    }
    if (index != 0) throw std::invalid_argument("letter index out of range");
    return digits;
}

int letter_digit(size_t index, int track, int arity, int base) {
    if (track < 0 || track >= arity) throw std::invalid_argument("track out of range");
    for (int t = arity - 1; t > track; --t) index /= static_cast<size_t>(base);
    return static_cast<int>(index % static_cast<size_t>(base));
}

bool apply_op(BoolOp op, bool a, bool b) {
    switch (op) {
        case BoolOp::And: return a && b;
        case BoolOp::Or: return a || b;
        case BoolOp::Xor: return a != b;
        case BoolOp::Implies: return !a || b;
        case BoolOp::Iff: return a == b;
    }
    throw std::logic_error("unknown BoolOp");
}

bool initial_has_no_incoming(const Dwa& a) {
    const size_t nl = a.letters();
    for (size_t q = 0; q < a.state_count(); ++q)
        for (size_t l = 0; l < nl; ++l)
            if (a.next[q][l] == a.initial) return false;
    return true;
}

void assert_represents_set(const Dwa& a) {
    if (a.state_count() == 0) throw std::invalid_argument("automaton has no states");
    if (a.initial < 0 || static_cast<size_t>(a.initial) >= a.state_count())
        throw std::invalid_argument("initial state out of range");
    if (a.accepting.size() != a.state_count())
        throw std::invalid_argument("accepting vector size mismatch");
    if (a.accepting[static_cast<size_t>(a.initial)])
        throw std::invalid_argument("initial state must be non-accepting");
    if (!initial_has_no_incoming(a))
        throw std::invalid_argument("initial state must have no incoming transitions");
}

bool membership(const Dwa& a, const TupleWord& w) {
    if (w.arity != a.arity || w.base != a.base)
        throw std::invalid_argument("word alphabet mismatch");
    if (w.empty()) return false;
    int q = a.initial;
    const int base = a.base;
    for (size_t pos = 0; pos < w.length(); ++pos) {
        size_t idx = 0;
        for (int t = 0; t < a.arity; ++t)
            idx = idx * static_cast<size_t>(base) + static_cast<size_t>(w.digit(pos, t));
        q = a.next[static_cast<size_t>(q)][idx];
    }
    return a.accepting[static_cast<size_t>(q)] != 0;
}

Dwa product(const Dwa& a, const Dwa& b, BoolOp op) {
    if (a.arity != b.arity || a.base != b.base)
        throw std::invalid_argument("product requires matching alphabets");
    const size_t nl = a.letters();
    const size_t nb = b.state_count();
    std::vector<int> id(a.state_count() * nb, -1);
    auto key = [nb](int p, int q) {
        return static_cast<size_t>(p) * nb + static_cast<size_t>(q);
    };

    Dwa out;
    out.arity = a.arity;
    out.base = a.base;
    out.initial = 0;
    std::vector<std::pair<int, int>> pairs;
    id[key(a.initial, b.initial)] = 0;
    pairs.emplace_back(a.initial, b.initial);
    out.accepting.push_back(0);  // empty word stays rejected
    out.next.emplace_back(nl, -1);
    for (size_t cur = 0; cur < pairs.size(); ++cur) {
        auto [p, q] = pairs[cur];
        for (size_t l = 0; l < nl; ++l) {
            int p2 = a.next[static_cast<size_t>(p)][l];
            int q2 = b.next[static_cast<size_t>(q)][l];
            int& slot = id[key(p2, q2)];
            if (slot < 0) {
                slot = static_cast<int>(pairs.size());
                pairs.emplace_back(p2, q2);
                bool acc = apply_op(op, a.accepting[static_cast<size_t>(p2)] != 0,
                                    b.accepting[static_cast<size_t>(q2)] != 0);
                out.accepting.push_back(acc ? 1 : 0);
                out.next.emplace_back(nl, -1);
                if (pairs.size() > kMaxStates) throw std::runtime_error("product too large");
            }
            out.next[cur][l] = slot;
        }
    }
    return out;
}

Dwa complement_set(const Dwa& a) {
    assert_represents_set(a);
    Dwa out = a;
    for (auto& f : out.accepting) f = f ? 0 : 1;
    out.accepting[static_cast<size_t>(out.initial)] = 0;
    return out;
}

Dwa cylindrify(const Dwa& a, int position) {
    if (position < 0 || position > a.arity)
        throw std::invalid_argument("cylindrify position out of range");
    Dwa out;
    out.arity = a.arity + 1;
    out.base = a.base;
    out.initial = a.initial;
    out.accepting = a.accepting;
    const size_t new_letters = letter_count(out.arity, out.base);
    out.next.assign(a.state_count(), std::vector<int>(new_letters, -1));
    for (size_t l = 0; l < new_letters; ++l) {
        std::vector<int> digits = letter_digits(l, out.arity, out.base);
        digits.erase(digits.begin() + position);
        size_t old_l = letter_index(digits, out.base);
        for (size_t q = 0; q < a.state_count(); ++q) out.next[q][l] = a.next[q][old_l];
    }
    return out;
}

Nfa project_exists(const Dwa& a, int track) {
    if (track < 0 || track >= a.arity)
        throw std::invalid_argument("projection track out of range");
    assert_represents_set(a);
    const int base = a.base;
    const int out_arity = a.arity - 1;
    const size_t out_letters = letter_count(out_arity, base);
    const size_t n = a.state_count();

    auto lift = [&](size_t l, int d) {
        std::vector<int> digits = letter_digits(l, out_arity, base);
        digits.insert(digits.begin() + track, d);
        return letter_index(digits, base);
    };

    Nfa out;
    out.arity = out_arity;
    out.base = base;
    out.accepting.assign(n + 1, 0);
    for (size_t q = 0; q < n; ++q) out.accepting[q] = a.accepting[q];
    out.next.assign(n + 1, std::vector<std::vector<int>>(out_letters));
    const int start = static_cast<int>(n);
    out.initials = {start};

    for (size_t q = 0; q < n; ++q) {
        for (size_t l = 0; l < out_letters; ++l) {
            std::set<int> tgt;
            for (int d = 0; d < base; ++d)
                tgt.insert(a.next[q][lift(l, d)]);
            out.next[q][l].assign(tgt.begin(), tgt.end());
        }
    }

    // For each canonical repeat letter s of the kept tracks, the states
    // reachable from the initial state by one or more lifted s letters.
    auto canon_of = [&](size_t l) {
        std::vector<int> digits = letter_digits(l, out_arity, base);
        for (int& d : digits)
            if (d != 0) d = base - 1;
        return letter_index(digits, base);
    };
    std::map<size_t, std::vector<int>> repeat_closure;
    for (size_t l = 0; l < out_letters; ++l) {
        size_t s = canon_of(l);
        if (repeat_closure.count(s)) continue;
        std::set<int> seen;
        std::deque<int> work;
        for (int d = 0; d < base; ++d) work.push_back(a.next[static_cast<size_t>(a.initial)][lift(s, d)]);
        while (!work.empty()) {
            int p = work.front();
            work.pop_front();
            if (!seen.insert(p).second) continue;
            for (int d = 0; d < base; ++d) work.push_back(a.next[static_cast<size_t>(p)][lift(s, d)]);
        }
        repeat_closure.emplace(s, std::vector<int>(seen.begin(), seen.end()));
    }

    for (size_t l = 0; l < out_letters; ++l) {
        std::set<int> tgt;
        for (int d = 0; d < base; ++d)
            tgt.insert(a.next[static_cast<size_t>(a.initial)][lift(l, d)]);
        size_t s = canon_of(l);
        for (int p : repeat_closure.at(s))
            for (int d = 0; d < base; ++d)
                tgt.insert(a.next[static_cast<size_t>(p)][lift(s, d)]);
        out.next[static_cast<size_t>(start)][l].assign(tgt.begin(), tgt.end());
    }
    return out;
}

Dwa determinize(const Nfa& n) {
    const size_t nl = n.letters();
    std::map<std::vector<int>, int> id;
    std::vector<std::vector<int>> subsets;

    Dwa out;
    out.arity = n.arity;
    out.base = n.base;
    out.initial = 0;
    std::vector<int> start(n.initials);
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    id.emplace(start, 0);
    subsets.push_back(start);

    auto subset_accepting = [&](const std::vector<int>& s) {
        for (int q : s)
            if (n.accepting[static_cast<size_t>(q)]) return true;
        return false;
    };
    out.accepting.push_back(subset_accepting(start) ? 1 : 0);
    out.next.emplace_back(nl, -1);

    for (size_t cur = 0; cur < subsets.size(); ++cur) {
        for (size_t l = 0; l < nl; ++l) {
            std::set<int> tgt;
            for (int q : subsets[cur])
                for (int p : n.next[static_cast<size_t>(q)][l]) tgt.insert(p);
            std::vector<int> key(tgt.begin(), tgt.end());
            auto [it, fresh] = id.emplace(key, static_cast<int>(subsets.size()));
            if (fresh) {
                subsets.push_back(key);
                out.accepting.push_back(subset_accepting(key) ? 1 : 0);
                out.next.emplace_back(nl, -1);
                if (subsets.size() > kMaxStates) throw std::runtime_error("determinization too large");
            }
            out.next[cur][l] = it->second;
        }
    }
    return out;
}

Dwa trim(const Dwa& a) {
    const size_t nl = a.letters();
    std::vector<int> order;
    std::vector<int> new_id(a.state_count(), -1);
    order.push_back(a.initial);
    new_id[static_cast<size_t>(a.initial)] = 0;
    for (size_t cur = 0; cur < order.size(); ++cur) {
        int q = order[cur];
        for (size_t l = 0; l < nl; ++l) {
            int p = a.next[static_cast<size_t>(q)][l];
            if (new_id[static_cast<size_t>(p)] < 0) {
                new_id[static_cast<size_t>(p)] = static_cast<int>(order.size());
                order.push_back(p);
            }
        }
    }
    Dwa out;
    out.arity = a.arity;
    out.base = a.base;
    out.initial = 0;
    out.accepting.resize(order.size());
    out.next.assign(order.size(), std::vector<int>(nl, -1));
    for (size_t i = 0; i < order.size(); ++i) {
        int q = order[i];
        out.accepting[i] = a.accepting[static_cast<size_t>(q)];
        for (size_t l = 0; l < nl; ++l)
            out.next[i][l] = new_id[static_cast<size_t>(a.next[static_cast<size_t>(q)][l])];
    }
    return out;
}

namespace {

// Hopcroft partition refinement; returns class index per state.
std::pair<std::vector<int>, int> refine_classes(const Dwa& a) {
    const size_t n = a.state_count();
    const size_t nl = a.letters();
    std::vector<std::vector<std::vector<int>>> rev(nl, std::vector<std::vector<int>>(n));
    for (size_t q = 0; q < n; ++q)
        for (size_t l = 0; l < nl; ++l)
            rev[l][static_cast<size_t>(a.next[q][l])].push_back(static_cast<int>(q));

    std::vector<int> cls(n, 0);
    std::vector<std::vector<int>> members;
    {
        std::vector<int> acc, rej;
        for (size_t q = 0; q < n; ++q)
            (a.accepting[q] ? acc : rej).push_back(static_cast<int>(q));
        if (!rej.empty()) {
            for (int q : rej) cls[static_cast<size_t>(q)] = static_cast<int>(members.size());
            members.push_back(std::move(rej));
        }
        if (!acc.empty()) {
            for (int q : acc) cls[static_cast<size_t>(q)] = static_cast<int>(members.size());
            members.push_back(std::move(acc));
        }
    }

    std::deque<std::pair<int, size_t>> work;
    std::vector<std::vector<char>> in_work;
    auto push = [&](int c, size_t l) {
        if (!in_work[static_cast<size_t>(c)][l]) {
            in_work[static_cast<size_t>(c)][l] = 1;
            work.emplace_back(c, l);
        }
    };
    in_work.assign(members.size(), std::vector<char>(nl, 0));
    for (size_t c = 0; c < members.size(); ++c)
        for (size_t l = 0; l < nl; ++l) push(static_cast<int>(c), l);

    std::vector<char> marked(n, 0);
    std::vector<int> touched_classes;
    std::vector<int> mark_count(members.size(), 0);

    while (!work.empty()) {
        auto [c, l] = work.front();
        work.pop_front();
        in_work[static_cast<size_t>(c)][l] = 0;

        std::vector<int> hit;
        for (int target : members[static_cast<size_t>(c)])
            for (int q : rev[l][static_cast<size_t>(target)]) hit.push_back(q);
        if (hit.empty()) continue;

        touched_classes.clear();
        for (int q : hit) {
            if (marked[static_cast<size_t>(q)]) continue;
            marked[static_cast<size_t>(q)] = 1;
            int d = cls[static_cast<size_t>(q)];
            if (mark_count[static_cast<size_t>(d)] == 0) touched_classes.push_back(d);
            ++mark_count[static_cast<size_t>(d)];
        }

        for (int d : touched_classes) {
            auto& dm = members[static_cast<size_t>(d)];
            int cnt = mark_count[static_cast<size_t>(d)];
            mark_count[static_cast<size_t>(d)] = 0;
            if (cnt == static_cast<int>(dm.size())) {
                for (int q : dm) marked[static_cast<size_t>(q)] = 0;
                continue;
            }
            std::vector<int> part_marked, part_rest;
            for (int q : dm)
                (marked[static_cast<size_t>(q)] ? part_marked : part_rest).push_back(q);
            for (int q : part_marked) marked[static_cast<size_t>(q)] = 0;

            int e = static_cast<int>(members.size());
            // keep the larger part under the old id so pending splitters stay valid
            if (part_marked.size() > part_rest.size()) std::swap(part_marked, part_rest);
            for (int q : part_marked) cls[static_cast<size_t>(q)] = e;
            members[static_cast<size_t>(d)] = std::move(part_rest);
            members.push_back(std::move(part_marked));
            in_work.emplace_back(nl, 0);
            mark_count.push_back(0);
            // the new class holds the smaller part, so pushing it alone
            // is sound whether or not the old id is still queued
            for (size_t ll = 0; ll < nl; ++ll) push(e, ll);
        }
        for (int q : hit) marked[static_cast<size_t>(q)] = 0;
    }
    return {cls, static_cast<int>(members.size())};
}

}  // namespace

Dwa minimize(const Dwa& a) {
    Dwa t = trim(a);
    const size_t nl = t.letters();
    bool dedicated = !t.accepting[static_cast<size_t>(t.initial)] && initial_has_no_incoming(t);
    auto [cls, num_classes] = refine_classes(t);

    Dwa q;
    q.arity = t.arity;
    q.base = t.base;
    q.initial = cls[static_cast<size_t>(t.initial)];
    q.accepting.assign(static_cast<size_t>(num_classes), 0);
    q.next.assign(static_cast<size_t>(num_classes), std::vector<int>(nl, -1));
    for (size_t s = 0; s < t.state_count(); ++s) {
        size_t c = static_cast<size_t>(cls[s]);
        q.accepting[c] = t.accepting[s];
        for (size_t l = 0; l < nl; ++l) q.next[c][l] = cls[static_cast<size_t>(t.next[s][l])];
    }

    if (dedicated && !initial_has_no_incoming(q)) {
        int fresh = static_cast<int>(q.state_count());
        q.accepting.push_back(0);
        q.next.push_back(q.next[static_cast<size_t>(q.initial)]);
        q.initial = fresh;
    }
    return trim(q);
}

bool is_empty_nonlambda(const Dwa& a) {
    const size_t nl = a.letters();
    std::vector<char> seen(a.state_count(), 0);
    std::deque<int> work;
    for (size_t l = 0; l < nl; ++l) work.push_back(a.next[static_cast<size_t>(a.initial)][l]);
    while (!work.empty()) {
        int q = work.front();
        work.pop_front();
        if (seen[static_cast<size_t>(q)]) continue;
        seen[static_cast<size_t>(q)] = 1;
        if (a.accepting[static_cast<size_t>(q)]) return false;
        for (size_t l = 0; l < nl; ++l) work.push_back(a.next[static_cast<size_t>(q)][l]);
    }
    return true;
}

std::optional<TupleWord> find_witness(const Dwa& a) {
    const size_t nl = a.letters();
    const size_t n = a.state_count();
    constexpr int kInf = -1;
    std::vector<int> dist(n, kInf);  // letters needed to reach acceptance
    std::vector<std::vector<std::vector<int>>> rev(nl, std::vector<std::vector<int>>(n));
    for (size_t q = 0; q < n; ++q)
        for (size_t l = 0; l < nl; ++l)
            rev[l][static_cast<size_t>(a.next[q][l])].push_back(static_cast<int>(q));
    std::deque<int> work;
    for (size_t q = 0; q < n; ++q)
        if (a.accepting[q]) {
            dist[q] = 0;
            work.push_back(static_cast<int>(q));
        }
    while (!work.empty()) {
        int q = work.front();
        work.pop_front();
        for (size_t l = 0; l < nl; ++l)
            for (int p : rev[l][static_cast<size_t>(q)])
                if (dist[static_cast<size_t>(p)] == kInf) {
                    dist[static_cast<size_t>(p)] = dist[static_cast<size_t>(q)] + 1;
                    work.push_back(p);
                }
    }

    int best = kInf;
    for (size_t l = 0; l < nl; ++l) {
        int d = dist[static_cast<size_t>(a.next[static_cast<size_t>(a.initial)][l])];
        if (d != kInf && (best == kInf || d + 1 < best)) best = d + 1;
    }
    if (best == kInf) return std::nullopt;

    auto is_sign_letter = [&](size_t l) {
        for (int t = 0; t < a.arity; ++t) {
            int d = letter_digit(l, t, a.arity, a.base);
            if (d != 0 && d != a.base - 1) return false;
        }
        return true;
    };
    size_t first = nl;
    for (int pass = 0; pass < 2 && first == nl; ++pass)
        for (size_t l = 0; l < nl; ++l) {
            if ((pass == 0) != is_sign_letter(l)) continue;
            int d = dist[static_cast<size_t>(a.next[static_cast<size_t>(a.initial)][l])];
            if (d != kInf && d + 1 == best) {
                first = l;
                break;
            }
        }

    TupleWord w(a.arity, a.base);
    w.push_letter(letter_digits(first, a.arity, a.base));
    int q = a.next[static_cast<size_t>(a.initial)][first];
    for (int remaining = best - 1; remaining > 0; --remaining) {
        for (size_t l = 0; l < nl; ++l) {
            int p = a.next[static_cast<size_t>(q)][l];
            if (dist[static_cast<size_t>(p)] == remaining - 1) {
                w.push_letter(letter_digits(l, a.arity, a.base));
                q = p;
                break;
            }
        }
    }
    return w;
}

bool equivalent(const Dwa& a, const Dwa& b) {
    if (a.arity != b.arity || a.base != b.base) return false;
    return is_empty_nonlambda(product(a, b, BoolOp::Xor));
}

namespace {

std::string pattern_text(const std::vector<int>& digits, const std::vector<char>& wild) {
    if (digits.empty()) return "()";
    std::string s;
    for (size_t t = 0; t < digits.size(); ++t) {
        if (t) s += ",";
        s += wild[t] ? "-" : std::to_string(digits[t]);
    }
    return s;
}

// Greedy wildcard cover of a letter set, most general patterns first.
std::vector<std::string> cover_patterns(const std::vector<char>& in_set, int arity, int base) {
    const size_t nl = in_set.size();
    std::vector<char> covered(nl, 0);
    size_t remaining = 0;
    for (size_t l = 0; l < nl; ++l)
        if (in_set[l]) ++remaining;

    std::vector<std::string> out;
    if (arity == 0) {
        if (remaining) out.push_back("()");
        return out;
    }

    std::vector<int> masks;
    for (int m = 0; m < (1 << arity); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](int x, int y) {
        int px = __builtin_popcount(static_cast<unsigned>(x));
        int py = __builtin_popcount(static_cast<unsigned>(y));
        return px != py ? px > py : x < y;
    });

    for (int mask : masks) {
        if (remaining == 0) break;
        std::vector<int> fixed_tracks, wild_tracks;
        std::vector<char> wild(static_cast<size_t>(arity), 0);
        for (int t = 0; t < arity; ++t) {
            if (mask & (1 << t)) {
                wild[static_cast<size_t>(t)] = 1;
                wild_tracks.push_back(t);
            } else {
                fixed_tracks.push_back(t);
            }
        }
        size_t fixed_space = 1;
        for (size_t i = 0; i < fixed_tracks.size(); ++i) fixed_space *= static_cast<size_t>(base);
        for (size_t fc = 0; fc < fixed_space; ++fc) {
            std::vector<int> digits(static_cast<size_t>(arity), 0);
            size_t rest = fc;
            for (auto it = fixed_tracks.rbegin(); it != fixed_tracks.rend(); ++it) {
                digits[static_cast<size_t>(*it)] = static_cast<int>(rest % static_cast<size_t>(base));
                rest /= static_cast<size_t>(base);
            }
            size_t wild_space = 1;
            for (size_t i = 0; i < wild_tracks.size(); ++i) wild_space *= static_cast<size_t>(base);
            bool all_in = true, any_new = false;
            std::vector<size_t> letters;
            letters.reserve(wild_space);
            for (size_t wc = 0; wc < wild_space && all_in; ++wc) {
                std::vector<int> full = digits;
                size_t r2 = wc;
                for (auto it = wild_tracks.rbegin(); it != wild_tracks.rend(); ++it) {
                    full[static_cast<size_t>(*it)] = static_cast<int>(r2 % static_cast<size_t>(base));
                    r2 /= static_cast<size_t>(base);
                }
                size_t li = letter_index(full, base);
                if (!in_set[li]) all_in = false;
                else {
                    letters.push_back(li);
                    if (!covered[li]) any_new = true;
                }
            }
            if (all_in && any_new) {
                out.push_back(pattern_text(digits, wild));
                for (size_t li : letters)
                    if (!covered[li]) {
                        covered[li] = 1;
                        --remaining;
                    }
            }
        }
    }
    return out;
}

}  // namespace

std::string to_dot(const Dwa& a) {
    std::ostringstream os;
    os << "digraph dwa {\n";
    for (size_t q = 0; q < a.state_count(); ++q) {
        os << "  q" << q << " [shape=" << (a.accepting[q] ? "doublecircle" : "circle");
        if (static_cast<int>(q) == a.initial) os << ", penwidth=2";
        os << "];\n";
    }
    const size_t nl = a.letters();
    for (size_t q = 0; q < a.state_count(); ++q) {
        std::map<int, std::vector<char>> by_target;
        for (size_t l = 0; l < nl; ++l) {
            auto& v = by_target[a.next[q][l]];
            if (v.empty()) v.assign(nl, 0);
            v[l] = 1;
        }
        for (auto& [to, set] : by_target) {
            std::vector<std::string> pats = cover_patterns(set, a.arity, a.base);
            os << "  q" << q << " -> q" << to << " [label=\"";
            for (size_t i = 0; i < pats.size(); ++i) {
                if (i) os << " | ";
                os << pats[i];
            }
            os << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string to_json_text(const Dwa& a) {
    nlohmann::json j;
    j["arity"] = a.arity;
    j["base"] = a.base;
    j["states"] = a.state_count();
    j["initial"] = a.initial;
    j["accepting"] = nlohmann::json::array();
    for (size_t q = 0; q < a.state_count(); ++q)
        if (a.accepting[q]) j["accepting"].push_back(q);
    j["transitions"] = nlohmann::json::array();
    const size_t nl = a.letters();
    for (size_t q = 0; q < a.state_count(); ++q)
        for (size_t l = 0; l < nl; ++l) {
            nlohmann::json t;
            t["from"] = q;
            t["letter"] = letter_digits(l, a.arity, a.base);
            t["to"] = a.next[q][l];
            j["transitions"].push_back(std::move(t));
        }
    return j.dump(2) + "\n";
}

Dwa from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Dwa a;
    a.arity = j.at("arity").get<int>();
    a.base = j.at("base").get<int>();
    size_t n = j.at("states").get<size_t>();
    a.initial = j.at("initial").get<int>();
    if (a.initial < 0 || static_cast<size_t>(a.initial) >= n)
        throw std::invalid_argument("initial state out of range");
    const size_t nl = letter_count(a.arity, a.base);
    a.accepting.assign(n, 0);
    for (const auto& q : j.at("accepting")) {
        size_t s = q.get<size_t>();
        if (s >= n) throw std::invalid_argument("accepting state out of range");
        a.accepting[s] = 1;
    }
    a.next.assign(n, std::vector<int>(nl, -1));
    for (const auto& t : j.at("transitions")) {
        size_t from = t.at("from").get<size_t>();
        size_t to = t.at("to").get<size_t>();
        if (from >= n || to >= n) throw std::invalid_argument("transition state out of range");
        std::vector<int> digits = t.at("letter").get<std::vector<int>>();
        if (static_cast<int>(digits.size()) != a.arity)
            throw std::invalid_argument("transition letter arity mismatch");
        a.next[from][letter_index(digits, a.base)] = static_cast<int>(to);
    }
    for (size_t q = 0; q < n; ++q)
        for (size_t l = 0; l < nl; ++l)
            if (a.next[q][l] < 0) throw std::invalid_argument("transition table incomplete");
    return a;
}

}  // namespace pdwa
