#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "pdwa/atoms.hpp"
#include "pdwa/automaton.hpp"
#include "pdwa/formula.hpp"
#include "pdwa/qelim.hpp"

using namespace pdwa;

namespace {

struct Built {
    Parsed parsed;
    Dwa dwa;
};

// Parses a single atom whose variables, in first-occurrence order, become the
// automaton tracks 0..r-1.
Built atom_dwa(const std::string& src, int arity, int base = 2) {
    Built b{parse(src), {}};
    b.dwa = build_atom(*b.parsed.phi, arity, base);
    return b;
}

TupleWord enc(const std::vector<long>& z, int base = 2) {
    std::vector<Int> v(z.begin(), z.end());
    return encode_int(v, base);
}

// all words of length exactly n, lexicographic by letter index
template <typename F>
void for_words(int arity, int base, size_t max_len, F&& f) {
    size_t letters = letter_count(arity, base);
    for (size_t n = 1; n <= max_len; ++n) {
        std::vector<size_t> idx(n, 0);
        while (true) {
            TupleWord w(arity, base);
            for (size_t i = 0; i < n; ++i) w.push_letter(letter_digits(idx[i], arity, base));
            f(w);
            size_t i = n;
            while (i > 0 && ++idx[i - 1] == letters) idx[--i] = 0;
            if (i == 0) break;
        }
    }
}

// membership must agree with direct arithmetic on the decoded tuple
void check_against_arithmetic(const Built& b, size_t max_len) {
    std::vector<int> fv = free_vars(b.parsed.phi);
    for_words(b.dwa.arity, b.dwa.base, max_len, [&](const TupleWord& w) {
        std::vector<Int> z = decode_int(w);
        std::map<int, Int> env;
        for (int t = 0; t < b.dwa.arity; ++t) env[t] = z[t];
        bool want = eval_qf(b.parsed.phi, env);
        bool got = membership(b.dwa, w);
        if (want != got) {
            CAPTURE(word_text(w));
            CHECK(want == got);
        }
    });
}

}  // namespace

TEST_CASE("set automata structurally reject the empty word") {
    for (auto& src : {"x > 0", "x = 0", "x != 3", "3 divides x"}) {
        Built b = atom_dwa(src, 1);
        CAPTURE(src);
        CHECK_FALSE(membership(b.dwa, TupleWord(1, 2)));
        CHECK(initial_has_no_incoming(b.dwa));
        CHECK_FALSE(b.dwa.accepting[b.dwa.initial]);
        CHECK_NOTHROW(assert_represents_set(b.dwa));
    }
}

TEST_CASE("membership follows the transition table") {
    SUBCASE("single accepting state looping on every letter accepts everything") {
        Dwa one;
        one.arity = 1;
        one.base = 2;
        one.initial = 0;
        one.accepting = {1};
        one.next = {{0, 0}};
        for_words(1, 2, 5, [&](const TupleWord& w) { CHECK(membership(one, w)); });
    }
    SUBCASE("doubling relation accepts exactly the pairs y = 2x") {
        Built b = atom_dwa("2*x = y", 2);
        CHECK(membership(b.dwa, enc({3, 6})));
        CHECK(membership(b.dwa, enc({-5, -10})));
        CHECK_FALSE(membership(b.dwa, enc({3, 5})));
        for (long x = -32; x <= 32; ++x) {
            CHECK(membership(b.dwa, enc({x, 2 * x})));
            CHECK_FALSE(membership(b.dwa, enc({x, 2 * x + 1})));
        }
    }
}

TEST_CASE("automata agree with direct arithmetic on every short word") {
    check_against_arithmetic(atom_dwa("x > 0", 1), 6);
    check_against_arithmetic(atom_dwa("x = 0", 1), 6);
    check_against_arithmetic(atom_dwa("3 divides x + 1", 1), 6);
    check_against_arithmetic(atom_dwa("x - y > 2", 2), 6);
    check_against_arithmetic(atom_dwa("2*x = y", 2), 6);
    check_against_arithmetic(atom_dwa("x + y = 1", 2), 6);
    check_against_arithmetic(atom_dwa("x <= 0", 1), 6);
    check_against_arithmetic(atom_dwa("x != 0", 1), 6);
    // base 3 spot check
    check_against_arithmetic(atom_dwa("x - y > 2", 2, 3), 4);
}

TEST_CASE("product implements boolean combinations of languages") {
    Built pos = atom_dwa("x > 0", 1);
    Built lt2 = atom_dwa("x < 2", 1);
    Built one = atom_dwa("x = 1", 1);

    SUBCASE("conjunction with itself changes nothing") {
        CHECK(equivalent(product(pos.dwa, pos.dwa, BoolOp::And), pos.dwa));
    }
    SUBCASE("conjunction with the complement is empty") {
        Dwa never = product(pos.dwa, complement_set(pos.dwa), BoolOp::And);
        CHECK(is_empty_nonlambda(never));
        CHECK_FALSE(find_witness(never).has_value());
    }
    SUBCASE("0 < x < 2 pins x = 1") {
        Dwa band = product(pos.dwa, lt2.dwa, BoolOp::And);
        CHECK(equivalent(band, one.dwa));
        for_words(1, 2, 8, [&](const TupleWord& w) {
            CHECK(membership(band, w) == membership(one.dwa, w));
        });
    }
    SUBCASE("state count bounded by the product of the operand sizes") {
        Built cmp = atom_dwa("x - y > 2", 2);
        Built dbl = atom_dwa("2*x = y", 2);
        for (BoolOp op : {BoolOp::And, BoolOp::Or, BoolOp::Xor, BoolOp::Implies, BoolOp::Iff}) {
            Dwa c = product(cmp.dwa, dbl.dwa, op);
            CHECK(c.state_count() <= cmp.dwa.state_count() * dbl.dwa.state_count());
        }
    }
    SUBCASE("xor of a language with itself is empty") {
        CHECK(is_empty_nonlambda(product(lt2.dwa, lt2.dwa, BoolOp::Xor)));
    }
}

TEST_CASE("complement_set flips membership for every nonempty word") {
    Built zero = atom_dwa("x = 0", 1);
    Dwa nonzero = complement_set(zero.dwa);
    CHECK(membership(nonzero, enc({1})));
    CHECK_FALSE(membership(nonzero, enc({0})));
    CHECK_FALSE(membership(nonzero, TupleWord(1, 2)));
    CHECK(equivalent(complement_set(nonzero), zero.dwa));

    Built gap = atom_dwa("x - y > 32", 2);
    Dwa leq = complement_set(gap.dwa);
    for_words(2, 2, 7, [&](const TupleWord& w) {
        std::vector<Int> z = decode_int(w);
        CHECK(membership(leq, w) == (z[0] - z[1] <= 32));
    });
}

TEST_CASE("cylindrify adds an ignored track") {
    Built pos = atom_dwa("x > 0", 1);
    Dwa cyl = cylindrify(pos.dwa, 1);
    CHECK(cyl.arity == 2);
    CHECK(cyl.state_count() == pos.dwa.state_count());
    for (long y : {-3L, 0L, 7L}) {
        CHECK(membership(cyl, enc({5, y})));
        CHECK_FALSE(membership(cyl, enc({-1, y})));
    }
    SUBCASE("projecting the fresh track away restores the language") {
        Dwa back = minimize(determinize(project_exists(cyl, 1)));
        CHECK(equivalent(back, pos.dwa));
    }
    SUBCASE("inserting at the front shifts the original track") {
        Dwa front = cylindrify(pos.dwa, 0);
        CHECK(membership(front, enc({9, 5})));
        CHECK_FALSE(membership(front, enc({9, -5})));
    }
    CHECK_THROWS_AS(cylindrify(pos.dwa, 3), std::invalid_argument);
}

TEST_CASE("project_exists quantifies one track away") {
    SUBCASE("every integer has a double") {
        Built dbl = atom_dwa("2*x = y", 2);
        Dwa any = determinize(project_exists(dbl.dwa, 1));
        for_words(1, 2, 8, [&](const TupleWord& w) { CHECK(membership(any, w)); });
        CHECK_FALSE(membership(any, TupleWord(1, 2)));
    }
    SUBCASE("projecting a pinned conjunct leaves the other value") {
        Built x5 = atom_dwa("x = 5", 1);
        Built y7 = atom_dwa("y = 7", 1);
        Dwa both = product(cylindrify(x5.dwa, 1), cylindrify(y7.dwa, 0), BoolOp::And);
        Dwa just7 = minimize(determinize(project_exists(both, 0)));
        CHECK(equivalent(just7, y7.dwa));
    }
    SUBCASE("witnesses longer than the remaining tracks are not lost") {
        Built gt = atom_dwa("x - y > 0", 2);
        Dwa any = determinize(project_exists(gt.dwa, 0));
        for_words(1, 2, 8, [&](const TupleWord& w) { CHECK(membership(any, w)); });
        for (long y = -16; y <= 16; ++y) CHECK(membership(any, enc({y})));
    }
    CHECK_THROWS_AS(project_exists(atom_dwa("x > 0", 1).dwa, 1), std::invalid_argument);
}

TEST_CASE("determinize performs the subset construction") {
    Built pos = atom_dwa("x > 0", 1);
    SUBCASE("a deterministic input survives unchanged") {
        Nfa n;
        n.arity = pos.dwa.arity;
        n.base = pos.dwa.base;
        n.initials = {pos.dwa.initial};
        n.accepting = pos.dwa.accepting;
        n.next.resize(pos.dwa.state_count());
        for (size_t q = 0; q < pos.dwa.state_count(); ++q)
            for (size_t l = 0; l < pos.dwa.letters(); ++l) n.next[q].push_back({pos.dwa.next[q][l]});
        Dwa d = determinize(n);
        CHECK(d.state_count() == pos.dwa.state_count());
        CHECK(equivalent(d, pos.dwa));
    }
    SUBCASE("an NFA without accepting states determinizes to an empty language") {
        Nfa n;
        n.arity = 1;
        n.base = 2;
        n.initials = {0};
        n.accepting = {0};
        n.accepting[0] = 0;
        n.next = {{{0}, {0}}};
        Dwa d = determinize(n);
        CHECK(is_empty_nonlambda(d));
        CHECK(d.state_count() <= 2);
    }
}

TEST_CASE("minimize reaches the unique minimal automaton") {
    Built gap = atom_dwa("x - y > 32", 2);
    SUBCASE("clamped construction minimizes to thirteen states") {
        Bounds b = tightest_bounds(gap.parsed.phi->cmp);
        Dwa bounded = build_bounded(gap.parsed.phi->cmp, 2, 2, b.small, b.large);
        Dwa m = minimize(bounded);
        CHECK(m.state_count() == 13);
        CHECK(equivalent(m, bounded));
        CHECK(minimize(m).state_count() == m.state_count());
        CHECK(initial_has_no_incoming(m));
        CHECK_NOTHROW(assert_represents_set(m));
    }
    SUBCASE("duplicate accepting sinks are merged") {
        Dwa dup;
        dup.arity = 1;
        dup.base = 2;
        dup.initial = 0;
        dup.accepting = {0, 1, 1};
        dup.next = {{1, 2}, {1, 1}, {2, 2}};
        Dwa m = minimize(dup);
        CHECK(m.state_count() == 2);
        CHECK(equivalent(m, dup));
    }
    SUBCASE("unreachable states are dropped before refinement") {
        Dwa junk;
        junk.arity = 1;
        junk.base = 2;
        junk.initial = 0;
        junk.accepting = {0, 1, 0, 1};
        junk.next = {{1, 1}, {1, 1}, {3, 3}, {3, 3}};
        CHECK(trim(junk).state_count() == 2);
        CHECK(minimize(junk).state_count() == 2);
    }
}

TEST_CASE("emptiness and shortest witnesses") {
    CHECK(is_empty_nonlambda(build_false(1, 2)));
    CHECK_FALSE(find_witness(build_false(1, 2)).has_value());
    CHECK_FALSE(is_empty_nonlambda(build_true(1, 2)));

    auto w0 = find_witness(atom_dwa("x = 0", 1).dwa);
    REQUIRE(w0.has_value());
    CHECK(word_text(*w0) == "0");

    auto wm3 = find_witness(atom_dwa("x = -3", 1).dwa);
    REQUIRE(wm3.has_value());
    CHECK(word_text(*wm3) == "1;0;1");
    CHECK(decode_int(*wm3) == std::vector<Int>{-3});

    auto wpos = find_witness(atom_dwa("x > 0", 1).dwa);
    REQUIRE(wpos.has_value());
    CHECK(word_text(*wpos) == "0;1");
}

TEST_CASE("equivalence is a symmetric-difference emptiness check") {
    Built zero = atom_dwa("x = 0", 1);
    CHECK(equivalent(zero.dwa, zero.dwa));
    CHECK_FALSE(equivalent(zero.dwa, complement_set(zero.dwa)));
    Built viaLe = atom_dwa("x <= 0", 1);
    Built viaLt = atom_dwa("x < 1", 1);
    CHECK(equivalent(viaLe.dwa, viaLt.dwa));
    CHECK_FALSE(equivalent(viaLe.dwa, zero.dwa));
}

TEST_CASE("membership is a function of the decoded tuple only") {
    std::vector<Built> subjects;
    subjects.push_back(atom_dwa("x - y > 2", 2));
    subjects.push_back(atom_dwa("2*x = y", 2));
    subjects.push_back(atom_dwa("3 divides x + 1", 1));
    for (auto& b : subjects) {
        for_words(b.dwa.arity, b.dwa.base, 4, [&](const TupleWord& w) {
            bool base_result = membership(b.dwa, w);
            for (size_t k = 1; k <= 3; ++k)
                CHECK(membership(b.dwa, sign_extend(w, k)) == base_result);
        });
    }
    SUBCASE("nonzero sign digits are interchangeable") {
        Built b3 = atom_dwa("x - y > 2", 2, 3);
        for_words(2, 3, 4, [&](const TupleWord& w) {
            TupleWord swapped = w;
            for (int t = 0; t < 2; ++t)
                if (swapped.digits[t] != 0) swapped.digits[t] = 3 - swapped.digits[t];
            CHECK(membership(b3.dwa, swapped) == membership(b3.dwa, w));
        });
    }
}

TEST_CASE("dot export is deterministic and mirrors the state count") {
    SUBCASE("one-state automaton renders as a fixed four-line digraph") {
        Dwa one;
        one.arity = 1;
        one.base = 2;
        one.initial = 0;
        one.accepting = {1};
        one.next = {{0, 0}};
        CHECK(to_dot(one) ==
              "digraph dwa {\n"
              "  q0 [shape=doublecircle, penwidth=2];\n"
              "  q0 -> q0 [label=\"-\"];\n"
              "}\n");
    }
    SUBCASE("the minimized comparison automaton renders thirteen nodes") {
        Built gap = atom_dwa("x - y > 32", 2);
        Dwa m = minimize(build_atom(*gap.parsed.phi, 2, 2));
        std::string dot = to_dot(m);
        CHECK(dot == to_dot(m));
        size_t nodes = 0;
        for (size_t pos = dot.find("[shape="); pos != std::string::npos;
             pos = dot.find("[shape=", pos + 1))
            ++nodes;
        CHECK(nodes == 13);
    }
}

TEST_CASE("json serialization round trips") {
    Built gap = atom_dwa("x - y > 32", 2);
    std::string text = to_json_text(gap.dwa);
    Dwa back = from_json_text(text);
    CHECK(back.arity == gap.dwa.arity);
    CHECK(back.base == gap.dwa.base);
    CHECK(back.state_count() == gap.dwa.state_count());
    CHECK(equivalent(back, gap.dwa));
    CHECK(to_json_text(back) == text);

    CHECK_THROWS_AS(from_json_text("{not json"), std::exception);
    CHECK_THROWS_AS(from_json_text("{\"arity\": 1}"), std::exception);
}
