#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdwa/corpus.hpp"
#include "pdwa/engine.hpp"
#include "pdwa/qelim.hpp"

using nlohmann::json;
using namespace pdwa;

namespace {

std::string load_source(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::runtime_error("cannot open " + arg.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

int env_base() {
    if (const char* e = std::getenv("PDWA_BASE")) {
        int b = std::atoi(e);
        if (b < 2 || b > 10) throw std::runtime_error("PDWA_BASE must be in [2,10]");
        return b;
    }
    return 2;
}

json metrics_json(const MetricsReport& m) {
    return {{"length_linear", m.length_linear.get_str()},
            {"length_log", m.length_log.get_str()},
            {"qn", m.qn},
            {"qa", m.qa},
            {"qbl", m.qbl},
            {"terms", m.t_count},
            {"divisibilities", m.d_count},
            {"max_coef", m.max_coef.get_str()},
            {"max_div", m.max_div.get_str()},
            {"max_const", m.max_const.get_str()}};
}

json trace_json(const QeTrace& trace, const VarPool& vars) {
    json steps = json::array();
    for (auto& s : trace.steps)
        steps.push_back({{"variable", vars.name(s.var)},
                         {"lcm", s.lcm.get_str()},
                         {"lower_bound_atoms", s.b_count},
                         {"disjuncts", s.disjuncts},
                         {"before", metrics_json(s.before)},
                         {"after", metrics_json(s.after)}});
    return steps;
}

// words of every length up to maxlen, compared against the evaluator
bool oracle_sweep(const Dwa& d, const Fptr& psi, const std::vector<int>& order, int maxlen,
                  size_t& checked, std::string& mismatch) {
    size_t letters = d.letters();
    double total = 0, power = 1;
    for (int k = 1; k <= maxlen; ++k) total += power *= (double)letters;
    if (total > 5e7) throw std::runtime_error("oracle sweep too large; lower --max-word-len");
    std::map<int, Int> asg;
    for (int k = 1; k <= maxlen; ++k) {
        std::vector<size_t> idx((size_t)k, 0);
        while (true) {
            TupleWord w(d.arity, d.base);
            for (size_t i : idx) w.push_letter(letter_digits(i, d.arity, d.base));
            std::vector<Int> z = decode_int(w);
            for (size_t i = 0; i < order.size(); ++i) asg[order[i]] = z[i];
            ++checked;
            if (membership(d, w) != eval_qf(psi, asg)) {
                mismatch = word_text(w);
                return false;
            }
            size_t p = idx.size();
            while (p > 0 && ++idx[p - 1] == letters) idx[--p] = 0;
            if (p == 0) break;
        }
    }
    return true;
}

struct ItemOutcome {
    json payload;
    bool pass = false;
};

// full verdict for one formula: both backends, grid samples, growth bounds,
// size bounds
ItemOutcome run_item(const Fptr& phi, VarPool& vars, const CompileOptions& base_opts,
                     bool inject_fault) {
    ItemOutcome out;
    CrosscheckReport cr = crosscheck(phi, vars, base_opts, inject_fault);

    QeTrace trace;
    Fptr psi = eliminate_all(phi, vars, &trace);
    BoundsReport br = check_bounds(phi, psi, trace);
    SizeLedger led = size_report(phi, vars, base_opts);

    json bounds = json::array();
    for (auto& c : br.checks)
        bounds.push_back({{"name", c.name},
                          {"measured", c.measured.get_str()},
                          {"bound", c.bound_text},
                          {"pass", c.pass}});
    bounds.push_back(
        {{"name", "final_size_vs_main_bound"},
         {"measured", std::to_string(led.final_size)},
         {"bound",
          led.main_bound_materialized ? led.main_bound.get_str() : "astronomically large"},
         {"pass", led.main_bound_pass}});
    if (led.qf_bound_present)
        bounds.push_back({{"name", "final_size_vs_qf_bound"},
                          {"measured", std::to_string(led.final_size)},
                          {"bound", led.qf_bound.get_str()},
                          {"pass", led.qf_bound_pass}});

    json verdicts = json::array();
    verdicts.push_back({{"name", "languages_equal"}, {"pass", cr.languages_equal}});
    verdicts.push_back({{"name", "grid_samples"},
                        {"checked", cr.samples_checked},
                        {"mismatches", cr.sample_mismatches},
                        {"pass", cr.sample_mismatches == 0}});

    out.pass = cr.pass && br.all_pass && led.main_bound_pass && led.qf_bound_pass;
    out.payload = {{"formula", cr.formula},
                   {"engine_sizes",
                    {{"automata", cr.automata_size}, {"qe_then_automata", cr.qe_automata_size}}},
                   {"bounds", bounds},
                   {"verdicts", verdicts},
                   {"pass", out.pass}};
    return out;
}

void print_item_text(const json& p) {
    std::cout << "formula: " << p["formula"].get<std::string>() << "\n";
    std::cout << "engine sizes: automata=" << p["engine_sizes"]["automata"]
              << " qe_then_automata=" << p["engine_sizes"]["qe_then_automata"] << "\n";
    for (auto& v : p["verdicts"]) {
        std::cout << "verdict " << v["name"].get<std::string>() << ": "
                  << (v["pass"].get<bool>() ? "ok" : "MISMATCH");
        if (v.contains("checked"))
            std::cout << " (" << v["checked"] << " checked, " << v["mismatches"]
                      << " mismatches)";
        std::cout << "\n";
    }
    for (auto& b : p["bounds"])
        std::cout << "bound " << b["name"].get<std::string>() << ": measured="
                  << b["measured"].get<std::string>() << " bound=" << b["bound"].get<std::string>()
                  << " " << (b["pass"].get<bool>() ? "ok" : "FAIL") << "\n";
    std::cout << (p["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic word automata for linear integer arithmetic"};
    app.require_subcommand(1);

    std::string formula_arg;
    int base = 0;  // 0 = use PDWA_BASE or 2
    bool no_min_steps = false;
    std::string engine_name = "automata";

    auto add_common = [&](CLI::App* cmd, bool takes_formula) {
        if (takes_formula)
            cmd->add_option("formula", formula_arg, "formula text or @file")->required();
        cmd->add_option("--base", base, "encoding base (2..10); PDWA_BASE overrides the default")
            ->check(CLI::Range(2, 10));
        cmd->add_flag("--no-minimize-steps", no_min_steps,
                      "skip minimization between construction steps");
    };

    auto* cmd_decide = app.add_subcommand("decide", "decide a sentence; exit 0=TRUE 1=FALSE");
    add_common(cmd_decide, true);
    cmd_decide->add_option("--engine", engine_name, "automata | qe")
        ->check(CLI::IsMember({"automata", "qe"}));

    bool out_dot = false, out_json = false;
    int max_word_len = 0;
    auto* cmd_build = app.add_subcommand("build", "compile a formula to an automaton");
    add_common(cmd_build, true);
    cmd_build->add_option("--engine", engine_name, "automata | qe")
        ->check(CLI::IsMember({"automata", "qe"}));
    auto* dot_flag = cmd_build->add_flag("--dot", out_dot, "print the automaton as DOT");
    cmd_build->add_flag("--json", out_json, "print the automaton as JSON")->excludes(dot_flag);
    cmd_build->add_option("--max-word-len", max_word_len,
                          "cross-check the language against the evaluator on all words up to "
                          "this length")
        ->check(CLI::Range(0, 16));

    bool want_trace = false;
    auto* cmd_qe = app.add_subcommand("qe", "eliminate all quantifiers");
    add_common(cmd_qe, true);
    cmd_qe->add_flag("--trace", want_trace, "print a JSON trace instead of plain text");

    bool cc_json = false, inject_fault = false;
    auto* cmd_cc = app.add_subcommand("crosscheck", "compare both backends on one formula");
    add_common(cmd_cc, true);
    cmd_cc->add_flag("--json", cc_json, "JSON report");
    cmd_cc->add_flag("--inject-fault", inject_fault, "corrupt one backend (negative control)")
        ->group("");  // hidden

    uint64_t seed = 42;
    size_t corpus_count = 60;
    bool corpus_json = false;
    auto* cmd_corpus = app.add_subcommand("corpus", "run the seeded random corpus");
    cmd_corpus->add_option("--seed", seed, "corpus RNG seed");
    cmd_corpus->add_option("--count", corpus_count, "number of formulas")
        ->check(CLI::Range((size_t)1, (size_t)500));
    cmd_corpus->add_flag("--json", corpus_json, "JSON report");
    cmd_corpus->add_flag("--no-minimize-steps", no_min_steps,
                         "skip minimization between construction steps");

    int mult_m = 4;
    auto* cmd_mult = app.add_subcommand("bench-mult", "multiplication-table lower bound");
    cmd_mult->add_option("-m,--m", mult_m, "operand digit count")->check(CLI::Range(0, 8));
    cmd_mult->add_option("--base", base, "encoding base (2..10)")->check(CLI::Range(2, 10));

    CLI11_PARSE(app, argc, argv);

    try {
        if (base == 0) base = env_base();
        CompileOptions opts;
        opts.base = base;
        opts.minimize_each_step = !no_min_steps;
        opts.backend = engine_name == "qe" ? Backend::QeThenAutomata : Backend::Automata;

        if (app.got_subcommand(cmd_decide)) {
            Parsed p = parse(load_source(formula_arg));
            bool v = decide(p.phi, p.vars, opts);
            std::cout << (v ? "TRUE" : "FALSE") << "\n";
            return v ? 0 : 1;
        }

        if (app.got_subcommand(cmd_build)) {
            Parsed p = parse(load_source(formula_arg));
            Dwa d = minimize(compile(p.phi, p.vars, opts));
            std::ostream& count_out = (out_dot || out_json) ? std::cerr : std::cout;
            count_out << "states: " << d.state_count() << "\n";
            if (out_dot) std::cout << to_dot(d);
            if (out_json) std::cout << to_json_text(d);
            if (max_word_len > 0) {
                Fptr psi = is_quantifier_free(p.phi) ? p.phi : eliminate_all(p.phi, p.vars);
                size_t checked = 0;
                std::string bad;
                if (!oracle_sweep(d, psi, free_vars(p.phi), max_word_len, checked, bad)) {
                    std::cerr << "oracle mismatch on word " << bad << "\n";
                    return 1;
                }
                count_out << "oracle: OK (" << checked << " words)\n";
            }
            return 0;
        }

        if (app.got_subcommand(cmd_qe)) {
            Parsed p = parse(load_source(formula_arg));
            QeTrace trace;
            Fptr psi = eliminate_all(p.phi, p.vars, &trace);
            if (want_trace) {
                json j = {{"result", formula_text(psi, p.vars)},
                          {"steps", trace_json(trace, p.vars)}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << formula_text(psi, p.vars) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(cmd_cc)) {
            Parsed p = parse(load_source(formula_arg));
            ItemOutcome r = run_item(p.phi, p.vars, opts, inject_fault);
            if (cc_json)
                std::cout << r.payload.dump(2) << "\n";
            else
                print_item_text(r.payload);
            return r.pass ? 0 : 1;
        }

        if (app.got_subcommand(cmd_corpus)) {
            CorpusSet set = make_corpus(seed, corpus_count);
            size_t passed = 0;
            json items = json::array();
            for (auto& item : set.items) {
                CompileOptions o = opts;
                o.base = item.base;
                ItemOutcome r = run_item(item.phi, set.vars, o, false);
                if (r.pass) ++passed;
                if (corpus_json) {
                    r.payload["id"] = item.id;
                    r.payload["base"] = item.base;
                    r.payload["prenex"] = item.prenex;
                    items.push_back(std::move(r.payload));
                } else {
                    std::cout << "id=" << item.id << " base=" << item.base
                              << " prenex=" << (item.prenex ? 1 : 0)
                              << " sizes=" << r.payload["engine_sizes"]["automata"] << "/"
                              << r.payload["engine_sizes"]["qe_then_automata"]
                              << " verdict=" << (r.pass ? "PASS" : "FAIL")
                              << " formula: " << r.payload["formula"].get<std::string>() << "\n";
                }
            }
            bool all = passed == set.items.size();
            if (corpus_json) {
                json j = {{"seed", seed},
                          {"count", set.items.size()},
                          {"passed", passed},
                          {"items", items},
                          {"pass", all}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "corpus: " << passed << "/" << set.items.size()
                          << (all ? " PASS" : " FAIL") << "\n";
            }
            return all ? 0 : 1;
        }

        if (app.got_subcommand(cmd_mult)) {
            Dwa d = build_mult(mult_m, base);
            Int bound = pow_int(Int(base), (unsigned long)mult_m);
            Int raw = pow_int(Int(base), 4 * (unsigned long)mult_m) + 2;
            bool ok = Int((long)d.state_count()) >= bound;
            std::cout << "m=" << mult_m << " base=" << base << " raw=" << raw.get_str()
                      << " minimized=" << d.state_count() << " bound=" << bound.get_str() << "\n";
            std::cout << "minimized >= " << bound.get_str() << ": " << (ok ? "PASS" : "FAIL")
                      << "\n";
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
