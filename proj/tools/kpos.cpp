#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "kpos/kpos.hpp"

using namespace kpos;

namespace {

// Exit codes: 0 success/pass, 1 verdict failure, 2 usage error, 3 internal
// invariant violation.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct GlobalOpts {
    bool pretty = false;
    uint64_t seed = 0;
    int jobs = 1;
};

void emit(const nlohmann::json& j, bool pretty) {
    if (pretty)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

size_t node_limit(size_t flag_value) {
    if (const char* env = std::getenv("KPOS_NODE_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
        throw InputError("KPOS_NODE_LIMIT must be a positive integer");
    }
    return flag_value;
}

int cmd_test(int n, int k, const std::string& young, bool path, const GlobalOpts& g) {
    YoungDiagram y = parse_young(young);
    if (path) {
        // straight row-by-row chain from empty to y
        std::vector<YoungDiagram> chain{YoungDiagram{}};
        std::vector<int> cur(y.rows.size(), 0);
        for (size_t r = 0; r < y.rows.size(); ++r)
            for (int c = 1; c <= y.rows[r]; ++c) {
                cur[r] = c;
                std::vector<int> rows(cur.begin(), cur.begin() + r + 1);
                chain.push_back(YoungDiagram(rows));
            }
        emit(path_report_to_json(fundamental_path(chain, n, k)), g.pretty);
    } else {
        emit(test_set_to_json(k_test_from_young(y, n, k)), g.pretty);
    }
    return kExitPass;
}

int cmd_verify(const std::string& matrix_path, int k, const std::string& test_path,
               const GlobalOpts& g) {
    RationalMatrix m = matrix_from_json(read_json_file(matrix_path));
    Verdict v;
    if (!test_path.empty()) {
        TestSet t = test_set_from_json(read_json_file(test_path));
        v = run_test(t, m);
    } else {
        if (k < 1 || k > m.n()) throw InputError("need --k in [1, n] or --test");
        PositivityVerdict pv = is_k_positive(m, k);
        v.passed = pv.positive;
        v.failing_minor = pv.failing;
        v.value = pv.value;
    }
    emit(verdict_to_json(v), g.pretty);
    return v.passed ? kExitPass : kExitFail;
}

int cmd_graph(int n, int k, size_t limit, bool restrict_to_initial, const std::string& dot_path,
              const std::string& jsonl_path, const GlobalOpts& g) {
    ComponentsResult res = components(n, k, node_limit(limit), restrict_to_initial);
    nlohmann::json comps = nlohmann::json::array();
    auto names = n == 3 ? letter_names_n3() : std::map<std::string, std::string>{};
    for (const auto& c : res.components)
        comps.push_back({{"size", c.size}, {"sample", cluster_display_name(c.sample, names)}});
    emit({{"total_clusters", res.total_clusters},
          {"truncated", res.truncated},
          {"components", comps}},
         g.pretty);
    if (!dot_path.empty() || !jsonl_path.empty()) {
        ExchangeGraph graph =
            restrict_to_initial
                ? explore(make_full_k_seed(tp_seed(n), n, k), node_limit(limit))
                : explore(tp_seed(n), node_limit(limit));
        if (!dot_path.empty()) std::ofstream(dot_path) << graph_to_dot(graph, names);
        if (!jsonl_path.empty()) std::ofstream(jsonl_path) << graph_to_jsonl(graph, names);
    }
    return kExitPass;
}

int cmd_witness(int k, int n, const std::string& anchor, const std::string& eps,
                const GlobalOpts& g) {
    WitnessSpec spec;
    spec.k = k;
    spec.n = n;
    size_t comma = anchor.find(',');
    if (comma == std::string::npos) throw InputError("--anchor expects \"row,col\"");
    spec.row = std::stoi(anchor.substr(0, comma));
    spec.col = std::stoi(anchor.substr(comma + 1));
    if (!eps.empty()) spec.epsilon = parse_rational(eps);
    WitnessResult r = witness_matrix(spec);
    emit({{"matrix", matrix_to_json(r.matrix)},
          {"companion", matrix_to_json(r.companion)},
          {"epsilon", rational_str(r.epsilon)},
          {"shrink_steps", r.shrink_steps},
          {"target", minor_id_to_json(r.target)},
          {"certified", true}},
         g.pretty);
    return kExitPass;
}

int cmd_diagram(int n, const std::string& word_text, const std::string& render,
                const GlobalOpts& g) {
    WiringWord w = parse_word(word_text, n);
    ValidationReport rep = word_validate(w);
    if (!rep.ok)
        throw InputError("invalid word at token " + std::to_string(rep.first_violation) + ": " +
                         rep.reason);
    if (render == "ascii") {
        std::cout << render_ascii(w);
    } else if (render == "svg") {
        std::cout << render_svg(w);
    } else if (render == "seed") {
        emit(seed_to_json(diagram_seed(w)), g.pretty);
    } else {
        throw InputError("--render must be ascii, svg, or seed");
    }
    return kExitPass;
}

int cmd_mutate(const std::string& seed_path, const std::vector<int>& vertices,
               const GlobalOpts& g) {
    Seed s = seed_from_json(read_json_file(seed_path));
    for (int v : vertices) s = mutate_seed(s, v);
    emit(seed_to_json(s), g.pretty);
    return kExitPass;
}

int cmd_falsify(int n, int k, const std::string& young, size_t budget, const GlobalOpts& g) {
    TestSet t = k_test_from_young(parse_young(young), n, k);
    auto hit = falsify_test(t, budget, g.seed, g.jobs);
    nlohmann::json out = {{"budget", budget}, {"found", hit.has_value()}};
    if (hit) out["counterexample"] = matrix_to_json(*hit);
    emit(out, g.pretty);
    // Absence of a counterexample is never a proof; both outcomes are success.
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-positivity test synthesis toolkit"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_flag("--pretty", g.pretty, "human-readable JSON");
    app.add_option("--seed", g.seed, "rng seed for randomized commands");
    app.add_option("--jobs", g.jobs, "worker threads for searches");

    int n = 3, k = 2;
    std::string young, matrix_path, test_path, anchor = "1,1", eps, word = "lexmin",
                render = "ascii", dot_path, jsonl_path, seed_path;
    bool path = false, restrict_to_initial = false;
    size_t limit = 100000, budget = 10000;
    std::vector<int> vertices;

    CLI::App* t = app.add_subcommand("test", "emit a k-positivity test from a Young diagram");
    t->add_option("--n", n)->required();
    t->add_option("--k", k)->required();
    t->add_option("--young", young);
    t->add_flag("--path", path, "emit the full fundamental-path report");

    CLI::App* v = app.add_subcommand("verify", "evaluate a test or the k-positivity oracle");
    v->add_option("--matrix", matrix_path)->required();
    v->add_option("--k", k);
    v->add_option("--test", test_path);

    CLI::App* gr = app.add_subcommand("graph", "exchange-graph components");
    gr->add_option("--n", n)->required();
    gr->add_option("--k", k)->required();
    gr->add_option("--limit", limit);
    gr->add_flag("--restrict", restrict_to_initial, "component of the k-initial minors seed");
    gr->add_option("--dot", dot_path);
    gr->add_option("--jsonl", jsonl_path);

    CLI::App* wi = app.add_subcommand("witness", "k-essentiality witness matrix");
    wi->add_option("--k", k)->required();
    wi->add_option("--n", n)->required();
    wi->add_option("--anchor", anchor);
    wi->add_option("--epsilon", eps);

    CLI::App* di = app.add_subcommand("diagram", "render a double wiring diagram");
    di->add_option("--n", n)->required();
    di->add_option("--word", word);
    di->add_option("--render", render);

    CLI::App* mu = app.add_subcommand("mutate", "apply a mutation sequence to a seed");
    mu->add_option("--seed-file", seed_path)->required();
    mu->add_option("--at", vertices, "vertex ids, applied in order");

    CLI::App* fa = app.add_subcommand("falsify", "hunt counterexamples to a test");
    fa->add_option("--n", n)->required();
    fa->add_option("--k", k)->required();
    fa->add_option("--young", young);
    fa->add_option("--budget", budget);

    // Let --pretty/--seed/--jobs be given after the subcommand name too.
    for (CLI::App* sub : {t, v, gr, wi, di, mu, fa}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (t->parsed()) return cmd_test(n, k, young, path, g);
        if (v->parsed()) return cmd_verify(matrix_path, k, test_path, g);
        if (gr->parsed()) return cmd_graph(n, k, limit, restrict_to_initial, dot_path, jsonl_path, g);
        if (wi->parsed()) return cmd_witness(k, n, anchor, eps, g);
        if (di->parsed()) return cmd_diagram(n, word, render, g);
        if (mu->parsed()) return cmd_mutate(seed_path, vertices, g);
        if (fa->parsed()) return cmd_falsify(n, k, young, budget, g);
        return kExitUsage;
    } catch (const DivisibilityError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
