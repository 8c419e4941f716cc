#include "msidon/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msidon/graphs.hpp"
#include "msidon/numtheory.hpp"
#include "msidon/productfree.hpp"
#include "msidon/sidon.hpp"

namespace msidon {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// cpp_int to JSON: plain number while it fits an unsigned 64-bit value,
// decimal string beyond that so nothing is silently rounded.
ordered_json big_to_json(const BigInt& v) {
    if (v >= 0 && v <= BigInt(UINT64_MAX)) return ordered_json(v.convert_to<u64>());
    return ordered_json(v.str());
}

struct OutputConfig {
    std::string format = "json";  // json | csv | text
};

void emit_scalar_report(const ordered_json& j, const OutputConfig& cfg, std::ostream& out) {
    if (cfg.format == "json") {
        out << j.dump() << '\n';
        return;
    }
    // csv/text renderings flatten one level; nested values stay JSON-encoded
    if (cfg.format == "csv") {
        bool first = true;
        for (auto& [key, value] : j.items()) {
            out << (first ? "" : ",") << key;
            first = false;
        }
        out << '\n';
        first = true;
        for (auto& [key, value] : j.items()) {
            out << (first ? "" : ",") << (value.is_string() ? value.get<std::string>() : value.dump());
            first = false;
        }
        out << '\n';
        return;
    }
    for (auto& [key, value] : j.items())
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

std::vector<u64> parse_set_literal(const std::string& text) {
    std::vector<u64> out;
    std::string tok;
    std::istringstream ss(text);
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        long long v = std::stoll(tok);
        if (v < 1) throw CLI::ValidationError("--set", "elements must be >= 1");
        out.push_back(u64(v));
    }
    if (out.empty()) throw CLI::ValidationError("--set", "empty set literal");
    return out;
}

SmallGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return SmallGraph::read(in);
}

ordered_json violation_to_json(const Violation& v) {
    ordered_json j;
    j["k"] = v.k;
    j["a"] = v.a;
    j["b"] = v.b;
    j["product"] = big_to_json(v.product);
    return j;
}

ordered_json graph_to_json(const SmallGraph& g) {
    ordered_json j;
    j["k"] = g.order();
    j["m"] = g.edge_count();
    ordered_json edges = ordered_json::array();
    for (auto [a, b] : g.edges()) edges.push_back(ordered_json::array({a, b}));
    j["edges"] = std::move(edges);
    return j;
}

struct BudgetOption {
    SidonBudgets budgets;
};

void apply_budget_overrides(const std::vector<std::string>& entries, SidonBudgets& b) {
    for (const std::string& entry : entries) {
        auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--budget", "expected name=value, got '" + entry + "'");
        std::string name = entry.substr(0, eq);
        int value = std::stoi(entry.substr(eq + 1));
        if (name == "naive_n")
            b.naive_n = value;
        else if (name == "backtrack_n_k2")
            b.backtrack_n_k2 = value;
        else if (name == "backtrack_n_k3")
            b.backtrack_n_k3 = value;
        else if (name == "backtrack_n_kbig")
            b.backtrack_n_kbig = value;
        else if (name == "max_sidon_n")
            b.max_sidon_n = value;
        else if (name == "dagger_n")
            b.dagger_n = value;
        else
            throw CLI::ValidationError("--budget", "unknown limit name '" + name + "'");
    }
}

int default_threads() {
    if (const char* env = std::getenv("MSIDON_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"multiplicative Sidon set toolkit"};
    app.require_subcommand(1);

    OutputConfig cfg;
    int threads = default_threads();
    std::vector<std::string> budget_entries;
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--threads", threads, "worker threads for splittable searches")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget", budget_entries, "override a named limit, e.g. naive_n=22");

    // count
    auto* count_cmd = app.add_subcommand("count", "count multiplicative k-Sidon subsets of [n]");
    int count_n = 0, count_k = 2;
    std::string count_method = "backtrack";
    count_cmd->add_option("--n", count_n, "interval bound")->required();
    count_cmd->add_option("--k", count_k, "Sidon order k");
    count_cmd->add_option("--method", count_method, "naive | backtrack")
        ->check(CLI::IsMember({"naive", "backtrack"}));

    // extremal
    auto* extremal_cmd = app.add_subcommand("extremal", "maximum size of a k-Sidon subset of [n]");
    int ext_n = 0, ext_k = 2;
    extremal_cmd->add_option("--n", ext_n, "interval bound")->required();
    extremal_cmd->add_option("--k", ext_k, "Sidon order k");

    // check
    auto* check_cmd = app.add_subcommand("check", "search a set for a k-Sidon violation");
    std::string check_set;
    int check_k = 2;
    check_cmd->add_option("--set", check_set, "comma-separated naturals")->required();
    check_cmd->add_option("--k", check_k, "Sidon order k");

    // decompose
    auto* dec_cmd = app.add_subcommand("decompose", "structural decomposition of a set");
    std::string dec_set;
    int dec_k = 2;
    u64 dec_n = 0;
    dec_cmd->add_option("--set", dec_set, "comma-separated naturals")->required();
    dec_cmd->add_option("--n", dec_n, "ambient interval bound")->required();
    dec_cmd->add_option("--k", dec_k, "2 or 3")->check(CLI::IsMember({2, 3}));

    // beta
    auto* beta_cmd = app.add_subcommand("beta", "partial-product brackets for beta");
    u64 beta_k = 30000;
    beta_cmd->add_option("--kmax", beta_k, "number of product terms");

    // alpha
    auto* alpha_cmd = app.add_subcommand("alpha", "rigorous bracket for alpha");
    u64 alpha_k = 1000000;
    alpha_cmd->add_option("--kmax", alpha_k, "number of summands");

    // tfunc
    auto* tfunc_cmd = app.add_subcommand("tfunc", "T(n) and R(n) report");
    u64 tfunc_n = 0;
    tfunc_cmd->add_option("--n", tfunc_n, "interval bound")->required();

    // construct
    auto* cons_cmd = app.add_subcommand("construct", "generate and validate lower-bound families");
    std::string cons_family = "erdos";
    u64 cons_n = 0;
    int cons_samples = 1000;
    int cons_gpar = 0;
    std::string cons_graph;
    u64 cons_seed = 0x5eed5eedULL;
    cons_cmd->add_option("--family", cons_family, "erdos | 3sidon")
        ->check(CLI::IsMember({"erdos", "3sidon"}));
    cons_cmd->add_option("--n", cons_n, "interval bound")->required();
    cons_cmd->add_option("--samples", cons_samples, "number of random sets to verify");
    cons_cmd->add_option("--gpar", cons_gpar, "use the parity graph on [K] (3sidon family)");
    cons_cmd->add_option("--graph", cons_graph, "product-free graph file (3sidon family)");
    cons_cmd->add_option("--seed", cons_seed, "sampler seed");

    // pfg-search
    auto* pfg_cmd = app.add_subcommand("pfg-search", "exact max-profile search over product-free graphs");
    int pfg_k = 10;
    pfg_cmd->add_option("--kmax", pfg_k, "vertex count (<= 10)");

    // verify-container
    auto* vc_cmd = app.add_subcommand("verify-container", "executable graph container check");
    std::string vc_graph;
    double vc_R = 0, vc_beta = 0;
    int vc_q = 0, vc_s = 0;
    vc_cmd->add_option("--graph", vc_graph, "graph file")->required();
    vc_cmd->add_option("--R", vc_R, "container size parameter")->required();
    vc_cmd->add_option("--beta", vc_beta, "density parameter in [0,1]")->required();
    vc_cmd->add_option("--q", vc_q, "fingerprint size")->required();
    vc_cmd->add_option("--s", vc_s, "independent set size")->required();

    // liouville
    auto* liou_cmd = app.add_subcommand("liouville", "summatory Liouville function L(1..K)");
    u64 liou_k = 0;
    liou_cmd->add_option("--kmax", liou_k, "upper index")->required();

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help() << '\n';
        return 1;
    }

    try {
        SidonBudgets budgets;
        apply_budget_overrides(budget_entries, budgets);

        if (*count_cmd) {
            CountMethod method = count_method == "naive" ? CountMethod::naive : CountMethod::backtrack;
            BigInt c = count_sidon(count_n, count_k, method, budgets, threads);
            ordered_json j;
            j["n"] = count_n;
            j["k"] = count_k;
            j["method"] = count_method;
            j["count"] = big_to_json(c);
            emit_scalar_report(j, cfg, out);
        } else if (*extremal_cmd) {
            auto res = max_sidon(ext_n, ext_k, budgets);
            ordered_json j;
            j["n"] = ext_n;
            j["k"] = ext_k;
            j["size"] = res.size;
            j["witness"] = res.witness;
            emit_scalar_report(j, cfg, out);
        } else if (*check_cmd) {
            auto set = parse_set_literal(check_set);
            auto v = find_violation(set, check_k);
            ordered_json j;
            j["k"] = check_k;
            j["set"] = set;
            j["sidon"] = !v.has_value();
            if (v) j["violation"] = violation_to_json(*v);
            emit_scalar_report(j, cfg, out);
        } else if (*dec_cmd) {
            auto set = parse_set_literal(dec_set);
            FactorSieve sieve(std::max<u64>(dec_n, 2));
            ordered_json j;
            j["n"] = dec_n;
            j["k"] = dec_k;
            auto aux_json = [](const AuxGraph& a) {
                ordered_json g = graph_to_json(a.graph);
                g["left_values"] = a.left_values;
                g["right_values"] = a.right_values;
                return g;
            };
            if (dec_k == 2) {
                auto rep = decompose2(set, dec_n, sieve);
                j["A1"] = rep.a1;
                j["A2"] = rep.a2;
                j["B1"] = rep.b1;
                j["B2"] = rep.b2;
                j["B3"] = rep.b3;
                j["squares_removed"] = rep.squares_removed;
                j["hat_sum"] = rep.hat_sum;
                ordered_json aux;
                for (auto& [name, a] : rep.aux) aux[name] = aux_json(a);
                j["aux"] = std::move(aux);
            } else {
                auto rep = decompose3(set, dec_n, sieve);
                j["A1"] = rep.a1;
                j["A2"] = rep.a2;
                j["A3"] = rep.a3;
                j["gamma"] = aux_json(rep.gamma);
            }
            emit_scalar_report(j, cfg, out);
        } else if (*beta_cmd) {
            FactorSieve sieve(std::max<u64>(beta_k, 2));
            auto est = beta_bounds(beta_k, sieve);
            ordered_json j;
            j["K"] = est.K;
            j["beta_minus_partial"] = est.beta_minus_partial;
            j["beta_plus_partial"] = est.beta_plus_partial;
            j["tail_factor"] = est.tail_factor;
            j["corrected_upper"] = est.corrected_upper;
            emit_scalar_report(j, cfg, out);
        } else if (*alpha_cmd) {
            auto br = alpha_bracket(alpha_k);
            ordered_json j;
            j["K"] = br.K;
            j["lower"] = br.lower;
            j["upper"] = br.upper;
            j["width"] = br.upper - br.lower;
            emit_scalar_report(j, cfg, out);
        } else if (*tfunc_cmd) {
            FactorSieve sieve(std::max<u64>(tfunc_n, 2));
            auto rep = t_and_r(tfunc_n, sieve);
            ordered_json j;
            j["n"] = rep.n;
            j["log2_T"] = rep.log2_T;
            j["log2_R"] = rep.log2_R;
            j["p0"] = rep.p0;
            j["k0"] = rep.k0;
            j["log2_T_over_pi"] = rep.log2_T / double(sieve.prime_count(rep.n));
            if (rep.exact_T) j["exact_T"] = big_to_json(*rep.exact_T);
            emit_scalar_report(j, cfg, out);
        } else if (*cons_cmd) {
            FactorSieve sieve(std::max<u64>(cons_n, 2));
            FamilyReport rep;
            ordered_json j;
            j["family"] = cons_family;
            j["n"] = cons_n;
            if (cons_family == "erdos") {
                rep = erdos_family(cons_n, sieve, cons_samples, cons_seed);
            } else {
                SmallGraph g;
                if (!cons_graph.empty())
                    g = load_graph(cons_graph);
                else if (cons_gpar > 0)
                    g = g_par(cons_gpar, sieve);
                else
                    throw std::invalid_argument("construct --family 3sidon needs --graph or --gpar");
                j["graph_k"] = g.order();
                rep = family_3sidon(cons_n, g, sieve, cons_samples, cons_seed);
            }
            j["count"] = big_to_json(rep.count);
            j["samples_checked"] = rep.samples_checked;
            j["all_valid"] = rep.all_valid;
            j["sample"] = rep.sample;
            j["truncated"] = rep.sample.size() < rep.samples_checked;
            emit_scalar_report(j, cfg, out);
        } else if (*pfg_cmd) {
            auto res = search_max_profile(pfg_k);
            ordered_json j;
            j["K"] = res.K;
            j["best_log_objective"] = res.best_log_objective;
            j["best_objective"] = std::exp(res.best_log_objective);
            j["edge_profile"] = res.edge_profile;
            j["nodes_explored"] = res.nodes_explored;
            j["best_graph"] = graph_to_json(res.best_graph);
            emit_scalar_report(j, cfg, out);
        } else if (*vc_cmd) {
            SmallGraph g = load_graph(vc_graph);
            auto verdict = verify_container(g, vc_R, vc_beta, vc_q, vc_s);
            ordered_json j;
            j["k"] = g.order();
            j["R"] = vc_R;
            j["beta"] = vc_beta;
            j["q"] = vc_q;
            j["s"] = vc_s;
            j["verdict"] = verdict == ContainerVerdict::holds ? "holds" : "precondition_failed";
            emit_scalar_report(j, cfg, out);
        } else if (*liou_cmd) {
            FactorSieve sieve(std::max<u64>(liou_k, 2));
            auto L = liouville_summatory(liou_k, sieve);
            if (cfg.format == "csv") {
                out << "k,L\n";
                for (u64 i = 1; i <= liou_k; ++i) out << i << ',' << L[i] << '\n';
            } else if (cfg.format == "text") {
                for (u64 i = 1; i <= liou_k; ++i) out << "L(" << i << ") = " << L[i] << '\n';
            } else {
                ordered_json j;
                j["K"] = liou_k;
                j["L"] = std::vector<long long>(L.begin() + 1, L.end());
                out << j.dump() << '\n';
            }
        }
        return 0;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace msidon
