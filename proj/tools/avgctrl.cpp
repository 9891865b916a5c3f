// avgctrl: decide, certify, cross-check, and demonstrate structural
// averaged controllability of sparse single-input ensemble patterns.
//
// JSON reports go to stdout, diagnostics to stderr. Exit codes:
//   0 success, 2 parse/validation error, 3 refusal (non-qualifying
//   pattern), 4 oracle contradiction, 5 numerical failure.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "avgctrl/certificate.hpp"
#include "avgctrl/generator.hpp"
#include "avgctrl/io.hpp"
#include "avgctrl/oracle.hpp"
#include "avgctrl/reduction.hpp"
#include "avgctrl/simulator.hpp"
#include "avgctrl/verification.hpp"

using nlohmann::json;
using namespace avgctrl;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitRefusal = 3;
constexpr int kExitContradiction = 4;
constexpr int kExitNumerical = 5;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

struct LoadedGraph {
    SparsityPattern g;
    std::string hash;
};

LoadedGraph load_graph(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    std::istringstream is(bytes);
    SparsityPattern g = format == "dot" ? parse_dot(is) : parse_edge_list(is);
    return {std::move(g), fnv1a_hex(bytes)};
}

json report_skeleton(const std::string& command, const std::string& hash) {
    return json{{"schema", "avgctrl-report/1"},
                {"command", command},
                {"input_hash", hash}};
}

json node_list(const std::vector<int>& nodes) {
    json out = json::array();
    for (int v : nodes) out.push_back(node_name(v));
    return out;
}

json edge_list_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (const Edge& e : edges)
        out.push_back(json::array({node_name(e.from), node_name(e.to)}));
    return out;
}

json decision_json(const DecisionReport& d) {
    json out{{"verdict", d.verdict}};
    if (d.verdict)
        out["witness"] = node_list(d.witness);
    else if (d.obstruction)
        out["obstruction"] = json::array({node_name(d.obstruction->first),
                                          node_name(d.obstruction->second)});
    return out;
}

void emit(json& rep, const Timer& timer) {
    rep["timings"] = {{"total_ms", timer.ms()}};
    std::cout << rep.dump(2) << "\n";
}

int cmd_analyze(const std::string& path, const std::string& format) {
    Timer timer;
    LoadedGraph lg = load_graph(path, format);
    SccDecomposition scc = strong_components(lg.g);
    CoreSubgraph c = core(lg.g, scc);
    DecisionReport d = decide_structural_avg_ctrl(lg.g);

    json rep = report_skeleton("analyze", lg.hash);
    rep["n"] = lg.g.n;
    json comps = json::array();
    for (int i = 0; i < scc.count(); ++i)
        comps.push_back(json{{"nodes", node_list(scc.components[i])},
                             {"nontrivial", static_cast<bool>(scc.nontrivial[i])}});
    rep["scd"] = {{"count", scc.count()}, {"components", comps}};
    rep["core"] = {{"nodes", node_list(c.nodes)}, {"order", c.order()}};
    rep["decision"] = decision_json(d);
    emit(rep, timer);
    return 0;
}

json nu_table_json(const ReducedGraph& rg, const EdgeWeighting& w) {
    json out = json::array();
    for (const auto& [e, nu] : w.nu)
        out.push_back(json{{"edge", json::array({node_name(e.from), node_name(e.to)})},
                           {"nu", nu_to_string(nu, w.L, w.lambda_name)},
                           {"rat_num", nu.rat_num},
                           {"irr_coef", nu.irr_coef}});
    return out;
}

int cmd_certify(const std::string& path, const std::string& format,
                double lambda_value, double tolerance, bool emit_weights) {
    Timer timer;
    LoadedGraph lg = load_graph(path, format);
    DecisionReport d = decide_structural_avg_ctrl(lg.g);
    if (!d.verdict) {
        std::cerr << "avgctrl: pattern is not structurally averaged "
                     "controllable; run 'analyze' for the obstruction\n";
        return kExitRefusal;
    }
    auto [rg0, trace] = reduce(lg.g, d);
    CanonicalLabeling lab = canonical_relabel(rg0);
    ReducedGraph rg = apply_labeling(rg0, lab);
    EdgeWeighting w = build_nu(rg);
    if (lambda_value > 0) w.lambda = lambda_value;
    RankCertificate cert = certify_rank(rg, w);
    if (tolerance > 0) {
        cert.tolerance = tolerance;
        cert.verdict = cert.sv_ratio > tolerance &&
                       numeric_rank(cert.matrix, tolerance) == rg.g.n &&
                       cert.verdict;
    }

    json rep = report_skeleton("certify", lg.hash);
    rep["n"] = lg.g.n;
    rep["reduced_edges"] = edge_list_json(rg0.g.edges);
    rep["relabel"] = lab.old_to_new;
    rep["L"] = w.L;
    rep["ell_max"] = w.ell_max;
    if (emit_weights) rep["nu"] = nu_table_json(rg, w);
    json groups = json::array();
    for (const auto& grp : cert.selection.groups)
        groups.push_back(json{{"ell", grp.ell},
                              {"v_prime", node_list(grp.v_prime)},
                              {"columns", grp.columns}});
    rep["selection"] = {{"j_star", cert.selection.j_star},
                        {"core_columns", cert.selection.core_columns},
                        {"groups", groups},
                        {"all_columns", cert.selection.all_columns}};
    json checks = json::array();
    for (const auto& chk : cert.group_checks)
        checks.push_back(json{{"nus_distinct", chk.nus_distinct},
                              {"cauchy_consistent", chk.cauchy_consistent},
                              {"det_nonzero", chk.det_nonzero}});
    rep["certificate"] = {{"verdict", cert.verdict},
                          {"numeric_rank", cert.numeric_rank},
                          {"sv_ratio", cert.sv_ratio},
                          {"tolerance", cert.tolerance},
                          {"group_checks", checks}};
    emit(rep, timer);
    return cert.verdict ? 0 : kExitNumerical;
}

int cmd_oracle(const std::string& path, const std::string& format, int samples,
               int degree, std::uint64_t seed, int columns) {
    Timer timer;
    LoadedGraph lg = load_graph(path, format);
    json rep = report_skeleton("oracle", lg.hash);
    rep["n"] = lg.g.n;
    try {
        AgreementReport ar = cross_validate(lg.g, samples, degree, seed, columns);
        rep["verdict"] = ar.verdict;
        rep["agreement"] = ar.agreement;
        rep["samples"] = ar.samples;
        rep["degree"] = ar.degree;
        rep["seed"] = ar.seed;
        rep["columns"] = ar.columns;
        rep["ranks"] = ar.ranks;
        rep["full_rank_count"] = ar.full_rank_count;
        emit(rep, timer);
        return 0;
    } catch (const OracleContradiction& e) {
        rep["oracle_contradiction"] = e.what();
        emit(rep, timer);
        std::cerr << "avgctrl: " << e.what() << "\n";
        return kExitContradiction;
    }
}

Eigen::VectorXd parse_target(const std::string& spec, int n) {
    if (spec.size() >= 2 && spec[0] == 'e') {
        int k = std::stoi(spec.substr(1));
        if (k < 1 || k > n) throw std::runtime_error("target index out of range");
        Eigen::VectorXd t = Eigen::VectorXd::Zero(n);
        t(k - 1) = 1.0;
        return t;
    }
    std::vector<double> vals;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    if (static_cast<int>(vals.size()) != n)
        throw std::runtime_error("target dimension mismatch");
    return Eigen::Map<Eigen::VectorXd>(vals.data(), n);
}

int cmd_simulate(const std::string& path, const std::string& format,
                 const std::string& target_spec, double T, int nodes,
                 const std::string& out_csv) {
    Timer timer;
    LoadedGraph lg = load_graph(path, format);
    DecisionReport d = decide_structural_avg_ctrl(lg.g);
    if (!d.verdict) {
        std::cerr << "avgctrl: pattern is not structurally averaged "
                     "controllable; cannot steer\n";
        return kExitRefusal;
    }
    auto [rg0, trace] = reduce(lg.g, d);
    ReducedGraph rg = apply_labeling(rg0, canonical_relabel(rg0));
    SymbolicEnsemble ens = build_ensemble(rg, build_nu(rg));
    DiscretizedEnsemble de = discretize(ens, nodes);

    Eigen::VectorXd target = parse_target(target_spec, lg.g.n);
    std::vector<Eigen::VectorXd> x0{Eigen::VectorXd::Zero(lg.g.n)};
    json rep = report_skeleton("simulate", lg.hash);
    try {
        SynthesisInfo syn = synthesize_control(de, x0, target, T);
        SimulationResult res = simulate(de, syn.u, x0, T);
        TargetReport tr = verify_target(res, target, 1e-6);

        if (!out_csv.empty()) {
            std::ofstream csv(out_csv);
            csv << "t";
            for (int i = 1; i <= lg.g.n; ++i) csv << ",xbar_" << i;
            csv << ",u\n";
            for (size_t m = 0; m < res.t.size(); ++m) {
                csv << res.t[m];
                for (int i = 0; i < lg.g.n; ++i) csv << "," << res.xbar(i, m);
                csv << "," << res.u[m] << "\n";
            }
        }
        rep["quadrature_nodes"] = nodes;
        rep["time_horizon"] = T;
        rep["gramian_condition"] = syn.gramian_condition;
        rep["terminal_error"] = tr.error;
        rep["target_hit"] = tr.hit;
        rep["note"] =
            "certifies the discretized ensemble, an approximation of the "
            "continuum statement";
        if (!out_csv.empty()) rep["csv"] = out_csv;
        emit(rep, timer);
        return 0;
    } catch (const SingularGramianError& e) {
        rep["error"] = e.what();
        emit(rep, timer);
        std::cerr << "avgctrl: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_generate(int n, bool qualifying, std::uint64_t seed,
                 const std::string& out_path) {
    SparsityPattern g = generate_pattern(n, qualifying, seed);
    std::string text = to_edge_list(g);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structural averaged controllability toolkit"};
    app.require_subcommand(1);

    std::string file, format = "edgelist", out_csv, target_spec;
    double lambda_value = 0, tolerance = 0, T = 5.0;
    bool emit_weights = false, qualifying = true;
    int samples = 50, degree = 2, columns = -1, nodes = 64, gen_n = 5;
    std::uint64_t seed = 1;

    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "graph file")->required();
        sub->add_option("--format", format, "edgelist|dot")
            ->check(CLI::IsMember({"edgelist", "dot"}));
    };

    auto* analyze = app.add_subcommand("analyze", "decide the graph criterion");
    add_file(analyze);

    auto* certify = app.add_subcommand("certify", "build and certify the ensemble");
    add_file(certify);
    certify->add_option("--lambda", lambda_value,
                        "override the float value of the irrational weight");
    certify->add_option("--tolerance", tolerance, "numeric rank tolerance");
    certify->add_flag("--emit-weights", emit_weights, "include the nu table");

    auto* oracle = app.add_subcommand("oracle", "randomized exact-rank cross-check");
    add_file(oracle);
    oracle->add_option("--samples", samples);
    oracle->add_option("--degree", degree);
    oracle->add_option("--seed", seed);
    oracle->add_option("--columns", columns);

    auto* simulate = app.add_subcommand("simulate", "Gramian steering demo");
    add_file(simulate);
    simulate->add_option("--target", target_spec, "'e<k>' or comma list")->required();
    simulate->add_option("--time", T);
    simulate->add_option("--nodes", nodes, "quadrature node count");
    simulate->add_option("--out", out_csv, "trajectory CSV path");

    auto* generate = app.add_subcommand("generate", "emit a random pattern");
    generate->add_option("--n", gen_n)->required();
    generate->add_option("--qualifying", qualifying);
    generate->add_option("--seed", seed);
    generate->add_option("--out", out_csv);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(file, format);
        if (certify->parsed())
            return cmd_certify(file, format, lambda_value, tolerance, emit_weights);
        if (oracle->parsed())
            return cmd_oracle(file, format, samples, degree, seed, columns);
        if (simulate->parsed())
            return cmd_simulate(file, format, target_spec, T, nodes, out_csv);
        if (generate->parsed()) return cmd_generate(gen_n, qualifying, seed, out_csv);
    } catch (const ParseError& e) {
        std::cerr << "avgctrl: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "avgctrl: " << e.what() << "\n";
        return kExitParse;
    } catch (const ReductionError& e) {
        std::cerr << "avgctrl: " << e.what() << "\n";
        return e.code() == ReductionErrorCode::NotStructurallyAvgControllable
                   ? kExitRefusal
                   : kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "avgctrl: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
