// Command-line front end: dataset generation from a network file, single
// learning runs, scoring against ground truth, and benchmark sweeps.
//
// Exit codes: 0 success, 1 internal error, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "partbn/apsl.hpp"
#include "partbn/bnio.hpp"
#include "partbn/eval.hpp"
#include "partbn/version.hpp"

namespace {

using namespace partbn;

// FNV-1a content digest; provenance bookkeeping, not security.
std::string file_digest(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (f.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::ordered_json& config,
                    const std::vector<std::string>& inputs, double wall_seconds) {
    nlohmann::ordered_json m;
    m["command"] = command;
    m["config"] = config;
    nlohmann::ordered_json digests;
    for (const auto& p : inputs) digests[p] = file_digest(p);
    m["inputs"] = digests;
    m["tool_version"] = kVersion;
    m["wall_seconds"] = wall_seconds;
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write manifest: " + out_path);
    f << m.dump(2) << '\n';
}

struct DepthArg {
    int depth = 1;
    bool is_max = false;
};

DepthArg parse_depth(const std::string& s) {
    DepthArg d;
    if (s == "max") {
        d.is_max = true;
        return d;
    }
    try {
        d.depth = std::stoi(s);
    } catch (const std::exception&) {
        throw UsageError("depth must be a positive integer or 'max'");
    }
    if (d.depth < 1) throw UsageError("depth must be >= 1");
    return d;
}

int cmd_sample(const std::string& bif, std::int64_t n, std::uint64_t seed, const std::string& out) {
    auto t0 = std::chrono::steady_clock::now();
    GroundTruthBn bn = parse_bif_file(bif);
    Dataset data = forward_sample(bn, n, seed);
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write dataset: " + out);
    data.write_csv(f);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out + ".manifest.json", "sample", {{"n", n}, {"seed", seed}}, {bif}, secs);
    std::cout << "wrote " << n << " rows x " << data.n_vars() << " columns to " << out << '\n';
    return 0;
}

VarId resolve_target(const Dataset& data, const std::string& name) {
    if (auto v = data.find(name)) return *v;
    // Nearest names by shared-prefix length, to make typos easy to spot.
    std::vector<std::pair<size_t, std::string>> scored;
    for (const auto& n : data.names()) {
        size_t k = 0;
        while (k < n.size() && k < name.size() && n[k] == name[k]) ++k;
        scored.emplace_back(k, n);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::string hint;
    for (size_t i = 0; i < scored.size() && i < 3; ++i) hint += (i ? ", " : "") + scored[i].second;
    throw UsageError("unknown target '" + name + "'; nearest names: " + hint);
}

int cmd_learn(const std::string& data_path, const std::string& target, const std::string& depth_s,
              const std::string& algorithm, double alpha, double delta, int max_cond, std::uint64_t seed,
              const std::string& out_prefix) {
    auto t0 = std::chrono::steady_clock::now();
    DepthArg depth = parse_depth(depth_s);
    if (algorithm != "apsl" && algorithm != "apsl-fs")
        throw UsageError("algorithm must be 'apsl' or 'apsl-fs'");

    Dataset data = load_csv_file(data_path);
    VarId t = resolve_target(data, target);

    ApslConfig cfg;
    cfg.depth = depth.depth;
    cfg.depth_max = depth.is_max;
    cfg.test.alpha = alpha;
    cfg.fcbf_delta = delta;
    if (max_cond >= 0)
        cfg.test.max_cond_size = max_cond;
    else
        cfg.test.max_cond_size.reset();

    ApslRun run = algorithm == "apsl-fs" ? apsl_fs(data, t, cfg) : apsl(data, t, cfg);

    std::ofstream el(out_prefix + ".edges.txt");
    if (!el) throw UsageError("cannot write " + out_prefix + ".edges.txt");
    write_edge_list(el, run.graph, data.names());
    std::ofstream adj(out_prefix + ".adjacency.csv");
    write_adjacency_csv(adj, run.graph);

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_prefix + ".manifest.json", "learn",
                   {{"target", target},
                    {"depth", depth.is_max ? std::string("max") : std::to_string(depth.depth)},
                    {"algorithm", algorithm},
                    {"alpha", alpha},
                    {"delta", delta},
                    {"max_cond_size", max_cond},
                    {"seed", seed}},
                   {data_path}, secs);

    std::cout << "edges: " << run.graph.edge_count() << " (directed " << run.graph.directed_edge_count()
              << ", undirected " << run.graph.undirected_edge_count() << ")\n"
              << "ci tests: " << run.ci.computed_total << " (conditional "
              << run.ci.computed_conditional << ", pc-discovery conditional "
              << run.pc_discovery_conditional_tests << ")\n"
              << "wall seconds: " << secs << '\n';
    return 0;
}

int cmd_eval(const std::string& graph_path, const std::string& bif, const std::string& target,
             const std::string& depth_s, const std::string& out) {
    DepthArg depth = parse_depth(depth_s);
    GroundTruthBn bn = parse_bif_file(bif);
    auto t = bn.find(target);
    if (!t) throw UsageError("unknown target '" + target + "' in network " + bif);

    std::ifstream gf(graph_path);
    if (!gf) throw UsageError("cannot open graph file: " + graph_path);
    Pdag learned = read_edge_list(gf, bn.names());

    NeighborhoodSpec nb{*t, depth.depth, depth.is_max};
    ArMetrics m = ar_metrics(learned, bn, true_neighborhood(bn, nb));

    nlohmann::ordered_json j = {{"ar_precision", m.ar_precision},
                                {"ar_recall", m.ar_recall},
                                {"ar_distance", m.ar_distance},
                                {"n_true_edges", m.n_true_edges},
                                {"n_predicted_edges", m.n_predicted_edges},
                                {"n_correct_edges", m.n_correct_edges}};
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream f(out);
        if (!f) throw UsageError("cannot write " + out);
        f << j.dump(2) << '\n';
    }
    return 0;
}

// Spec file: one `key = value` pair per line, # comments. Keys: networks
// (comma-separated paths), sizes, runs, depth, algorithms, targets
// (all|largest5), seed, jobs, alpha, delta, max_cond_size.
BenchSpec parse_bench_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open bench spec: " + path);
    BenchSpec spec;
    std::string line;
    int line_no = 0;
    auto split_list = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                out.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    };
    while (std::getline(f, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = true;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
            if (blank) continue;
            throw UsageError("bench spec line " + std::to_string(line_no) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "networks")
                spec.network_paths = split_list(value);
            else if (key == "sizes") {
                spec.sizes.clear();
                for (const auto& s : split_list(value)) spec.sizes.push_back(std::stoll(s));
            } else if (key == "runs")
                spec.runs = std::stoi(value);
            else if (key == "depth") {
                DepthArg d = parse_depth(value);
                spec.depth = d.depth;
                spec.depth_max = d.is_max;
            } else if (key == "algorithms")
                spec.algorithms = split_list(value);
            else if (key == "targets")
                spec.targets = value;
            else if (key == "seed")
                spec.seed = std::stoull(value);
            else if (key == "jobs")
                spec.jobs = std::stoi(value);
            else if (key == "alpha")
                spec.test.alpha = std::stod(value);
            else if (key == "delta")
                spec.fcbf_delta = std::stod(value);
            else if (key == "max_cond_size")
                spec.test.max_cond_size = std::stoi(value);
            else
                throw UsageError("bench spec line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("bench spec line " + std::to_string(line_no) + ": bad value for '" + key + "'");
        }
    }
    if (spec.network_paths.empty()) throw UsageError("bench spec: no networks listed");
    if (spec.sizes.empty()) throw UsageError("bench spec: no sizes listed");
    if (spec.targets != "all" && spec.targets != "largest5")
        throw UsageError("bench spec: targets must be 'all' or 'largest5'");
    for (const auto& a : spec.algorithms)
        if (a != "apsl" && a != "apsl-fs")
            throw UsageError("bench spec: unknown algorithm '" + a + "'");
    return spec;
}

int cmd_bench(const std::string& spec_path, const std::string& out_prefix) {
    auto t0 = std::chrono::steady_clock::now();
    BenchSpec spec = parse_bench_spec(spec_path);
    BenchReport report = bench(spec);

    std::ofstream js(out_prefix + ".json");
    if (!js) throw UsageError("cannot write " + out_prefix + ".json");
    write_bench_json(js, report);
    std::ofstream tb(out_prefix + ".txt");
    write_bench_table(tb, report);
    write_bench_table(std::cout, report);

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::vector<std::string> inputs = {spec_path};
    for (const auto& p : spec.network_paths) inputs.push_back(p);
    write_manifest(out_prefix + ".manifest.json", "bench", {{"seed", spec.seed}}, inputs, secs);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Learns any part of a Bayesian network structure around a target node"};
    app.require_subcommand(1);

    auto* sample = app.add_subcommand("sample", "Sample a dataset from a network file");
    std::string sample_bif, sample_out = "sample.csv";
    std::int64_t sample_n = 1000;
    std::uint64_t sample_seed = 1;
    sample->add_option("network", sample_bif, "BIF network file")->required();
    sample->add_option("--n", sample_n, "number of rows");
    sample->add_option("--seed", sample_seed, "rng seed");
    sample->add_option("--out", sample_out, "output CSV path");

    auto* learn = app.add_subcommand("learn", "Learn a part of a structure around a target");
    std::string learn_data, learn_target, learn_depth = "1", learn_alg = "apsl",
                learn_out = "learned";
    double learn_alpha = 0.01, learn_delta = 0.05;
    int learn_maxcond = 3;
    std::uint64_t learn_seed = 1;
    learn->add_option("data", learn_data, "dataset CSV")->required();
    learn->add_option("--target", learn_target, "target variable name")->required();
    learn->add_option("--depth", learn_depth, "depth K >= 1, or 'max'");
    learn->add_option("--algorithm", learn_alg, "apsl or apsl-fs");
    learn->add_option("--alpha", learn_alpha, "significance level for the G2 tests");
    learn->add_option("--delta", learn_delta, "relevance threshold used by apsl-fs");
    learn->add_option("--max-cond-size", learn_maxcond,
                      "largest conditioning set searched (-1 for unlimited)");
    learn->add_option("--seed", learn_seed, "recorded in the manifest for provenance");
    learn->add_option("--out", learn_out, "output prefix");

    auto* evalc = app.add_subcommand("eval", "Score a learned graph against a network file");
    std::string eval_graph, eval_bif, eval_target, eval_depth = "1", eval_out;
    evalc->add_option("graph", eval_graph, "edge-list file")->required();
    evalc->add_option("network", eval_bif, "BIF network file")->required();
    evalc->add_option("--target", eval_target, "target variable name")->required();
    evalc->add_option("--depth", eval_depth, "depth K >= 1, or 'max'");
    evalc->add_option("--out", eval_out, "metrics JSON path (stdout when omitted)");

    auto* benchc = app.add_subcommand("bench", "Run a benchmark sweep from a spec file");
    std::string bench_spec, bench_out = "bench_report";
    benchc->add_option("spec", bench_spec, "key = value spec file")->required();
    benchc->add_option("--out", bench_out, "output prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (sample->parsed()) return cmd_sample(sample_bif, sample_n, sample_seed, sample_out);
        if (learn->parsed())
            return cmd_learn(learn_data, learn_target, learn_depth, learn_alg, learn_alpha,
                             learn_delta, learn_maxcond, learn_seed, learn_out);
        if (evalc->parsed()) return cmd_eval(eval_graph, eval_bif, eval_target, eval_depth, eval_out);
        if (benchc->parsed()) return cmd_bench(bench_spec, bench_out);
    } catch (const partbn::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
