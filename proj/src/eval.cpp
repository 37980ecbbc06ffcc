#include "partbn/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace partbn {

ArMetrics ar_metrics(const Pdag& learned, const GroundTruthBn& truth,
                     const std::vector<std::pair<VarId, VarId>>& region) {
    const Pdag& dag = truth.dag();
    for (const auto& [u, v] : region)
        if (!dag.directed(u, v)) throw UsageError("ar_metrics: region edge not in the true network");

    std::set<VarId> region_nodes;
    for (const auto& [u, v] : region) {
        region_nodes.insert(u);
        region_nodes.insert(v);
    }

    ArMetrics m;
    m.n_true_edges = static_cast<std::int64_t>(region.size());

    for (VarId a = 0; a < learned.n(); ++a)
        for (VarId b = a + 1; b < learned.n(); ++b) {
            if (!learned.adjacent(a, b)) continue;
            if (region_nodes.count(a) || region_nodes.count(b)) ++m.n_predicted_edges;
        }

    const Pdag cpdag = dag_to_cpdag(dag);
    for (const auto& [u, v] : region) {
        if (learned.directed(u, v))
            ++m.n_correct_edges;
        else if (learned.undirected(u, v) && cpdag.undirected(u, v))
            ++m.n_correct_edges;
    }

    if (m.n_true_edges == 0 && m.n_predicted_edges == 0) {
        m.ar_precision = m.ar_recall = 1.0;
    } else {
        m.ar_precision = m.n_true_edges == 0
                             ? 0.0
                             : static_cast<double>(m.n_correct_edges) / static_cast<double>(m.n_true_edges);
        m.ar_recall = m.n_predicted_edges == 0 ? 0.0
                                               : static_cast<double>(m.n_correct_edges) /
                                                     static_cast<double>(m.n_predicted_edges);
    }
    m.ar_distance = std::sqrt((1.0 - m.ar_precision) * (1.0 - m.ar_precision) +
                              (1.0 - m.ar_recall) * (1.0 - m.ar_recall));
    return m;
}

std::vector<VarId> five_largest_pc(const GroundTruthBn& bn) {
    std::vector<std::pair<int, VarId>> sized;
    for (VarId v = 0; v < bn.n_vars(); ++v)
        sized.emplace_back(static_cast<int>(bn.dag().neighbors(v).size()), v);
    std::sort(sized.begin(), sized.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<VarId> out;
    for (size_t i = 0; i < sized.size() && i < 5; ++i) out.push_back(sized[i].second);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string network_label(const std::string& path) {
    size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

struct MeanStd {
    double mean = 0.0, sd = 0.0;
};

// Sample standard deviation (n-1 denominator), 0 for a single cell.
MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd r;
    if (xs.empty()) return r;
    double s = 0;
    for (double x : xs) s += x;
    r.mean = s / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double q = 0;
        for (double x : xs) q += (x - r.mean) * (x - r.mean);
        r.sd = std::sqrt(q / static_cast<double>(xs.size() - 1));
    }
    return r;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

BenchReport bench(const BenchSpec& spec) {
    BenchReport report;
    report.spec = spec;

    struct Cell {
        size_t net_idx;
        size_t size_idx;
        int run;
        std::string algorithm;
        VarId target;
        std::uint64_t dataset_seed;
    };

    std::vector<GroundTruthBn> networks;
    for (const auto& p : spec.network_paths) networks.push_back(parse_bif_file(p));

    std::vector<Cell> cells;
    for (size_t ni = 0; ni < networks.size(); ++ni) {
        std::vector<VarId> targets;
        if (spec.targets == "largest5") {
            targets = five_largest_pc(networks[ni]);
        } else {
            for (VarId v = 0; v < networks[ni].n_vars(); ++v) targets.push_back(v);
        }
        for (size_t si = 0; si < spec.sizes.size(); ++si)
            for (int r = 0; r < spec.runs; ++r) {
                // One dataset per (network, size, run); all targets and
                // algorithms see the same sample.
                const std::uint64_t ds_seed =
                    sub_seed(spec.seed, (ni * spec.sizes.size() + si) * static_cast<std::uint64_t>(spec.runs) + r);
                for (VarId t : targets)
                    for (const auto& alg : spec.algorithms)
                        cells.push_back({ni, si, r, alg, t, ds_seed});
            }
    }

    report.rows.resize(cells.size());

    // Datasets are shared within a (network, size, run) triple; sample them
    // up front so worker threads only read.
    std::map<std::tuple<size_t, size_t, int>, Dataset> datasets;
    for (const Cell& c : cells) {
        auto key = std::make_tuple(c.net_idx, c.size_idx, c.run);
        if (!datasets.count(key))
            datasets.emplace(key,
                             forward_sample(networks[c.net_idx], spec.sizes[c.size_idx], c.dataset_seed));
    }

    auto run_cell = [&](size_t i) {
        const Cell& c = cells[i];
        BenchRow& row = report.rows[i];
        const GroundTruthBn& bn = networks[c.net_idx];
        row.network = network_label(spec.network_paths[c.net_idx]);
        row.size = spec.sizes[c.size_idx];
        row.run = c.run;
        row.algorithm = c.algorithm;
        row.target = bn.var(c.target).name;
        try {
            const Dataset& data = datasets.at(std::make_tuple(c.net_idx, c.size_idx, c.run));
            ApslConfig cfg;
            cfg.depth = spec.depth;
            cfg.depth_max = spec.depth_max;
            cfg.test = spec.test;
            cfg.fcbf_delta = spec.fcbf_delta;
            ApslRun res = c.algorithm == "apsl-fs" ? apsl_fs(data, c.target, cfg)
                                                   : apsl(data, c.target, cfg);
            NeighborhoodSpec nb{c.target, spec.depth, spec.depth_max};
            row.metrics = ar_metrics(res.graph, bn, true_neighborhood(bn, nb));
            row.ci_tests = res.ci.computed_total;
            row.pc_conditional_tests = res.pc_discovery_conditional_tests;
            row.wall_seconds = res.wall_seconds;
        } catch (const std::exception& e) {
            row.error = e.what();
            row.metrics = ArMetrics{};
            row.metrics.ar_distance = std::sqrt(2.0);
        }
    };

    if (spec.jobs <= 1) {
        for (size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::vector<std::thread> pool;
        std::mutex mu;
        size_t next = 0;
        for (int j = 0; j < spec.jobs; ++j)
            pool.emplace_back([&] {
                while (true) {
                    size_t i;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        if (next >= cells.size()) return;
                        i = next++;
                    }
                    run_cell(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    // Aggregate across all (target, run) cells of a (network, size, algorithm).
    std::map<std::tuple<std::string, std::int64_t, std::string>, std::vector<const BenchRow*>> groups;
    for (const BenchRow& r : report.rows)
        groups[{r.network, r.size, r.algorithm}].push_back(&r);
    for (const auto& [key, rows] : groups) {
        BenchAggregate a;
        a.network = std::get<0>(key);
        a.size = std::get<1>(key);
        a.algorithm = std::get<2>(key);
        a.cells = static_cast<int>(rows.size());
        std::vector<double> d, p, rc, w;
        for (const BenchRow* r : rows) {
            d.push_back(r->metrics.ar_distance);
            p.push_back(r->metrics.ar_precision);
            rc.push_back(r->metrics.ar_recall);
            w.push_back(r->wall_seconds);
        }
        auto md = mean_std(d), mp = mean_std(p), mr = mean_std(rc), mw = mean_std(w);
        a.distance_mean = md.mean;
        a.distance_std = md.sd;
        a.precision_mean = mp.mean;
        a.precision_std = mp.sd;
        a.recall_mean = mr.mean;
        a.recall_std = mr.sd;
        a.runtime_mean = mw.mean;
        a.runtime_std = mw.sd;
        report.aggregates.push_back(a);
    }
    return report;
}

void write_bench_json(std::ostream& os, const BenchReport& report) {
    nlohmann::ordered_json j;
    j["note"] =
        "aggregates pool all (target, dataset) cells; wall times are reported "
        "only in the text table to keep this file reproducible";
    j["spec"] = {{"networks", report.spec.network_paths},
                 {"sizes", report.spec.sizes},
                 {"runs", report.spec.runs},
                 {"depth", report.spec.depth_max ? std::string("max") : std::to_string(report.spec.depth)},
                 {"algorithms", report.spec.algorithms},
                 {"targets", report.spec.targets},
                 {"seed", report.spec.seed},
                 {"alpha", report.spec.test.alpha},
                 {"delta", report.spec.fcbf_delta},
                 {"max_cond_size",
                  report.spec.test.max_cond_size ? nlohmann::ordered_json(*report.spec.test.max_cond_size)
                                                 : nlohmann::ordered_json(nullptr)}};
    j["rows"] = nlohmann::ordered_json::array();
    for (const BenchRow& r : report.rows) {
        nlohmann::ordered_json row = {{"network", r.network},
                                      {"size", r.size},
                                      {"run", r.run},
                                      {"algorithm", r.algorithm},
                                      {"target", r.target},
                                      {"ar_distance", fmt(r.metrics.ar_distance)},
                                      {"ar_precision", fmt(r.metrics.ar_precision)},
                                      {"ar_recall", fmt(r.metrics.ar_recall)},
                                      {"true_edges", r.metrics.n_true_edges},
                                      {"predicted_edges", r.metrics.n_predicted_edges},
                                      {"correct_edges", r.metrics.n_correct_edges},
                                      {"ci_tests", r.ci_tests},
                                      {"pc_conditional_tests", r.pc_conditional_tests}};
        if (!r.error.empty()) row["error"] = r.error;
        j["rows"].push_back(row);
    }
    j["aggregates"] = nlohmann::ordered_json::array();
    for (const BenchAggregate& a : report.aggregates)
        j["aggregates"].push_back({{"network", a.network},
                                   {"size", a.size},
                                   {"algorithm", a.algorithm},
                                   {"cells", a.cells},
                                   {"ar_distance_mean", fmt(a.distance_mean)},
                                   {"ar_distance_std", fmt(a.distance_std)},
                                   {"ar_precision_mean", fmt(a.precision_mean)},
                                   {"ar_precision_std", fmt(a.precision_std)},
                                   {"ar_recall_mean", fmt(a.recall_mean)},
                                   {"ar_recall_std", fmt(a.recall_std)}});
    os << j.dump(2) << '\n';
}

void write_bench_table(std::ostream& os, const BenchReport& report) {
    os << std::left << std::setw(14) << "Network" << std::setw(8) << "Size" << std::setw(10)
       << "Algorithm" << std::setw(16) << "Ar_Distance" << std::setw(16) << "Ar_Precision"
       << std::setw(16) << "Ar_Recall" << std::setw(16) << "Runtime(s)" << '\n';
    auto pm = [](double m, double s) {
        std::ostringstream o;
        o << std::fixed << std::setprecision(2) << m << "+/-" << s;
        return o.str();
    };
    for (const BenchAggregate& a : report.aggregates)
        os << std::left << std::setw(14) << a.network << std::setw(8) << a.size << std::setw(10)
           << a.algorithm << std::setw(16) << pm(a.distance_mean, a.distance_std) << std::setw(16)
           << pm(a.precision_mean, a.precision_std) << std::setw(16)
           << pm(a.recall_mean, a.recall_std) << std::setw(16)
           << pm(a.runtime_mean, a.runtime_std) << '\n';
}

}  // namespace partbn
