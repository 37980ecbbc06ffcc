#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "partbn/apsl.hpp"
#include "partbn/bnio.hpp"
#include "partbn/graph.hpp"

namespace partbn {

// Part-structure accuracy triple. The precision/recall denominators follow
// the benchmark convention this toolkit reproduces: precision divides by
// the number of true edges in the region, recall by the number of predicted
// edges. ar_distance = sqrt((1-P)^2 + (1-R)^2), lower is better.
struct ArMetrics {
    double ar_precision = 0.0;
    double ar_recall = 0.0;
    double ar_distance = 0.0;
    std::int64_t n_true_edges = 0;
    std::int64_t n_predicted_edges = 0;
    std::int64_t n_correct_edges = 0;
};

// Scores `learned` against the true edges in `region`. A predicted edge is
// any learned edge with at least one endpoint among the region's nodes. A
// region edge u->v counts correct when learned as u->v, or learned
// undirected while the truth CPDAG also leaves u-v undirected. When both
// the region and the prediction are empty the metrics are 1 (a perfect
// empty answer); a one-sided empty gives 0.
ArMetrics ar_metrics(const Pdag& learned, const GroundTruthBn& truth,
                     const std::vector<std::pair<VarId, VarId>>& region);

// The five nodes with the largest parents-and-children sets, ties broken by
// ascending index.
std::vector<VarId> five_largest_pc(const GroundTruthBn& bn);

struct BenchSpec {
    std::vector<std::string> network_paths;
    std::vector<std::int64_t> sizes;
    int runs = 10;
    int depth = 1;
    bool depth_max = false;
    std::vector<std::string> algorithms = {"apsl", "apsl-fs"};
    std::string targets = "all";  // "all" or "largest5"
    std::uint64_t seed = 1;
    int jobs = 1;
    TestConfig test;
    double fcbf_delta = 0.05;
};

struct BenchRow {
    std::string network;
    std::int64_t size = 0;
    int run = 0;
    std::string algorithm;
    std::string target;
    ArMetrics metrics;
    std::int64_t ci_tests = 0;
    std::int64_t pc_conditional_tests = 0;
    double wall_seconds = 0.0;
    std::string error;  // non-empty when the cell failed; distance is sqrt(2)
};

struct BenchAggregate {
    std::string network;
    std::int64_t size = 0;
    std::string algorithm;
    int cells = 0;
    double distance_mean = 0, distance_std = 0;
    double precision_mean = 0, precision_std = 0;
    double recall_mean = 0, recall_std = 0;
    double runtime_mean = 0, runtime_std = 0;
};

struct BenchReport {
    BenchSpec spec;
    std::vector<BenchRow> rows;
    std::vector<BenchAggregate> aggregates;  // recomputable from rows
};

// Runs every (network, size, dataset run, target, algorithm) cell. Dataset
// seeds derive from the master seed via sub_seed; failures land in the row's
// error field instead of aborting the sweep.
BenchReport bench(const BenchSpec& spec);

// Deterministic JSON: one object per row plus an aggregate block. Wall
// times are excluded so identical spec+seed runs are byte-identical; use
// the text table for timings.
void write_bench_json(std::ostream& os, const BenchReport& report);

// Aligned mean +/- std table, one row per (network, size, algorithm).
void write_bench_table(std::ostream& os, const BenchReport& report);

}  // namespace partbn
