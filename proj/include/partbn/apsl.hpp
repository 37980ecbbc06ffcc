#pragma once

#include <map>

#include "partbn/citest.hpp"
#include "partbn/graph.hpp"
#include "partbn/local_discovery.hpp"

namespace partbn {

enum class MbBackend { hiton, fcbf };

struct ApslConfig {
    int depth = 1;           // layers beyond this stop expanding once oriented
    bool depth_max = false;  // learn until the queue drains
    MbBackend backend = MbBackend::hiton;
    TestConfig test;
    double fcbf_delta = 0.05;
};

// Everything a run produces besides the graph: layer bookkeeping for depth
// tests, and cost counters for summaries and efficiency comparisons.
struct ApslRun {
    Pdag graph;
    std::map<int, VarSet> layer_nodes;
    std::vector<std::pair<VarId, int>> pop_trace;  // (node, layer at pop)
    CiCounters ci;
    std::int64_t pc_discovery_conditional_tests = 0;
    double wall_seconds = 0.0;
};

// Part-of-a-structure learner: breadth-first MB expansion from the target.
// Per popped node A it records undirected edges to PC_A (never clobbering
// existing orientations), orients A -> B <- C for every spouse C of A with
// common child B, orients X -> A <- Y for PC members X, Y that are
// separable without A but not with A added, then propagates orientations
// with the Meek rules. Layers count expansion distance (the target is layer
// 1); past layer `depth` the loop keeps going only while some layer-`depth`
// node still has an undetermined incident edge.
ApslRun apsl_run(CiEngine& engine, const Dataset* data, VarId target, const ApslConfig& cfg,
                 PcCache& cache);

// Convenience entry points over a dataset-backed G2 engine.
ApslRun apsl(const Dataset& data, VarId target, const ApslConfig& cfg);
ApslRun apsl_fs(const Dataset& data, VarId target, const ApslConfig& cfg);

}  // namespace partbn
