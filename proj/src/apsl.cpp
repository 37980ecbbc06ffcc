#include "partbn/apsl.hpp"

#include <chrono>
#include <deque>
#include <set>

namespace partbn {

namespace {

// Separator lookup for the collider step: prefer the sepset recorded while
// discovering the PC of x, otherwise search subsets of that PC afresh.
std::optional<VarSet> collider_sepset(CiEngine& engine, const Dataset* data, VarId x, VarId y,
                                      const ApslConfig& cfg, PcCache& cache) {
    if (cfg.backend == MbBackend::hiton) {
        const PcResult& px = hiton_pc(engine, x, cache);
        auto it = px.sepsets.find(y);
        if (it != px.sepsets.end()) return it->second;
        return find_separator(engine, x, y, px.pc, 0);
    }
    VarSet px = fcbf(*data, x, cfg.fcbf_delta, cache);
    return find_separator(engine, x, y, px, 0);
}

}  // namespace

ApslRun apsl_run(CiEngine& engine, const Dataset* data, VarId target, const ApslConfig& cfg,
                 PcCache& cache) {
    if (target < 0 || target >= engine.n_vars()) throw UsageError("apsl: invalid target");
    if (!cfg.depth_max && cfg.depth < 1) throw UsageError("apsl: depth must be >= 1");
    if (cfg.backend == MbBackend::fcbf && data == nullptr)
        throw UsageError("apsl: fcbf backend needs a dataset");

    const auto t0 = std::chrono::steady_clock::now();
    const auto ci0 = engine.counters();
    const auto pc0 = cache.pc_conditional_tests;

    const int n = engine.n_vars();
    ApslRun run;
    run.graph = Pdag(n);
    Pdag& g = run.graph;

    std::set<VarId> visited;
    std::deque<VarId> queue{target};
    int layer_num = 1;
    run.layer_nodes[1] = {target};
    std::int64_t countdown = 1;
    std::map<VarId, VarSet> discovered_pc;

    while (!queue.empty()) {
        const VarId a = queue.front();
        queue.pop_front();
        if (visited.count(a)) continue;

        // Step 1: expand the MB of a; undirected skeleton edges plus the
        // v-structures a -> b <- c seen from a's spouses.
        MbResult mb = cfg.backend == MbBackend::hiton
                          ? get_mb(engine, a, cache)
                          : mb_fs(*data, engine, a, cfg.fcbf_delta, cache);
        visited.insert(a);
        run.pop_trace.emplace_back(a, layer_num);
        discovered_pc[a] = mb.pc;
        for (VarId b : mb.pc) queue.push_back(b);
        for (VarId b : mb.pc) g.add_undirected_if_new(a, b);
        for (const auto& [b, sps] : mb.spouses)
            for (VarId c : sps) {
                g.orient(a, b);
                g.orient(c, b);
            }

        // Step 2: colliders at a. Two PC members with a separator that
        // breaks once a is conditioned on are both parents of a.
        for (VarId x : mb.pc)
            for (VarId y : mb.pc) {
                if (y == x) continue;
                auto sep = collider_sepset(engine, data, x, y, cfg, cache);
                if (!sep) continue;
                VarSet cond = *sep;
                set_insert(cond, a);
                if (!engine.test(x, y, cond).independent) {
                    g.orient(x, a);
                    g.orient(y, a);
                }
            }

        // Step 3: propagate orientations, then layer bookkeeping.
        g = meek_rules(g);

        if (--countdown == 0) {
            ++layer_num;
            VarSet next;
            for (VarId x : run.layer_nodes[layer_num - 1]) {
                auto it = discovered_pc.find(x);
                const VarSet& pcx = it != discovered_pc.end() ? it->second : VarSet{};
                for (VarId b : pcx) set_insert(next, b);
            }
            std::int64_t remaining = 0;
            for (VarId x : next)
                if (!visited.count(x)) ++remaining;
            run.layer_nodes[layer_num] = std::move(next);
            countdown = remaining;
        }

        if (!cfg.depth_max && layer_num > cfg.depth) {
            bool some_undetermined = false;
            for (VarId x : run.layer_nodes[cfg.depth])
                if (g.has_undirected_incident(x)) {
                    some_undetermined = true;
                    break;
                }
            if (!some_undetermined) break;
        }
        if (static_cast<int>(visited.size()) == n) break;
    }

    const auto ci1 = engine.counters();
    run.ci.requested_total = ci1.requested_total - ci0.requested_total;
    run.ci.computed_total = ci1.computed_total - ci0.computed_total;
    run.ci.computed_conditional = ci1.computed_conditional - ci0.computed_conditional;
    run.pc_discovery_conditional_tests = cache.pc_conditional_tests - pc0;
    run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

ApslRun apsl(const Dataset& data, VarId target, const ApslConfig& cfg) {
    ApslConfig c = cfg;
    c.backend = MbBackend::hiton;
    G2Engine engine(data, c.test);
    PcCache cache;
    return apsl_run(engine, &data, target, c, cache);
}

ApslRun apsl_fs(const Dataset& data, VarId target, const ApslConfig& cfg) {
    ApslConfig c = cfg;
    c.backend = MbBackend::fcbf;
    G2Engine engine(data, c.test);
    PcCache cache;
    return apsl_run(engine, &data, target, c, cache);
}

}  // namespace partbn
