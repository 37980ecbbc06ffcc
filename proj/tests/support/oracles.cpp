#include "support/oracles.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>

namespace partbn::testsupport {

std::string fixture(const std::string& name) {
    return std::string(PARTBN_FIXTURE_DIR) + "/" + name;
}

namespace {

bool has_descendant_in(const Pdag& dag, VarId v, const std::vector<char>& mark) {
    // DFS over children.
    std::vector<VarId> stack{v};
    std::set<VarId> seen;
    while (!stack.empty()) {
        VarId u = stack.back();
        stack.pop_back();
        if (mark[u]) return true;
        if (!seen.insert(u).second) continue;
        for (VarId c = 0; c < dag.n(); ++c)
            if (c != u && dag.directed(u, c)) stack.push_back(c);
    }
    return false;
}

}  // namespace

bool dsep_by_paths(const Pdag& dag, VarId x, VarId y, const VarSet& z) {
    const int n = dag.n();
    std::vector<char> in_z(n, 0);
    for (VarId v : z) in_z[v] = 1;

    // Enumerate simple skeleton paths x -> ... -> y by DFS.
    std::vector<VarId> path{x};
    std::vector<char> on_path(n, 0);
    on_path[x] = 1;
    bool found_open = false;

    std::function<void()> dfs = [&]() {
        if (found_open) return;
        VarId tail = path.back();
        if (tail == y) {
            // Path is open iff every collider is in Z or has a descendant in
            // Z, and every non-collider is outside Z.
            bool open = true;
            for (size_t i = 1; i + 1 < path.size(); ++i) {
                VarId prev = path[i - 1], mid = path[i], next = path[i + 1];
                const bool collider = dag.directed(prev, mid) && dag.directed(next, mid);
                if (collider) {
                    if (!in_z[mid] && !has_descendant_in(dag, mid, in_z)) open = false;
                } else {
                    if (in_z[mid]) open = false;
                }
                if (!open) break;
            }
            if (open) found_open = true;
            return;
        }
        for (VarId nxt = 0; nxt < n; ++nxt) {
            if (on_path[nxt] || !dag.adjacent(tail, nxt)) continue;
            path.push_back(nxt);
            on_path[nxt] = 1;
            dfs();
            on_path[nxt] = 0;
            path.pop_back();
        }
    };
    dfs();
    return !found_open;
}

std::vector<Pdag> all_dags(int n, int max_edges) {
    std::vector<std::pair<VarId, VarId>> pairs;
    for (VarId a = 0; a < n; ++a)
        for (VarId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

    std::vector<Pdag> out;
    std::vector<int> state(pairs.size(), 0);  // 0 none, 1 a->b, 2 b->a
    while (true) {
        int edges = 0;
        for (int s : state)
            if (s) ++edges;
        if (edges <= max_edges) {
            Pdag g(n);
            for (size_t i = 0; i < pairs.size(); ++i) {
                if (state[i] == 1) g.orient(pairs[i].first, pairs[i].second);
                if (state[i] == 2) g.orient(pairs[i].second, pairs[i].first);
            }
            if (g.directed_part_acyclic()) out.push_back(std::move(g));
        }
        // odometer
        size_t i = 0;
        while (i < state.size() && state[i] == 2) state[i++] = 0;
        if (i == state.size()) break;
        ++state[i];
    }
    return out;
}

Pdag cpdag_by_class_union(const Pdag& d) {
    const int n = d.n();
    std::vector<std::pair<VarId, VarId>> skel;
    for (VarId a = 0; a < n; ++a)
        for (VarId b = a + 1; b < n; ++b)
            if (d.adjacent(a, b)) skel.emplace_back(a, b);

    const auto vs = v_structures(d);

    // Enumerate the 2^edges orientations of the fixed skeleton; keep DAGs
    // with the same v-structures.
    std::vector<Pdag> cls;
    const size_t m = skel.size();
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        Pdag g(n);
        for (size_t i = 0; i < m; ++i) {
            if (mask & (1ull << i))
                g.orient(skel[i].first, skel[i].second);
            else
                g.orient(skel[i].second, skel[i].first);
        }
        if (!g.directed_part_acyclic()) continue;
        if (v_structures(g) != vs) continue;
        cls.push_back(std::move(g));
    }

    Pdag out(n);
    for (const auto& [a, b] : skel) {
        bool all_ab = true, all_ba = true;
        for (const Pdag& g : cls) {
            if (!g.directed(a, b)) all_ab = false;
            if (!g.directed(b, a)) all_ba = false;
        }
        if (all_ab)
            out.orient(a, b);
        else if (all_ba)
            out.orient(b, a);
        else
            out.add_undirected_if_new(a, b);
    }
    return out;
}

std::vector<std::int64_t> recount_rows(const Dataset& data, const std::vector<VarId>& vars) {
    std::int64_t size = 1;
    for (VarId v : vars) size *= data.cardinality(v);
    std::vector<std::int64_t> counts(size, 0);
    for (std::int64_t r = 0; r < data.n_rows(); ++r) {
        std::int64_t idx = 0;
        for (VarId v : vars) idx = idx * data.cardinality(v) + data.column(v)[r];
        ++counts[idx];
    }
    return counts;
}

GroundTruthBn synth_bn(const Pdag& dag, std::uint64_t seed, int cardinality) {
    // Random-logistic tables: each parent contributes an additive weight
    // matrix in logit space, so every edge perturbs the child distribution
    // and exact cancellations have measure zero.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(-1.8, 1.8);
    std::uniform_real_distribution<double> bias(-0.4, 0.4);
    std::vector<CptVariable> vars;
    for (VarId v = 0; v < dag.n(); ++v) {
        CptVariable cv;
        cv.name = "v" + std::to_string(v);
        for (int s = 0; s < cardinality; ++s) cv.states.push_back("s" + std::to_string(s));
        cv.parents = dag.parents(v);

        std::vector<double> b(cardinality);
        for (double& x : b) x = bias(rng);
        std::vector<std::vector<double>> w(cv.parents.size(),
                                           std::vector<double>(static_cast<size_t>(cardinality) * cardinality));
        for (auto& m : w)
            for (double& x : m) x = weight(rng);

        std::int64_t configs = 1;
        for (size_t i = 0; i < cv.parents.size(); ++i) configs *= cardinality;
        std::vector<int> coord(cv.parents.size(), 0);
        for (std::int64_t c = 0; c < configs; ++c) {
            std::vector<double> logits = b;
            for (size_t i = 0; i < cv.parents.size(); ++i)
                for (int s = 0; s < cardinality; ++s)
                    logits[s] += w[i][static_cast<size_t>(coord[i]) * cardinality + s];
            double mx = logits[0];
            for (double l : logits) mx = std::max(mx, l);
            double z = 0;
            std::vector<double> row(cardinality);
            for (int s = 0; s < cardinality; ++s) z += (row[s] = std::exp(logits[s] - mx));
            for (double& x : row) x /= z;
            cv.rows.push_back(std::move(row));
            for (size_t i = coord.size(); i-- > 0;) {
                if (++coord[i] < cardinality) break;
                coord[i] = 0;
            }
        }
        vars.push_back(std::move(cv));
    }
    return GroundTruthBn(std::move(vars));
}

}  // namespace partbn::testsupport
