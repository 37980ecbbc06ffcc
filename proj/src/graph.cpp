#include "partbn/graph.hpp"

#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace partbn {

void Pdag::add_undirected_if_new(VarId a, VarId b) {
    if (a == b) throw UsageError("add_undirected_if_new: self edge");
    if (at(a, b) == 0 && at(b, a) == 0) {
        set(a, b, 1);
        set(b, a, 1);
    }
}

void Pdag::orient(VarId a, VarId b) {
    if (a == b) throw UsageError("orient: self edge");
    if (directed(b, a)) conflicts_.emplace_back(a, b);
    set(a, b, -1);
    set(b, a, 0);
}

void Pdag::remove_edge(VarId a, VarId b) {
    set(a, b, 0);
    set(b, a, 0);
}

VarSet Pdag::neighbors(VarId a) const {
    VarSet out;
    for (VarId b = 0; b < n_; ++b)
        if (b != a && adjacent(a, b)) out.push_back(b);
    return out;
}

VarSet Pdag::parents(VarId a) const {
    VarSet out;
    for (VarId b = 0; b < n_; ++b)
        if (b != a && directed(b, a)) out.push_back(b);
    return out;
}

VarSet Pdag::children(VarId a) const {
    VarSet out;
    for (VarId b = 0; b < n_; ++b)
        if (b != a && directed(a, b)) out.push_back(b);
    return out;
}

VarSet Pdag::undirected_neighbors(VarId a) const {
    VarSet out;
    for (VarId b = 0; b < n_; ++b)
        if (b != a && undirected(a, b)) out.push_back(b);
    return out;
}

bool Pdag::has_undirected_incident(VarId a) const {
    for (VarId b = 0; b < n_; ++b)
        if (b != a && undirected(a, b)) return true;
    return false;
}

int Pdag::edge_count() const { return directed_edge_count() + undirected_edge_count(); }

int Pdag::directed_edge_count() const {
    int c = 0;
    for (VarId a = 0; a < n_; ++a)
        for (VarId b = 0; b < n_; ++b)
            if (a != b && directed(a, b)) ++c;
    return c;
}

int Pdag::undirected_edge_count() const {
    int c = 0;
    for (VarId a = 0; a < n_; ++a)
        for (VarId b = a + 1; b < n_; ++b)
            if (undirected(a, b)) ++c;
    return c;
}

bool Pdag::encoding_valid() const {
    for (VarId a = 0; a < n_; ++a) {
        if (at(a, a) != 0) return false;
        for (VarId b = a + 1; b < n_; ++b) {
            const int ab = at(a, b), ba = at(b, a);
            const bool ok = (ab == 0 && ba == 0) || (ab == 1 && ba == 1) ||
                            (ab == -1 && ba == 0) || (ab == 0 && ba == -1);
            if (!ok) return false;
        }
    }
    return true;
}

bool Pdag::directed_part_acyclic() const {
    // Kahn's algorithm over the directed subgraph.
    std::vector<int> indeg(n_, 0);
    for (VarId a = 0; a < n_; ++a)
        for (VarId b = 0; b < n_; ++b)
            if (a != b && directed(a, b)) ++indeg[b];
    std::deque<VarId> q;
    for (VarId v = 0; v < n_; ++v)
        if (indeg[v] == 0) q.push_back(v);
    int seen = 0;
    while (!q.empty()) {
        VarId v = q.front();
        q.pop_front();
        ++seen;
        for (VarId b = 0; b < n_; ++b)
            if (b != v && directed(v, b) && --indeg[b] == 0) q.push_back(b);
    }
    return seen == n_;
}

bool Pdag::is_dag() const {
    if (undirected_edge_count() > 0) return false;
    return directed_part_acyclic();
}

namespace {

bool apply_rules_to_edge(Pdag& g, VarId a, VarId b) {
    // The edge a-b is undirected; try to orient it a->b.
    const int n = g.n();
    // R1: x -> a with x, b nonadjacent.
    for (VarId x = 0; x < n; ++x)
        if (x != a && x != b && g.directed(x, a) && !g.adjacent(x, b)) {
            g.orient(a, b);
            return true;
        }
    // R2: a -> y -> b.
    for (VarId y = 0; y < n; ++y)
        if (y != a && y != b && g.directed(a, y) && g.directed(y, b)) {
            g.orient(a, b);
            return true;
        }
    // R3: a - z -> b and a - w -> b with z, w nonadjacent.
    for (VarId z = 0; z < n; ++z) {
        if (z == a || z == b || !g.undirected(a, z) || !g.directed(z, b)) continue;
        for (VarId w = z + 1; w < n; ++w) {
            if (w == a || w == b || !g.undirected(a, w) || !g.directed(w, b)) continue;
            if (!g.adjacent(z, w)) {
                g.orient(a, b);
                return true;
            }
        }
    }
    return false;
}

}  // namespace

Pdag meek_rules_ordered(const Pdag& g, const std::vector<std::pair<VarId, VarId>>& order) {
    Pdag out = g;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : order) {
            if (!out.undirected(a, b)) continue;
            if (apply_rules_to_edge(out, a, b)) {
                changed = true;
            } else if (apply_rules_to_edge(out, b, a)) {
                changed = true;
            }
        }
    }
    return out;
}

Pdag meek_rules(const Pdag& g) {
    std::vector<std::pair<VarId, VarId>> order;
    for (VarId a = 0; a < g.n(); ++a)
        for (VarId b = a + 1; b < g.n(); ++b) order.emplace_back(a, b);
    return meek_rules_ordered(g, order);
}

std::set<std::tuple<VarId, VarId, VarId>> v_structures(const Pdag& dag) {
    std::set<std::tuple<VarId, VarId, VarId>> out;
    const int n = dag.n();
    for (VarId z = 0; z < n; ++z) {
        VarSet pa = dag.parents(z);
        for (size_t i = 0; i < pa.size(); ++i)
            for (size_t j = i + 1; j < pa.size(); ++j)
                if (!dag.adjacent(pa[i], pa[j])) out.emplace(pa[i], z, pa[j]);
    }
    return out;
}

Pdag dag_to_cpdag(const Pdag& dag) {
    if (!dag.is_dag()) throw UsageError("dag_to_cpdag: input is not a DAG");
    Pdag skel(dag.n());
    for (VarId a = 0; a < dag.n(); ++a)
        for (VarId b = a + 1; b < dag.n(); ++b)
            if (dag.adjacent(a, b)) skel.add_undirected_if_new(a, b);
    for (const auto& [x, z, y] : v_structures(dag)) {
        skel.orient(x, z);
        skel.orient(y, z);
    }
    return meek_rules(skel);
}

bool d_separated(const Pdag& dag, VarId x, VarId y, const VarSet& z) {
    if (x == y) throw UsageError("d_separated: identical endpoints");
    if (contains(z, x) || contains(z, y)) throw UsageError("d_separated: endpoint in conditioning set");
    const int n = dag.n();

    // Nodes that are in z or have a descendant in z (ancestors of z).
    std::vector<char> in_z(n, 0), anc_z(n, 0);
    std::deque<VarId> q;
    for (VarId v : z) {
        in_z[v] = 1;
        if (!anc_z[v]) {
            anc_z[v] = 1;
            q.push_back(v);
        }
    }
    while (!q.empty()) {
        VarId v = q.front();
        q.pop_front();
        for (VarId p = 0; p < n; ++p)
            if (p != v && dag.directed(p, v) && !anc_z[p]) {
                anc_z[p] = 1;
                q.push_back(p);
            }
    }

    // Active-trail reachability over (node, entering-direction) states.
    // Direction 0: trail arrives along an edge pointing away from the node
    // (from a child, "up"); direction 1: arrives from a parent ("down").
    std::vector<char> visited(static_cast<size_t>(n) * 2, 0);
    std::deque<std::pair<VarId, int>> frontier;
    frontier.emplace_back(x, 0);
    while (!frontier.empty()) {
        auto [v, dir] = frontier.front();
        frontier.pop_front();
        if (visited[static_cast<size_t>(v) * 2 + dir]) continue;
        visited[static_cast<size_t>(v) * 2 + dir] = 1;
        if (v == y) return false;

        if (dir == 0) {
            if (!in_z[v]) {
                for (VarId p = 0; p < n; ++p)
                    if (p != v && dag.directed(p, v)) frontier.emplace_back(p, 0);
                for (VarId c = 0; c < n; ++c)
                    if (c != v && dag.directed(v, c)) frontier.emplace_back(c, 1);
            }
        } else {
            if (!in_z[v]) {
                for (VarId c = 0; c < n; ++c)
                    if (c != v && dag.directed(v, c)) frontier.emplace_back(c, 1);
            }
            if (anc_z[v]) {
                for (VarId p = 0; p < n; ++p)
                    if (p != v && dag.directed(p, v)) frontier.emplace_back(p, 0);
            }
        }
    }
    return true;
}

std::vector<int> skeleton_distances(const Pdag& g, VarId source) {
    std::vector<int> dist(g.n(), -1);
    std::deque<VarId> q;
    dist[source] = 0;
    q.push_back(source);
    while (!q.empty()) {
        VarId v = q.front();
        q.pop_front();
        for (VarId b = 0; b < g.n(); ++b)
            if (b != v && g.adjacent(v, b) && dist[b] < 0) {
                dist[b] = dist[v] + 1;
                q.push_back(b);
            }
    }
    return dist;
}

void write_edge_list(std::ostream& os, const Pdag& g, const std::vector<std::string>& names) {
    for (VarId a = 0; a < g.n(); ++a)
        for (VarId b = 0; b < g.n(); ++b) {
            if (a < b && g.undirected(a, b)) os << names[a] << " -- " << names[b] << '\n';
            if (a != b && g.directed(a, b)) os << names[a] << " -> " << names[b] << '\n';
        }
}

Pdag read_edge_list(std::istream& in, const std::vector<std::string>& names) {
    std::map<std::string, VarId> index;
    for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<VarId>(i);
    Pdag g(static_cast<int>(names.size()));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string a, op, b;
        if (!(ls >> a)) continue;  // blank line
        if (!(ls >> op >> b) || (op != "->" && op != "--"))
            throw FormatError("edge list: malformed line " + std::to_string(line_no));
        auto ia = index.find(a), ib = index.find(b);
        if (ia == index.end()) throw UsageError("edge list: unknown variable '" + a + "' at line " + std::to_string(line_no));
        if (ib == index.end()) throw UsageError("edge list: unknown variable '" + b + "' at line " + std::to_string(line_no));
        if (op == "--")
            g.add_undirected_if_new(ia->second, ib->second);
        else
            g.orient(ia->second, ib->second);
    }
    return g;
}

void write_adjacency_csv(std::ostream& os, const Pdag& g) {
    for (VarId a = 0; a < g.n(); ++a) {
        for (VarId b = 0; b < g.n(); ++b) {
            if (b) os << ',';
            os << g.at(a, b);
        }
        os << '\n';
    }
}

}  // namespace partbn
