#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "partbn/types.hpp"

namespace partbn {

// Partially directed graph over n variables, stored as a dense matrix of
// {-1, 0, 1}. For a pair (a, b) the entry pair (m[a][b], m[b][a]) is one of
//   (0, 0)   not adjacent
//   (1, 1)   adjacent, direction undetermined
//   (-1, 0)  a -> b
//   (0, -1)  b -> a
// and no other combination is ever produced.
class Pdag {
public:
    Pdag() = default;
    explicit Pdag(int n) : n_(n), m_(static_cast<size_t>(n) * n, 0) {}

    int n() const { return n_; }
    int at(VarId a, VarId b) const { return m_[static_cast<size_t>(a) * n_ + b]; }

    bool adjacent(VarId a, VarId b) const { return at(a, b) != 0 || at(b, a) != 0; }
    bool undirected(VarId a, VarId b) const { return at(a, b) == 1 && at(b, a) == 1; }
    bool directed(VarId a, VarId b) const { return at(a, b) == -1 && at(b, a) == 0; }

    // Records an undirected edge only if the pair is currently nonadjacent,
    // so earlier orientations are never re-initialized.
    void add_undirected_if_new(VarId a, VarId b);

    // Forces the state to a -> b regardless of what was there. A previous
    // opposite orientation is appended to the conflict log.
    void orient(VarId a, VarId b);

    void remove_edge(VarId a, VarId b);

    VarSet neighbors(VarId a) const;           // all adjacent nodes
    VarSet parents(VarId a) const;             // b with b -> a
    VarSet children(VarId a) const;            // b with a -> b
    VarSet undirected_neighbors(VarId a) const;

    bool has_undirected_incident(VarId a) const;

    int edge_count() const;
    int directed_edge_count() const;
    int undirected_edge_count() const;

    // Every entry pair is one of the four legal states and the diagonal is 0.
    bool encoding_valid() const;

    // True when all edges are directed and the directed part has no cycle.
    bool is_dag() const;
    bool directed_part_acyclic() const;

    bool operator==(const Pdag& o) const { return n_ == o.n_ && m_ == o.m_; }

    // (a, b) pairs where orient() overwrote the opposite direction.
    const std::vector<std::pair<VarId, VarId>>& orientation_conflicts() const {
        return conflicts_;
    }

private:
    void set(VarId a, VarId b, int v) { m_[static_cast<size_t>(a) * n_ + b] = static_cast<std::int8_t>(v); }

    int n_ = 0;
    std::vector<std::int8_t> m_;
    std::vector<std::pair<VarId, VarId>> conflicts_;
};

// Closes g under the three orientation-propagation rules:
//   R1  x -> y, y - z, x and z nonadjacent        =>  y -> z
//   R2  x -> y -> z, x - z                        =>  x -> z
//   R3  x - z -> y, x - w -> y, z and w nonadjacent, x - y  =>  x -> y
// Applied to a fixpoint over a deterministic ascending edge scan; directed
// edges are never flipped.
Pdag meek_rules(const Pdag& g);

// Same closure with an explicit scan order over (a, b) index pairs; exposed
// so tests can check order independence.
Pdag meek_rules_ordered(const Pdag& g, const std::vector<std::pair<VarId, VarId>>& order);

// Unordered-parent triples x -> z <- y with x, y nonadjacent, reported as
// (min(x,y), z, max(x,y)).
std::set<std::tuple<VarId, VarId, VarId>> v_structures(const Pdag& dag);

// Canonical CPDAG of a fully directed acyclic graph: skeleton, the DAG's
// v-structures, then the Meek closure. Throws on cyclic or partially
// directed input.
Pdag dag_to_cpdag(const Pdag& dag);

// Exact graphical independence check on a DAG: true iff every path between
// x and y is blocked by z.
bool d_separated(const Pdag& dag, VarId x, VarId y, const VarSet& z);

// Undirected-skeleton BFS distances from source; -1 for unreachable nodes.
std::vector<int> skeleton_distances(const Pdag& g, VarId source);

// One edge per line: "a -> b" or "a -- b", using the given names.
void write_edge_list(std::ostream& os, const Pdag& g, const std::vector<std::string>& names);
Pdag read_edge_list(std::istream& in, const std::vector<std::string>& names);

// Raw {-1,0,1} matrix, one row per line, comma separated.
void write_adjacency_csv(std::ostream& os, const Pdag& g);

}  // namespace partbn
