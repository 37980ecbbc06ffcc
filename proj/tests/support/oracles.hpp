#pragma once

// Independent reference implementations used only by tests: everything here
// is brute force by construction so it cannot share bugs with the library's
// algorithmic paths.

#include <cstdint>
#include <string>
#include <vector>

#include "partbn/bnio.hpp"
#include "partbn/dataset.hpp"
#include "partbn/graph.hpp"

namespace partbn::testsupport {

std::string fixture(const std::string& name);

// d-separation decided by enumerating every simple path and applying the
// blocking definition directly.
bool dsep_by_paths(const Pdag& dag, VarId x, VarId y, const VarSet& z);

// All labeled DAGs on n nodes with at most max_edges edges, enumerated via
// the 3^(n choose 2) orientation assignments filtered for acyclicity.
std::vector<Pdag> all_dags(int n, int max_edges);

// CPDAG as the orientation-union over every DAG sharing skeleton and
// v-structures with d.
Pdag cpdag_by_class_union(const Pdag& d);

// Joint counts recomputed by a plain row scan, for checking count().
std::vector<std::int64_t> recount_rows(const Dataset& data, const std::vector<VarId>& vars);

// Wraps a DAG in uniform-ish random CPTs so it can be sampled; weights are
// drawn from a seeded generator with enough signal that edges are
// detectable at moderate n.
GroundTruthBn synth_bn(const Pdag& dag, std::uint64_t seed, int cardinality = 2);

}  // namespace partbn::testsupport
