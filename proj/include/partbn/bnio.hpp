#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "partbn/dataset.hpp"
#include "partbn/graph.hpp"
#include "partbn/types.hpp"

namespace partbn {

// Deterministic 64-bit stream splitter used everywhere randomness is
// derived: sub_seed(seed, index) feeds one splitmix64 step so parallel
// benchmark cells stay reproducible from a single master seed.
std::uint64_t splitmix64(std::uint64_t x);
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

struct CptVariable {
    std::string name;
    std::vector<std::string> states;              // size = cardinality
    std::vector<VarId> parents;                   // declared order, drives row indexing
    std::vector<std::vector<double>> rows;        // one row per parent configuration
};

// Parsed benchmark network: variables with conditional probability tables
// over a directed acyclic structure.
class GroundTruthBn {
public:
    GroundTruthBn(std::vector<CptVariable> variables);

    int n_vars() const { return static_cast<int>(vars_.size()); }
    const CptVariable& var(VarId v) const { return vars_.at(v); }
    const std::vector<CptVariable>& variables() const { return vars_; }
    const Pdag& dag() const { return dag_; }
    std::vector<std::string> names() const;
    std::optional<VarId> find(const std::string& name) const;
    const std::vector<VarId>& topological_order() const { return topo_; }

    // Row of the CPT of v selected by the parent codes in `config` (indexed
    // by VarId).
    const std::vector<double>& cpt_row(VarId v, const std::vector<int>& config) const;

private:
    std::vector<CptVariable> vars_;
    Pdag dag_;
    std::vector<VarId> topo_;
};

struct NeighborhoodSpec {
    VarId target = 0;
    int depth = 1;
    bool depth_max = false;
};

// Supported grammar: network/variable/probability blocks with discrete
// variables, `table` entries, and per-parent-configuration rows. Property
// decorations are ignored. Errors carry the offending line number.
GroundTruthBn parse_bif(std::istream& in);
GroundTruthBn parse_bif_file(const std::string& path);
void serialize_bif(std::ostream& os, const GroundTruthBn& bn);

// Ancestral sampling in topological order; bit-stable for a given seed
// across platforms (mt19937_64 raw draws mapped to [0,1) explicitly).
Dataset forward_sample(const GroundTruthBn& bn, std::int64_t n, std::uint64_t seed);

// True edges whose closer endpoint lies within skeleton distance depth-1 of
// the target: the region a depth-K learner is accountable for.
std::vector<std::pair<VarId, VarId>> true_neighborhood(const GroundTruthBn& bn,
                                                       const NeighborhoodSpec& spec);

}  // namespace partbn
