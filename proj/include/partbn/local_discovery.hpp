#pragma once

#include <map>
#include <optional>

#include "partbn/citest.hpp"
#include "partbn/dataset.hpp"
#include "partbn/types.hpp"

namespace partbn {

// Parents-and-children set of a target plus, per child candidate X, the
// spouse set sharing the common child X, and the separating sets found on
// the way.
struct MbResult {
    VarSet pc;
    std::map<VarId, VarSet> spouses;  // keys are members of pc
    std::map<VarId, VarSet> sepsets;  // witness Z with target indep. of key given Z
};

struct PcResult {
    VarSet pc;
    std::map<VarId, VarSet> sepsets;
};

// Per-run memo of discovered PC sets, keyed by variable. A cache instance
// is bound to one engine (one dataset and test config); reusing it across
// runs on the same inputs returns identical results.
class PcCache {
public:
    const PcResult* find_pc(VarId t) const;
    void store_pc(VarId t, PcResult r);

    const VarSet* find_fcbf(VarId t) const;
    void store_fcbf(VarId t, VarSet pc);

    std::optional<double> find_su(VarId a, VarId b) const;
    void store_su(VarId a, VarId b, double su);

    // Conditional tests spent while discovering PC sets (screening and
    // subset elimination), for efficiency comparisons between backends.
    std::int64_t pc_conditional_tests = 0;

private:
    std::map<VarId, PcResult> hiton_;
    std::map<VarId, VarSet> fcbf_;
    std::map<std::pair<VarId, VarId>, double> su_;
};

// First separating set of (x, y) among subsets of pool, searched in
// increasing size then lexicographic order. Sizes below min_size and above
// the engine's max_cond_size are skipped.
std::optional<VarSet> find_separator(CiEngine& engine, VarId x, VarId y, const VarSet& pool,
                                     size_t min_size);

// Interleaved forward/backward PC discovery: candidates are admitted in
// descending unconditional association order (ties by ascending id), and
// after each admission every admitted variable is re-tested against all
// small subsets of the other admitted ones. Eliminated and screened-out
// variables record the witnessing separator.
const PcResult& hiton_pc(CiEngine& engine, VarId t, PcCache& cache);

// PC + spouses. Spouse candidates come from the PCs of PC members; Y is a
// spouse through child X when the recorded separator of Y stops working
// once X joins the conditioning set. After the spouse scan, PC members that
// become separable from the target given a subset of the candidate blanket
// are demoted (they were unreachable false positives of the one-sided PC
// search), and the spouse scan is repeated until membership settles.
MbResult get_mb(CiEngine& engine, VarId t, PcCache& cache);

// Threshold-then-prune relevance filter: keep X with SU(X;t) > delta, order
// by descending SU (ties ascending id), and drop any later variable that is
// more strongly tied to an earlier survivor than to the target.
VarSet fcbf(const Dataset& data, VarId t, double delta, PcCache& cache);

// MB discovery with fcbf standing in for the PC search; spouse logic
// searches separators inside the fcbf PC of the target only.
MbResult mb_fs(const Dataset& data, CiEngine& engine, VarId t, double delta, PcCache& cache);

}  // namespace partbn
