#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>

#include "partbn/dataset.hpp"
#include "partbn/graph.hpp"
#include "partbn/types.hpp"

namespace partbn {

struct TestConfig {
    double alpha = 0.01;                 // significance level
    double reliability_factor = 5.0;     // minimum rows per degree of freedom
    std::optional<int> max_cond_size = 3;

    bool allows_cond_size(size_t k) const {
        return !max_cond_size || static_cast<int>(k) <= *max_cond_size;
    }
};

struct CiResult {
    double statistic = 0.0;
    std::int64_t dof = 1;
    double p_value = 1.0;
    bool independent = true;
    bool reliable = true;
};

// Likelihood-ratio independence test on the contingency table of (x, y)
// within each stratum of z. Tests with fewer than reliability_factor rows
// per degree of freedom are marked unreliable and report independence.
CiResult g2_test(const Dataset& data, VarId x, VarId y, const VarSet& z, const TestConfig& cfg);

// SU(X;Y) = 2 I(X;Y) / (H(X) + H(Y)) with entropies in bits; 0 when both
// variables are constant.
double symmetric_uncertainty(const Dataset& data, VarId x, VarId y);

// Counters are split so callers can attribute cost to discovery phases.
struct CiCounters {
    std::int64_t computed_total = 0;        // cache misses
    std::int64_t computed_conditional = 0;  // cache misses with |z| >= 1
    std::int64_t requested_total = 0;
};

// Independence backend shared by all discovery code. The statistical G2
// engine and the exact graph oracle implement the same interface so a
// learner can be run against either.
class CiEngine {
public:
    virtual ~CiEngine() = default;

    CiResult test(VarId x, VarId y, const VarSet& z);

    // Unconditional association score used for candidate ranking. Higher
    // means more strongly associated; ties are broken by the caller.
    virtual double association(VarId x, VarId y) = 0;

    virtual int n_vars() const = 0;
    const TestConfig& config() const { return cfg_; }
    const CiCounters& counters() const { return counters_; }

protected:
    explicit CiEngine(TestConfig cfg) : cfg_(std::move(cfg)) {}
    virtual CiResult compute(VarId x, VarId y, const VarSet& z) = 0;

    TestConfig cfg_;

private:
    struct KeyHash {
        size_t operator()(const std::vector<int>& k) const {
            size_t h = 1469598103934665603ull;
            for (int v : k) {
                h ^= static_cast<size_t>(v) + 0x9e3779b9;
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    std::unordered_map<std::vector<int>, CiResult, KeyHash> cache_;
    CiCounters counters_;
};

class G2Engine : public CiEngine {
public:
    G2Engine(const Dataset& data, TestConfig cfg) : CiEngine(std::move(cfg)), data_(data) {}

    double association(VarId x, VarId y) override;
    int n_vars() const override { return data_.n_vars(); }
    const Dataset& data() const { return data_; }

protected:
    CiResult compute(VarId x, VarId y, const VarSet& z) override;

private:
    const Dataset& data_;
};

// Exact oracle over a known DAG; answers via d-separation. Association is
// 1 for dependent pairs and 0 otherwise, so ranking degenerates to variable
// order, which keeps oracle runs deterministic.
class DsepEngine : public CiEngine {
public:
    explicit DsepEngine(Pdag dag, TestConfig cfg = oracle_config())
        : CiEngine(std::move(cfg)), dag_(std::move(dag)) {}

    double association(VarId x, VarId y) override;
    int n_vars() const override { return dag_.n(); }

    static TestConfig oracle_config() {
        TestConfig cfg;
        cfg.max_cond_size.reset();  // exact answers, no need to cap
        return cfg;
    }

protected:
    CiResult compute(VarId x, VarId y, const VarSet& z) override;

private:
    Pdag dag_;
};

// Upper tail of the chi-squared distribution, via the regularized upper
// incomplete gamma function.
double chi_squared_upper_tail(double statistic, double dof);

}  // namespace partbn
