#include "partbn/citest.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

namespace partbn {

double chi_squared_upper_tail(double statistic, double dof) {
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

CiResult CiEngine::test(VarId x, VarId y, const VarSet& z) {
    if (x == y) throw UsageError("ci test: x == y");
    if (contains(z, x) || contains(z, y)) throw UsageError("ci test: endpoint in conditioning set");
    if (x < 0 || y < 0 || x >= n_vars() || y >= n_vars()) throw UsageError("ci test: invalid variable id");
    if (!cfg_.allows_cond_size(z.size()))
        throw ConditionTooLarge("ci test: conditioning set larger than max_cond_size");

    ++counters_.requested_total;

    // The test is symmetric in (x, y); canonicalize the cache key.
    std::vector<int> key;
    key.reserve(z.size() + 2);
    key.push_back(std::min(x, y));
    key.push_back(std::max(x, y));
    for (VarId v : z) key.push_back(v);

    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    CiResult r = compute(std::min(x, y), std::max(x, y), z);
    ++counters_.computed_total;
    if (!z.empty()) ++counters_.computed_conditional;
    cache_.emplace(std::move(key), r);
    return r;
}

CiResult G2Engine::compute(VarId x, VarId y, const VarSet& z) {
    const Dataset& d = data_;
    const int cx = d.cardinality(x);
    const int cy = d.cardinality(y);

    std::int64_t strata = 1;
    for (VarId v : z) strata *= d.cardinality(v);

    // Joint counts laid out stratum-major: index = ((s * cx) + xv) * cy + yv.
    std::vector<std::int64_t> joint(static_cast<size_t>(strata) * cx * cy, 0);
    const auto& colx = d.column(x);
    const auto& coly = d.column(y);
    std::vector<const std::vector<int>*> colz;
    std::vector<std::int64_t> zstride(z.size());
    std::int64_t s = 1;
    for (size_t i = z.size(); i-- > 0;) {
        zstride[i] = s;
        s *= d.cardinality(z[i]);
    }
    for (VarId v : z) colz.push_back(&d.column(v));

    const std::int64_t rows = d.n_rows();
    for (std::int64_t r = 0; r < rows; ++r) {
        std::int64_t sidx = 0;
        for (size_t i = 0; i < colz.size(); ++i) sidx += zstride[i] * (*colz[i])[r];
        ++joint[(static_cast<size_t>(sidx) * cx + colx[r]) * cy + coly[r]];
    }

    double g2 = 0.0;
    std::vector<std::int64_t> rowm(cx), colm(cy);
    for (std::int64_t st = 0; st < strata; ++st) {
        const std::int64_t* cell = &joint[static_cast<size_t>(st) * cx * cy];
        std::int64_t total = 0;
        std::fill(rowm.begin(), rowm.end(), 0);
        std::fill(colm.begin(), colm.end(), 0);
        for (int i = 0; i < cx; ++i)
            for (int j = 0; j < cy; ++j) {
                rowm[i] += cell[i * cy + j];
                colm[j] += cell[i * cy + j];
                total += cell[i * cy + j];
            }
        if (total == 0) continue;  // empty stratum contributes nothing
        for (int i = 0; i < cx; ++i) {
            if (rowm[i] == 0) continue;
            for (int j = 0; j < cy; ++j) {
                const std::int64_t o = cell[i * cy + j];
                if (o == 0) continue;  // 0 * ln 0 = 0
                const double expected = static_cast<double>(rowm[i]) * colm[j] / total;
                g2 += 2.0 * o * std::log(o / expected);
            }
        }
    }
    if (g2 < 0.0) g2 = 0.0;  // guard against rounding on near-exact fits

    CiResult r;
    r.statistic = g2;
    r.dof = std::max<std::int64_t>(1, static_cast<std::int64_t>(cx - 1) * (cy - 1) * strata);
    r.p_value = chi_squared_upper_tail(g2, static_cast<double>(r.dof));
    r.reliable = rows >= cfg_.reliability_factor * static_cast<double>(r.dof);
    // Unreliable tests cannot establish dependence, so they default to
    // independent rather than inventing edges from sparse tables.
    r.independent = !r.reliable || r.p_value > cfg_.alpha;
    return r;
}

double G2Engine::association(VarId x, VarId y) {
    return test(x, y, {}).statistic;
}

CiResult DsepEngine::compute(VarId x, VarId y, const VarSet& z) {
    CiResult r;
    r.independent = d_separated(dag_, x, y, z);
    r.statistic = r.independent ? 0.0 : 1.0;
    r.p_value = r.independent ? 1.0 : 0.0;
    r.dof = 1;
    r.reliable = true;
    return r;
}

double DsepEngine::association(VarId x, VarId y) {
    return test(x, y, {}).independent ? 0.0 : 1.0;
}

namespace {

double entropy_bits(const std::vector<std::int64_t>& counts, std::int64_t total) {
    double h = 0.0;
    for (std::int64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

double symmetric_uncertainty(const Dataset& data, VarId x, VarId y) {
    if (x == y) throw UsageError("symmetric_uncertainty: x == y");
    ContingencyTable t = count(data, {x, y});
    const int cx = t.dims[0], cy = t.dims[1];
    const std::int64_t total = data.n_rows();

    std::vector<std::int64_t> mx(cx, 0), my(cy, 0);
    for (int i = 0; i < cx; ++i)
        for (int j = 0; j < cy; ++j) {
            mx[i] += t.counts[i * cy + j];
            my[j] += t.counts[i * cy + j];
        }
    const double hx = entropy_bits(mx, total);
    const double hy = entropy_bits(my, total);
    if (hx + hy == 0.0) return 0.0;

    double mi = 0.0;
    for (int i = 0; i < cx; ++i)
        for (int j = 0; j < cy; ++j) {
            const std::int64_t c = t.counts[i * cy + j];
            if (c == 0) continue;
            const double pxy = static_cast<double>(c) / total;
            const double px = static_cast<double>(mx[i]) / total;
            const double py = static_cast<double>(my[j]) / total;
            mi += pxy * std::log2(pxy / (px * py));
        }
    double su = 2.0 * mi / (hx + hy);
    if (su < 0.0) su = 0.0;
    if (su > 1.0) su = 1.0;
    return su;
}

CiResult g2_test(const Dataset& data, VarId x, VarId y, const VarSet& z, const TestConfig& cfg) {
    G2Engine engine(data, cfg);
    return engine.test(x, y, z);
}

}  // namespace partbn
