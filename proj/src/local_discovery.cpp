#include "partbn/local_discovery.hpp"

#include <algorithm>

namespace partbn {

const PcResult* PcCache::find_pc(VarId t) const {
    auto it = hiton_.find(t);
    return it == hiton_.end() ? nullptr : &it->second;
}

void PcCache::store_pc(VarId t, PcResult r) { hiton_.emplace(t, std::move(r)); }

const VarSet* PcCache::find_fcbf(VarId t) const {
    auto it = fcbf_.find(t);
    return it == fcbf_.end() ? nullptr : &it->second;
}

void PcCache::store_fcbf(VarId t, VarSet pc) { fcbf_.emplace(t, std::move(pc)); }

std::optional<double> PcCache::find_su(VarId a, VarId b) const {
    auto it = su_.find({std::min(a, b), std::max(a, b)});
    if (it == su_.end()) return std::nullopt;
    return it->second;
}

void PcCache::store_su(VarId a, VarId b, double su) {
    su_.emplace(std::make_pair(std::min(a, b), std::max(a, b)), su);
}

std::optional<VarSet> find_separator(CiEngine& engine, VarId x, VarId y, const VarSet& pool,
                                     size_t min_size) {
    VarSet cand;
    cand.reserve(pool.size());
    for (VarId v : pool)
        if (v != x && v != y) cand.push_back(v);

    size_t max_size = cand.size();
    if (engine.config().max_cond_size)
        max_size = std::min<size_t>(max_size, *engine.config().max_cond_size);

    for (size_t k = min_size; k <= max_size; ++k) {
        // k-combinations of cand in lexicographic index order.
        std::vector<size_t> idx(k);
        for (size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            VarSet z;
            z.reserve(k);
            for (size_t i : idx) z.push_back(cand[i]);
            if (engine.test(x, y, z).independent) return z;
            // advance combination
            size_t i = k;
            while (i-- > 0) {
                if (idx[i] != i + cand.size() - k) {
                    ++idx[i];
                    for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) goto next_size;
            }
            if (k == 0) break;  // single empty subset
        }
    next_size:;
    }
    return std::nullopt;
}

const PcResult& hiton_pc(CiEngine& engine, VarId t, PcCache& cache) {
    if (const PcResult* hit = cache.find_pc(t)) return *hit;

    const std::int64_t cond_before = engine.counters().computed_conditional;
    PcResult res;

    // Screen: variables independent of t given nothing are never admitted.
    struct Ranked {
        double assoc;
        VarId id;
    };
    std::vector<Ranked> open;
    for (VarId x = 0; x < engine.n_vars(); ++x) {
        if (x == t) continue;
        if (engine.test(t, x, {}).independent) {
            res.sepsets[x] = {};
        } else {
            open.push_back({engine.association(t, x), x});
        }
    }
    std::sort(open.begin(), open.end(), [](const Ranked& a, const Ranked& b) {
        if (a.assoc != b.assoc) return a.assoc > b.assoc;
        return a.id < b.id;
    });

    std::vector<VarId> tpc;  // admission order
    for (const Ranked& cand : open) {
        tpc.push_back(cand.id);
        size_t i = 0;
        while (i < tpc.size()) {
            VarId w = tpc[i];
            VarSet pool(tpc.begin(), tpc.end());
            std::sort(pool.begin(), pool.end());
            // w is already known dependent given the empty set, start at 1.
            if (auto z = find_separator(engine, t, w, pool, 1)) {
                res.sepsets[w] = std::move(*z);
                tpc.erase(tpc.begin() + i);
            } else {
                ++i;
            }
        }
    }

    res.pc.assign(tpc.begin(), tpc.end());
    std::sort(res.pc.begin(), res.pc.end());
    cache.pc_conditional_tests += engine.counters().computed_conditional - cond_before;
    cache.store_pc(t, std::move(res));
    return *cache.find_pc(t);
}

namespace {

void scan_spouses(CiEngine& engine, VarId t, const VarSet& pc,
                  const std::map<VarId, VarSet>& seps, PcCache& cache,
                  std::map<VarId, VarSet>& spouses) {
    spouses.clear();
    for (VarId x : pc) {
        const PcResult& px = hiton_pc(engine, x, cache);
        for (VarId y : px.pc) {
            if (y == t || contains(pc, y)) continue;
            auto it = seps.find(y);
            if (it == seps.end()) continue;
            VarSet cond = it->second;
            set_insert(cond, x);
            if (!engine.test(t, y, cond).independent) set_insert(spouses[x], y);
        }
    }
}

}  // namespace

MbResult get_mb(CiEngine& engine, VarId t, PcCache& cache) {
    const PcResult& base = hiton_pc(engine, t, cache);
    MbResult mb;
    mb.pc = base.pc;
    mb.sepsets = base.sepsets;

    scan_spouses(engine, t, mb.pc, mb.sepsets, cache, mb.spouses);

    // Demote PC candidates separable within the candidate blanket. The
    // one-sided admission above keeps descendants whose separator needs a
    // spouse of t; the blanket has those spouses, so retry with them.
    while (true) {
        const std::int64_t cond_before = engine.counters().computed_conditional;
        bool removed = false;
        size_t i = 0;
        while (i < mb.pc.size()) {
            VarId x = mb.pc[i];
            VarSet pool = mb.pc;
            for (const auto& [child, sps] : mb.spouses)
                for (VarId s : sps) set_insert(pool, s);
            set_erase(pool, x);
            if (auto z = find_separator(engine, t, x, pool, 1)) {
                mb.sepsets[x] = std::move(*z);
                mb.pc.erase(mb.pc.begin() + i);
                removed = true;
            } else {
                ++i;
            }
        }
        cache.pc_conditional_tests += engine.counters().computed_conditional - cond_before;
        if (!removed) break;
        scan_spouses(engine, t, mb.pc, mb.sepsets, cache, mb.spouses);
    }
    return mb;
}

namespace {

double su_cached(const Dataset& data, VarId a, VarId b, PcCache& cache) {
    if (auto hit = cache.find_su(a, b)) return *hit;
    double su = symmetric_uncertainty(data, a, b);
    cache.store_su(a, b, su);
    return su;
}

}  // namespace

VarSet fcbf(const Dataset& data, VarId t, double delta, PcCache& cache) {
    if (delta < 0) throw UsageError("fcbf: delta must be >= 0");
    if (const VarSet* hit = cache.find_fcbf(t)) return *hit;

    struct Ranked {
        double su;
        VarId id;
    };
    std::vector<Ranked> s;
    for (VarId x = 0; x < data.n_vars(); ++x) {
        if (x == t) continue;
        double su = su_cached(data, x, t, cache);
        if (su > delta) s.push_back({su, x});
    }
    std::sort(s.begin(), s.end(), [](const Ranked& a, const Ranked& b) {
        if (a.su != b.su) return a.su > b.su;
        return a.id < b.id;
    });

    std::vector<bool> dropped(s.size(), false);
    for (size_t i = 0; i < s.size(); ++i) {
        if (dropped[i]) continue;
        for (size_t j = i + 1; j < s.size(); ++j) {
            if (dropped[j]) continue;
            if (su_cached(data, s[i].id, s[j].id, cache) > s[j].su) dropped[j] = true;
        }
    }

    VarSet out;
    for (size_t i = 0; i < s.size(); ++i)
        if (!dropped[i]) out.push_back(s[i].id);
    std::sort(out.begin(), out.end());
    cache.store_fcbf(t, out);
    return out;
}

MbResult mb_fs(const Dataset& data, CiEngine& engine, VarId t, double delta, PcCache& cache) {
    MbResult mb;
    mb.pc = fcbf(data, t, delta, cache);

    for (VarId x : mb.pc) {
        for (VarId y : fcbf(data, x, delta, cache)) {
            if (y == t || contains(mb.pc, y)) continue;
            auto it = mb.sepsets.find(y);
            if (it == mb.sepsets.end()) {
                // Candidate spouses may be unconditionally independent of
                // the target, so the empty set is a legal separator here.
                if (auto z = find_separator(engine, t, y, mb.pc, 0))
                    it = mb.sepsets.emplace(y, std::move(*z)).first;
                else
                    continue;
            }
            VarSet cond = it->second;
            set_insert(cond, x);
            if (!engine.test(t, y, cond).independent) set_insert(mb.spouses[x], y);
        }
    }
    return mb;
}

}  // namespace partbn
