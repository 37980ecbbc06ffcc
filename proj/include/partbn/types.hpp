#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace partbn {

// Index of a variable in the owning dataset/network schema.
using VarId = int;

// Sorted, duplicate-free set of variable ids. Kept as a flat vector:
// conditioning sets are tiny and are hashed/compared constantly.
using VarSet = std::vector<VarId>;

inline bool contains(const VarSet& s, VarId v) {
    for (VarId x : s) {
        if (x == v) return true;
        if (x > v) return false;
    }
    return false;
}

// Insert keeping sort order; no-op if already present.
inline void set_insert(VarSet& s, VarId v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
}

inline void set_erase(VarSet& s, VarId v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it != s.end() && *it == v) s.erase(it);
}

inline VarSet set_union(const VarSet& a, const VarSet& b) {
    VarSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Error taxonomy: usage errors are caller bugs or bad user input (CLI exit 2),
// everything else is an internal failure (CLI exit 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FormatError : public UsageError {
public:
    using UsageError::UsageError;
};

// Raised when a CI test is asked for a conditioning set larger than the
// configured cap, so search loops can prune instead of crashing.
class ConditionTooLarge : public UsageError {
public:
    using UsageError::UsageError;
};

}  // namespace partbn
