#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "partbn/types.hpp"

namespace partbn {

// Dense joint counts over an ordered list of variables. dims follows the
// query order; counts is row-major with the FIRST queried variable as the
// most significant digit.
struct ContingencyTable {
    std::vector<int> dims;
    std::vector<std::int64_t> counts;

    std::int64_t total() const;
};

// Immutable categorical sample matrix, column-major. Category codes are
// assigned per column in first-appearance order; the original labels are
// retained so files can be round-tripped.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<std::string> names,
            std::vector<int> cardinalities,
            std::vector<std::vector<int>> columns,
            std::vector<std::vector<std::string>> labels);

    int n_vars() const { return static_cast<int>(names_.size()); }
    std::int64_t n_rows() const { return n_rows_; }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(VarId v) const { return names_.at(v); }
    int cardinality(VarId v) const { return cardinalities_.at(v); }
    const std::vector<int>& cardinalities() const { return cardinalities_; }
    const std::vector<int>& column(VarId v) const { return columns_.at(v); }
    const std::vector<std::string>& labels(VarId v) const { return labels_.at(v); }

    // Returns the index of `name`, or nullopt. Lookup is linear; schemas
    // here have at most a few hundred variables.
    std::optional<VarId> find(const std::string& name) const;

    void write_csv(std::ostream& os) const;

private:
    std::vector<std::string> names_;
    std::vector<int> cardinalities_;
    std::vector<std::vector<int>> columns_;
    std::vector<std::vector<std::string>> labels_;
    std::int64_t n_rows_ = 0;
};

// Parses a header + label rows into coded columns. Empty fields are
// rejected: the supported corpora are complete-data only.
Dataset load_csv(std::istream& in);
Dataset load_csv_file(const std::string& path);

// Joint counts over `vars` (non-empty, distinct, valid ids).
ContingencyTable count(const Dataset& data, const std::vector<VarId>& vars);

}  // namespace partbn
