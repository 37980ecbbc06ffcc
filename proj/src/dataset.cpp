#include "partbn/dataset.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace partbn {

std::int64_t ContingencyTable::total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

Dataset::Dataset(std::vector<std::string> names,
                 std::vector<int> cardinalities,
                 std::vector<std::vector<int>> columns,
                 std::vector<std::vector<std::string>> labels)
    : names_(std::move(names)),
      cardinalities_(std::move(cardinalities)),
      columns_(std::move(columns)),
      labels_(std::move(labels)) {
    if (names_.size() != cardinalities_.size() || names_.size() != columns_.size())
        throw UsageError("dataset: schema size mismatch");
    n_rows_ = columns_.empty() ? 0 : static_cast<std::int64_t>(columns_[0].size());
    for (size_t i = 0; i < columns_.size(); ++i) {
        if (static_cast<std::int64_t>(columns_[i].size()) != n_rows_)
            throw UsageError("dataset: column length mismatch for " + names_[i]);
        if (cardinalities_[i] < 1)
            throw UsageError("dataset: cardinality must be >= 1 for " + names_[i]);
        for (int code : columns_[i])
            if (code < 0 || code >= cardinalities_[i])
                throw UsageError("dataset: code out of range in column " + names_[i]);
    }
}

std::optional<VarId> Dataset::find(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<VarId>(i);
    return std::nullopt;
}

void Dataset::write_csv(std::ostream& os) const {
    for (size_t i = 0; i < names_.size(); ++i) {
        if (i) os << ',';
        os << names_[i];
    }
    os << '\n';
    for (std::int64_t r = 0; r < n_rows_; ++r) {
        for (size_t i = 0; i < columns_.size(); ++i) {
            if (i) os << ',';
            os << labels_[i][columns_[i][r]];
        }
        os << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

Dataset load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("csv: empty input");
    std::vector<std::string> names = split_csv_line(line);
    const size_t n = names.size();
    for (size_t i = 0; i < n; ++i) {
        if (names[i].empty()) throw FormatError("csv: empty header name in column " + std::to_string(i + 1));
        for (size_t j = i + 1; j < n; ++j)
            if (names[i] == names[j])
                throw FormatError("csv: duplicate header name '" + names[i] + "'");
    }

    std::vector<std::vector<int>> columns(n);
    std::vector<std::vector<std::string>> labels(n);
    std::vector<std::unordered_map<std::string, int>> codebook(n);

    std::int64_t row_no = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty() && in.eof()) break;  // trailing newline
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != n)
            throw FormatError("csv: row " + std::to_string(row_no) + " has " +
                              std::to_string(fields.size()) + " fields, expected " + std::to_string(n));
        for (size_t i = 0; i < n; ++i) {
            const std::string& label = fields[i];
            if (label.empty())
                throw FormatError("csv: missing value at row " + std::to_string(row_no) +
                                  ", column '" + names[i] + "'");
            auto [it, inserted] = codebook[i].try_emplace(label, static_cast<int>(labels[i].size()));
            if (inserted) labels[i].push_back(label);
            columns[i].push_back(it->second);
        }
    }
    if (columns.empty() || columns[0].empty()) throw FormatError("csv: no data rows");

    std::vector<int> cards(n);
    for (size_t i = 0; i < n; ++i) cards[i] = static_cast<int>(labels[i].size());
    return Dataset(std::move(names), std::move(cards), std::move(columns), std::move(labels));
}

Dataset load_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open dataset file: " + path);
    return load_csv(f);
}

ContingencyTable count(const Dataset& data, const std::vector<VarId>& vars) {
    if (vars.empty()) throw UsageError("count: empty variable list");
    for (size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] < 0 || vars[i] >= data.n_vars()) throw UsageError("count: invalid variable id");
        for (size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw UsageError("count: duplicate variable id");
    }

    ContingencyTable t;
    t.dims.reserve(vars.size());
    std::int64_t size = 1;
    for (VarId v : vars) {
        t.dims.push_back(data.cardinality(v));
        size *= data.cardinality(v);
    }
    t.counts.assign(size, 0);

    // Row-major strides, first variable most significant.
    std::vector<std::int64_t> strides(vars.size());
    std::int64_t s = 1;
    for (size_t i = vars.size(); i-- > 0;) {
        strides[i] = s;
        s *= t.dims[i];
    }

    const std::int64_t rows = data.n_rows();
    std::vector<const std::vector<int>*> cols;
    cols.reserve(vars.size());
    for (VarId v : vars) cols.push_back(&data.column(v));

    for (std::int64_t r = 0; r < rows; ++r) {
        std::int64_t idx = 0;
        for (size_t i = 0; i < cols.size(); ++i) idx += strides[i] * (*cols[i])[r];
        ++t.counts[idx];
    }
    return t;
}

}  // namespace partbn
