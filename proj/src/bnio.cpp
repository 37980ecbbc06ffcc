#include "partbn/bnio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace partbn {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

GroundTruthBn::GroundTruthBn(std::vector<CptVariable> variables) : vars_(std::move(variables)) {
    const int n = n_vars();
    dag_ = Pdag(n);
    for (VarId v = 0; v < n; ++v) {
        const CptVariable& cv = vars_[v];
        if (cv.states.empty()) throw FormatError("network: variable " + cv.name + " has no states");
        std::int64_t configs = 1;
        for (VarId p : cv.parents) {
            if (p < 0 || p >= n) throw FormatError("network: bad parent id for " + cv.name);
            configs *= static_cast<std::int64_t>(vars_[p].states.size());
            dag_.orient(p, v);
        }
        if (static_cast<std::int64_t>(cv.rows.size()) != configs)
            throw FormatError("network: " + cv.name + " has " + std::to_string(cv.rows.size()) +
                              " rows, expected " + std::to_string(configs));
        for (const auto& row : cv.rows) {
            if (row.size() != cv.states.size())
                throw FormatError("network: row arity mismatch in " + cv.name);
            double sum = 0;
            for (double p : row) sum += p;
            if (std::abs(sum - 1.0) > 1e-6)
                throw FormatError("network: row of " + cv.name + " sums to " + std::to_string(sum));
        }
    }
    if (!dag_.is_dag()) throw FormatError("network: structure is cyclic");

    // Kahn order for sampling.
    std::vector<int> indeg(n, 0);
    for (VarId v = 0; v < n; ++v) indeg[v] = static_cast<int>(vars_[v].parents.size());
    std::vector<VarId> ready;
    for (VarId v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        VarId v = ready.front();
        ready.erase(ready.begin());
        topo_.push_back(v);
        for (VarId c = 0; c < n; ++c)
            if (dag_.directed(v, c) && --indeg[c] == 0) ready.push_back(c);
    }
}

std::vector<std::string> GroundTruthBn::names() const {
    std::vector<std::string> out;
    out.reserve(vars_.size());
    for (const auto& v : vars_) out.push_back(v.name);
    return out;
}

std::optional<VarId> GroundTruthBn::find(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return static_cast<VarId>(i);
    return std::nullopt;
}

const std::vector<double>& GroundTruthBn::cpt_row(VarId v, const std::vector<int>& config) const {
    const CptVariable& cv = vars_.at(v);
    std::int64_t idx = 0;
    for (VarId p : cv.parents) idx = idx * static_cast<std::int64_t>(vars_[p].states.size()) + config[p];
    return cv.rows[idx];
}

namespace {

// Minimal tokenizer: identifiers/numbers and single punctuation characters,
// with // and # comments skipped. Tracks line numbers for diagnostics.
struct Lexer {
    explicit Lexer(std::istream& in) : in_(in) {}

    struct Token {
        std::string text;
        int line = 0;
        bool eof = false;
    };

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        int c = in_.peek();
        if (c == EOF) {
            t.eof = true;
            return t;
        }
        if (std::isalnum(c) || c == '_' || c == '-' || c == '+' || c == '.') {
            while (c != EOF && (std::isalnum(c) || c == '_' || c == '-' || c == '+' || c == '.')) {
                t.text.push_back(static_cast<char>(in_.get()));
                c = in_.peek();
            }
        } else if (c == '"') {
            in_.get();
            c = in_.get();
            while (c != EOF && c != '"') {
                t.text.push_back(static_cast<char>(c));
                c = in_.get();
            }
        } else {
            t.text.push_back(static_cast<char>(in_.get()));
        }
        return t;
    }

    Token expect(const std::string& what) {
        Token t = next();
        if (t.eof) throw FormatError("bif: unexpected end of file, expected " + what);
        return t;
    }

    void require(const std::string& lit) {
        Token t = expect("'" + lit + "'");
        if (t.text != lit)
            throw FormatError("bif line " + std::to_string(t.line) + ": expected '" + lit +
                              "', found '" + t.text + "'");
    }

private:
    void skip_space() {
        while (true) {
            int c = in_.peek();
            if (c == '\n') {
                ++line_;
                in_.get();
            } else if (std::isspace(c)) {
                in_.get();
            } else if (c == '/') {
                in_.get();
                if (in_.peek() == '/') {
                    skip_line();
                } else {
                    in_.unget();
                    return;
                }
            } else if (c == '#' || c == '%') {
                in_.get();
                skip_line();
            } else {
                return;
            }
        }
    }

    void skip_line() {
        int c = in_.get();
        while (c != EOF && c != '\n') c = in_.get();
        if (c == '\n') ++line_;
    }

    std::istream& in_;
    int line_ = 1;
};

double parse_prob(const Lexer::Token& t) {
    try {
        size_t used = 0;
        double v = std::stod(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument(t.text);
        return v;
    } catch (const std::exception&) {
        throw FormatError("bif line " + std::to_string(t.line) + ": expected a probability, found '" +
                          t.text + "'");
    }
}

void skip_block(Lexer& lex) {
    // Consume a balanced { ... } block (used for property decorations).
    lex.require("{");
    int depth = 1;
    while (depth > 0) {
        auto t = lex.expect("'}'");
        if (t.text == "{") ++depth;
        if (t.text == "}") --depth;
    }
}

}  // namespace

GroundTruthBn parse_bif(std::istream& in) {
    Lexer lex(in);
    std::vector<CptVariable> vars;
    std::map<std::string, VarId> index;
    std::map<std::string, std::map<std::string, int>> state_index;

    auto lookup = [&](const Lexer::Token& t) -> VarId {
        auto it = index.find(t.text);
        if (it == index.end())
            throw FormatError("bif line " + std::to_string(t.line) + ": unknown variable '" + t.text + "'");
        return it->second;
    };

    while (true) {
        Lexer::Token t = lex.next();
        if (t.eof) break;
        if (t.text == "network") {
            lex.expect("network name");
            skip_block(lex);
        } else if (t.text == "variable") {
            Lexer::Token name = lex.expect("variable name");
            if (index.count(name.text))
                throw FormatError("bif line " + std::to_string(name.line) + ": duplicate variable '" +
                                  name.text + "'");
            lex.require("{");
            CptVariable cv;
            cv.name = name.text;
            while (true) {
                Lexer::Token k = lex.expect("'}'");
                if (k.text == "}") break;
                if (k.text == "type") {
                    lex.require("discrete");
                    lex.require("[");
                    Lexer::Token card = lex.expect("cardinality");
                    lex.require("]");
                    lex.require("{");
                    while (true) {
                        Lexer::Token s = lex.expect("state name");
                        if (s.text == "}") break;
                        if (s.text == ",") continue;
                        state_index[cv.name][s.text] = static_cast<int>(cv.states.size());
                        cv.states.push_back(s.text);
                    }
                    lex.require(";");
                    int declared = 0;
                    try {
                        declared = std::stoi(card.text);
                    } catch (const std::exception&) {
                        throw FormatError("bif line " + std::to_string(card.line) +
                                          ": bad cardinality '" + card.text + "'");
                    }
                    if (cv.states.size() != static_cast<size_t>(declared))
                        throw FormatError("bif line " + std::to_string(card.line) + ": variable '" +
                                          cv.name + "' declares " + card.text + " states but lists " +
                                          std::to_string(cv.states.size()));
                } else if (k.text == "property") {
                    while (lex.expect("';'").text != ";") {
                    }
                } else {
                    throw FormatError("bif line " + std::to_string(k.line) + ": unexpected '" + k.text +
                                      "' in variable block");
                }
            }
            index[cv.name] = static_cast<VarId>(vars.size());
            vars.push_back(std::move(cv));
        } else if (t.text == "probability") {
            lex.require("(");
            Lexer::Token child_tok = lex.expect("variable name");
            VarId child = lookup(child_tok);
            CptVariable& cv = vars[child];
            if (!cv.rows.empty())
                throw FormatError("bif line " + std::to_string(child_tok.line) +
                                  ": duplicate probability block for '" + cv.name + "'");
            Lexer::Token sep = lex.expect("')' or '|'");
            if (sep.text == "|") {
                while (true) {
                    Lexer::Token p = lex.expect("parent name");
                    if (p.text == ",") continue;
                    if (p.text == ")") break;
                    cv.parents.push_back(lookup(p));
                }
            } else if (sep.text != ")") {
                throw FormatError("bif line " + std::to_string(sep.line) + ": expected '|' or ')'");
            }

            std::int64_t configs = 1;
            std::vector<std::int64_t> stride(cv.parents.size());
            for (size_t i = cv.parents.size(); i-- > 0;) {
                stride[i] = configs;
                configs *= static_cast<std::int64_t>(vars[cv.parents[i]].states.size());
            }
            cv.rows.assign(configs, {});

            lex.require("{");
            while (true) {
                Lexer::Token k = lex.expect("'}'");
                if (k.text == "}") break;
                if (k.text == "table") {
                    // Flat list: parent configurations in row-major declared
                    // order, each followed by the child's distribution.
                    std::vector<double> flat;
                    while (true) {
                        Lexer::Token v = lex.expect("probability or ';'");
                        if (v.text == ";") break;
                        if (v.text == ",") continue;
                        flat.push_back(parse_prob(v));
                    }
                    if (flat.size() != static_cast<size_t>(configs) * cv.states.size())
                        throw FormatError("bif line " + std::to_string(k.line) + ": table for '" +
                                          cv.name + "' has " + std::to_string(flat.size()) +
                                          " entries, expected " +
                                          std::to_string(configs * static_cast<std::int64_t>(cv.states.size())));
                    for (std::int64_t r = 0; r < configs; ++r)
                        cv.rows[r].assign(flat.begin() + r * cv.states.size(),
                                          flat.begin() + (r + 1) * cv.states.size());
                } else if (k.text == "(") {
                    std::int64_t row = 0;
                    size_t pi = 0;
                    while (true) {
                        Lexer::Token s = lex.expect("parent state");
                        if (s.text == ")") break;
                        if (s.text == ",") continue;
                        if (pi >= cv.parents.size())
                            throw FormatError("bif line " + std::to_string(s.line) +
                                              ": too many parent states for '" + cv.name + "'");
                        const CptVariable& pv = vars[cv.parents[pi]];
                        auto& smap = state_index[pv.name];
                        auto sit = smap.find(s.text);
                        if (sit == smap.end())
                            throw FormatError("bif line " + std::to_string(s.line) + ": '" + s.text +
                                              "' is not a state of '" + pv.name + "'");
                        row += stride[pi] * sit->second;
                        ++pi;
                    }
                    if (pi != cv.parents.size())
                        throw FormatError("bif line " + std::to_string(k.line) +
                                          ": wrong number of parent states for '" + cv.name + "'");
                    std::vector<double> row_vals;
                    while (true) {
                        Lexer::Token v = lex.expect("probability or ';'");
                        if (v.text == ";") break;
                        if (v.text == ",") continue;
                        row_vals.push_back(parse_prob(v));
                    }
                    if (row_vals.size() != cv.states.size())
                        throw FormatError("bif line " + std::to_string(k.line) + ": row of '" + cv.name +
                                          "' has " + std::to_string(row_vals.size()) +
                                          " entries, expected " + std::to_string(cv.states.size()));
                    cv.rows[row] = std::move(row_vals);
                } else {
                    throw FormatError("bif line " + std::to_string(k.line) + ": unexpected '" + k.text +
                                      "' in probability block");
                }
            }
            for (std::int64_t r = 0; r < configs; ++r)
                if (cv.rows[r].empty())
                    throw FormatError("bif: probability block for '" + cv.name +
                                      "' is missing a parent configuration row");
        } else {
            throw FormatError("bif line " + std::to_string(t.line) + ": unexpected '" + t.text + "'");
        }
    }
    if (vars.empty()) throw FormatError("bif: no variables");
    for (const auto& v : vars)
        if (v.rows.empty()) throw FormatError("bif: variable '" + v.name + "' has no probability block");
    return GroundTruthBn(std::move(vars));
}

GroundTruthBn parse_bif_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open network file: " + path);
    return parse_bif(f);
}

void serialize_bif(std::ostream& os, const GroundTruthBn& bn) {
    os << "network unnamed {\n}\n";
    char buf[64];
    for (const auto& v : bn.variables()) {
        os << "variable " << v.name << " {\n  type discrete [ " << v.states.size() << " ] { ";
        for (size_t i = 0; i < v.states.size(); ++i) {
            if (i) os << ", ";
            os << v.states[i];
        }
        os << " };\n}\n";
    }
    for (const auto& v : bn.variables()) {
        os << "probability ( " << v.name;
        if (!v.parents.empty()) {
            os << " | ";
            for (size_t i = 0; i < v.parents.size(); ++i) {
                if (i) os << ", ";
                os << bn.var(v.parents[i]).name;
            }
        }
        os << " ) {\n";
        if (v.parents.empty()) {
            os << "  table ";
            for (size_t i = 0; i < v.rows[0].size(); ++i) {
                if (i) os << ", ";
                std::snprintf(buf, sizeof buf, "%.17g", v.rows[0][i]);
                os << buf;
            }
            os << ";\n";
        } else {
            // Enumerate parent configurations in row-major declared order.
            std::vector<int> cards;
            for (VarId p : v.parents) cards.push_back(static_cast<int>(bn.var(p).states.size()));
            std::vector<int> cfg(v.parents.size(), 0);
            for (const auto& row : v.rows) {
                os << "  (";
                for (size_t i = 0; i < cfg.size(); ++i) {
                    if (i) os << ", ";
                    os << bn.var(v.parents[i]).states[cfg[i]];
                }
                os << ") ";
                for (size_t i = 0; i < row.size(); ++i) {
                    if (i) os << ", ";
                    std::snprintf(buf, sizeof buf, "%.17g", row[i]);
                    os << buf;
                }
                os << ";\n";
                for (size_t i = cfg.size(); i-- > 0;) {
                    if (++cfg[i] < cards[i]) break;
                    cfg[i] = 0;
                }
            }
        }
        os << "}\n";
    }
}

Dataset forward_sample(const GroundTruthBn& bn, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw UsageError("forward_sample: n must be >= 1");
    const int nv = bn.n_vars();
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        // 53-bit mantissa draw; identical across platforms.
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    std::vector<std::vector<int>> columns(nv, std::vector<int>(n));
    std::vector<int> config(nv, 0);
    for (std::int64_t r = 0; r < n; ++r) {
        for (VarId v : bn.topological_order()) {
            const std::vector<double>& row = bn.cpt_row(v, config);
            const double u = uniform();
            double cum = 0.0;
            int code = static_cast<int>(row.size()) - 1;
            for (size_t s = 0; s < row.size(); ++s) {
                cum += row[s];
                if (u < cum) {
                    code = static_cast<int>(s);
                    break;
                }
            }
            config[v] = code;
            columns[v][r] = code;
        }
    }

    std::vector<std::string> names = bn.names();
    std::vector<int> cards(nv);
    std::vector<std::vector<std::string>> labels(nv);
    for (VarId v = 0; v < nv; ++v) {
        cards[v] = static_cast<int>(bn.var(v).states.size());
        labels[v] = bn.var(v).states;
    }
    return Dataset(std::move(names), std::move(cards), std::move(columns), std::move(labels));
}

std::vector<std::pair<VarId, VarId>> true_neighborhood(const GroundTruthBn& bn,
                                                       const NeighborhoodSpec& spec) {
    if (spec.target < 0 || spec.target >= bn.n_vars()) throw UsageError("true_neighborhood: bad target");
    if (!spec.depth_max && spec.depth < 1) throw UsageError("true_neighborhood: depth must be >= 1");
    std::vector<std::pair<VarId, VarId>> out;
    const Pdag& dag = bn.dag();
    std::vector<int> dist = skeleton_distances(dag, spec.target);
    for (VarId a = 0; a < dag.n(); ++a)
        for (VarId b = 0; b < dag.n(); ++b) {
            if (a == b || !dag.directed(a, b)) continue;
            if (spec.depth_max) {
                out.emplace_back(a, b);
                continue;
            }
            const int da = dist[a] < 0 ? dag.n() : dist[a];
            const int db = dist[b] < 0 ? dag.n() : dist[b];
            if (std::min(da, db) <= spec.depth - 1) out.emplace_back(a, b);
        }
    return out;
}

}  // namespace partbn
