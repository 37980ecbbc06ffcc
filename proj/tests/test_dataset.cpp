#include <doctest.h>

#include <random>
#include <sstream>

#include "partbn/dataset.hpp"
#include "support/oracles.hpp"

using namespace partbn;

namespace {

Dataset from_csv(const std::string& text) {
    std::istringstream in(text);
    return load_csv(in);
}

}  // namespace

TEST_CASE("load_csv assigns codes in first-appearance order") {
    Dataset d = from_csv("A,B\nno,no\nyes,no\n");
    CHECK(d.n_vars() == 2);
    CHECK(d.n_rows() == 2);
    CHECK(d.cardinality(0) == 2);
    CHECK(d.cardinality(1) == 1);
    CHECK(d.column(0) == std::vector<int>{0, 1});
    CHECK(d.column(1) == std::vector<int>{0, 0});
}

TEST_CASE("load_csv single row") {
    Dataset d = from_csv("x,y,z\na,b,c\n");
    CHECK(d.n_rows() == 1);
    for (VarId v = 0; v < 3; ++v) CHECK(d.cardinality(v) == 1);
}

TEST_CASE("load_csv error paths") {
    std::string ragged = "A,B\n1,2\n1\n";
    CHECK_THROWS_WITH_AS(from_csv(ragged), doctest::Contains("row 3"), FormatError);
    CHECK_THROWS_AS(from_csv("A,A\n1,1\n"), FormatError);
    CHECK_THROWS_AS(from_csv("A,B\n"), FormatError);
    CHECK_THROWS_WITH_AS(from_csv("A,B\n1,\n"), doctest::Contains("missing value"), FormatError);
}

TEST_CASE("csv round-trips labels") {
    Dataset d = from_csv("A,B\nred,up\nblue,up\nred,down\n");
    std::ostringstream out;
    d.write_csv(out);
    Dataset d2 = from_csv(out.str());
    CHECK(d2.n_rows() == d.n_rows());
    for (VarId v = 0; v < d.n_vars(); ++v) {
        CHECK(d2.labels(v) == d.labels(v));
        CHECK(d2.column(v) == d.column(v));
    }
}

TEST_CASE("count tallies directly") {
    Dataset d = from_csv("X\n0\n0\n1\n");
    ContingencyTable t = count(d, {0});
    CHECK(t.dims == std::vector<int>{2});
    CHECK(t.counts == std::vector<std::int64_t>{2, 1});
    CHECK(t.total() == d.n_rows());
}

TEST_CASE("count over two uniform binary columns") {
    Dataset d = from_csv("X,Y\n0,0\n0,1\n1,0\n1,1\n");
    ContingencyTable t = count(d, {0, 1});
    for (auto c : t.counts) CHECK(c == 1);
}

TEST_CASE("count rejects duplicates and empties") {
    Dataset d = from_csv("X,Y\n0,0\n");
    CHECK_THROWS_AS(count(d, {0, 0}), UsageError);
    CHECK_THROWS_AS(count(d, {}), UsageError);
    CHECK_THROWS_AS(count(d, {7}), UsageError);
}

TEST_CASE("marginalizing a table matches direct counting") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int nv = 3 + static_cast<int>(rng() % 2);
        const int rows = 20 + static_cast<int>(rng() % 50);
        std::ostringstream csv;
        for (int v = 0; v < nv; ++v) csv << (v ? "," : "") << "c" << v;
        csv << '\n';
        std::vector<int> cards(nv);
        for (int v = 0; v < nv; ++v) cards[v] = 2 + static_cast<int>(rng() % 3);
        for (int r = 0; r < rows; ++r) {
            for (int v = 0; v < nv; ++v) csv << (v ? "," : "") << rng() % cards[v];
            csv << '\n';
        }
        Dataset d = from_csv(csv.str());

        ContingencyTable full = count(d, {0, 1, 2});
        // Sum the 3-way table over its last dimension and compare against a
        // brute-force recount of the pair.
        auto pair_counts = testsupport::recount_rows(d, {0, 1});
        std::vector<std::int64_t> marg(pair_counts.size(), 0);
        const int d2 = full.dims[2];
        for (size_t i = 0; i < full.counts.size(); ++i) marg[i / d2] += full.counts[i];
        CHECK(marg == pair_counts);
    }
}
