#include <doctest.h>

#include <chrono>
#include <set>

#include <umbral/errors.hpp>
#include <umbral/multiindex.hpp>

#include "oracles.hpp"

using namespace umbral;

TEST_CASE("multi-index basics")
{
    const MultiIndex v{2, 1};
    CHECK(v.total() == 3);
    CHECK(v.factorial() == 2);
    CHECK(v.to_string() == "(2,1)");
    CHECK(MultiIndex::parse("(2,1)") == v);
    CHECK(MultiIndex::parse(" ( 0 , 3 ) ") == MultiIndex{0, 3});
    CHECK_THROWS_AS(MultiIndex::parse("(1,-2)"), parse_error);
    CHECK_THROWS_AS(MultiIndex::parse("1,2"), parse_error);
    CHECK(multi_binomial(MultiIndex{3, 2}, MultiIndex{1, 1}) == 6);
    CHECK(multi_binomial(MultiIndex{3, 2}, MultiIndex{0, 3}) == 0);
    CHECK(lower_set(MultiIndex{1, 1}).size() == 4);
    CHECK_THROWS_AS(MultiIndex({1, 0}) - MultiIndex({0, 1}), domain_error);
}

TEST_CASE("graded indices are graded")
{
    const auto idx = graded_indices(3, 4);
    CHECK(idx.size() == 35);
    for (std::size_t i = 1; i < idx.size(); ++i) {
        CHECK(idx[i - 1].total() <= idx[i].total());
    }
}

TEST_CASE("partition examples")
{
    const auto count = [](const MultiIndex &v) {
        std::vector<MultiIndexPartition> out;
        for (const auto &p : partitions(v)) {
            out.push_back(p);
        }
        return out;
    };
    const auto p11 = count(MultiIndex{1, 1});
    REQUIRE(p11.size() == 2);
    CHECK(p11[0].to_string() == "{(1,1)}");
    CHECK(p11[1].length() == 2);
    CHECK(count(MultiIndex{2}).size() == 2);
    CHECK(count(MultiIndex{0, 0}).size() == 1);
    CHECK(count(MultiIndex{0, 0})[0].empty());
}

TEST_CASE("partition weights sum to the set-partition count")
{
    // Sum of weights over lambda |- v counts set partitions of a multiset-labelled set:
    // for v = (1,...,1) this is the Bell number, and for v = (n) it is also Bell(n).
    for (int n = 1; n <= 7; ++n) {
        Rational total(0);
        for (const auto &p : partitions(MultiIndex{n})) {
            total = total + partition_weight(p, MultiIndex{n});
        }
        CHECK(total == Rational(static_cast<long>(oracle::set_partitions(n).size())));
    }
}

TEST_CASE("partition counts match vector coin change")
{
    for (const auto &v : {MultiIndex{5}, MultiIndex{2, 2}, MultiIndex{3, 1}, MultiIndex{1, 2, 1}, MultiIndex{2, 0, 3},
                          MultiIndex{4, 3}, MultiIndex{2, 2, 2}}) {
        CAPTURE(v.to_string());
        CHECK(count_partitions(v) == oracle::vector_partition_count(v));
    }
}

TEST_CASE("partitions are distinct, valid and sum to v")
{
    const MultiIndex v{2, 1, 2};
    std::set<std::string> seen;
    for (const auto &p : partitions(v)) {
        CHECK(p.sum(3) == v);
        CHECK(seen.insert(p.to_string()).second);
        for (std::size_t j = 1; j < p.blocks().size(); ++j) {
            CHECK(p.blocks()[j - 1].column < p.blocks()[j].column);
        }
        CHECK(partition_weight(p, v).is_integer());
    }
}

TEST_CASE("Bell numbers from (1,...,1) with timing")
{
    const std::vector<std::size_t> bell{2, 5, 15, 52};
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t d = 2; d <= 5; ++d) {
        const MultiIndex ones(std::vector<int>(d, 1));
        CHECK(count_partitions(ones) == bell[d - 2]);
        CHECK(count_partitions(ones) == oracle::set_partitions(static_cast<int>(d)).size());
    }
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
}

TEST_CASE("enumeration limits")
{
    CHECK_THROWS_AS(partitions(MultiIndex{21}), order_error);
    CHECK_THROWS_AS(partitions(MultiIndex(std::vector<int>(9, 1))), dimension_error);
    CHECK_THROWS_AS(MultiIndexPartition({{MultiIndex{1}, 1}, {MultiIndex{1}, 1}}), domain_error);
    CHECK_THROWS_AS(partition_weight(MultiIndexPartition({{MultiIndex{1}, 1}}), MultiIndex{2}), domain_error);
}
