#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qident/errors.hpp"
#include "qident/partition.hpp"

#include <algorithm>
#include <set>

using namespace qident;

namespace {

// Every partition with at most `len` parts, each at most `top`.
std::vector<Partition> box(long len, long top)
{
    std::vector<Partition> out;
    std::vector<long> v(static_cast<std::size_t>(len), 0);
    for (;;) {
        if (std::is_sorted(v.rbegin(), v.rend())) out.emplace_back(v);
        std::size_t i = 0;
        while (i < v.size() && ++v[i] > top) v[i++] = 0;
        if (i == v.size()) break;
    }
    return out;
}

} // namespace

TEST_CASE("construction and text format")
{
    CHECK(Partition{2, 1} == Partition{2, 1, 0});
    CHECK(Partition{2, 1}.length() == 2);
    CHECK(Partition{2, 1}[5] == 0);
    CHECK_THROWS_AS(Partition({1, 2}), NotAPartition);
    CHECK_THROWS_AS(Partition({1, -1}), NotAPartition);
    CHECK(Partition{3, 1}.str() == "[3,1]");
    CHECK(Partition{}.str() == "[]");
    CHECK(Partition::parse("[3,1]") == Partition{3, 1});
    CHECK(Partition::parse(" [ 2 , 2 ,0] ") == Partition{2, 2});
    CHECK(Partition::parse("[]").empty());
    CHECK_THROWS_AS(Partition::parse("[1,2]"), NotAPartition);
    CHECK_THROWS(Partition::parse("3,1"));
    CHECK(Partition{3, 1}.padded(4) == std::vector<long>{3, 1, 0, 0});
}

TEST_CASE("statistics")
{
    CHECK(weight(Partition{}) == 0);
    CHECK(weight(Partition{2, 1}) == 3);
    CHECK(weight(Partition{5, 5, 5}) == 15);
    CHECK(nstat(Partition{}) == 0);
    CHECK(nstat(Partition{2, 1}) == 1);
    CHECK(nstat(Partition{3, 3, 3}) == 9);
    for (const Partition& l : box(3, 4)) {
        auto v = l.padded(5);
        CHECK(weight(Partition(v)) == weight(l));
        CHECK(nstat(Partition(v)) == nstat(l));
        CHECK(weight(IntVector(v)) == weight(l));
        CHECK(nstat(IntVector(v)) == nstat(l));
    }
}

TEST_CASE("containment and horizontal strips")
{
    CHECK(contains(Partition{3, 1}, Partition{2, 1}));
    CHECK_FALSE(contains(Partition{2, 2}, Partition{3}));
    CHECK(is_horizontal_strip(Partition{3, 1}, Partition{2, 1}));
    CHECK_FALSE(is_horizontal_strip(Partition{3, 2}, Partition{1, 1}));
    CHECK(is_horizontal_strip(Partition{}, Partition{}));
}

TEST_CASE("enumeration examples")
{
    using V = std::vector<Partition>;
    CHECK(horizontal_strip_predecessors(Partition{1}) == V{{}, {1}});
    CHECK(horizontal_strip_predecessors(Partition{2, 1}) == V{{1}, {2}, {1, 1}, {2, 1}});
    CHECK(horizontal_strip_predecessors(Partition{}) == V{{}});
    CHECK(subpartitions(Partition{1}) == V{{}, {1}});
    CHECK(subpartitions(Partition{2, 1}) == V{{}, {1}, {2}, {1, 1}, {2, 1}});
    for (long N = 0; N <= 6; ++N) CHECK(subpartitions(Partition{N}).size() == static_cast<std::size_t>(N + 1));
}

TEST_CASE("enumeration agrees with brute force")
{
    const auto all = box(3, 4);
    for (const Partition& l : all) {
        const auto subs = subpartitions(l);
        const auto strips = horizontal_strip_predecessors(l);
        const std::set<Partition> sub_set(subs.begin(), subs.end());
        CHECK(sub_set.size() == subs.size()); // each once

        std::vector<Partition> brute_sub, brute_strip;
        for (const Partition& m : all) {
            if (contains(l, m)) brute_sub.push_back(m);
            if (is_horizontal_strip(l, m)) {
                brute_strip.push_back(m);
                CHECK(contains(l, m));
            }
        }
        CHECK(subs.size() == brute_sub.size());
        CHECK(std::set<Partition>(brute_sub.begin(), brute_sub.end()) == sub_set);
        CHECK(std::set<Partition>(brute_strip.begin(), brute_strip.end())
              == std::set<Partition>(strips.begin(), strips.end()));
        for (const Partition& m : strips) CHECK(sub_set.count(m) == 1);
    }
}

TEST_CASE("staircase and lattice windows")
{
    CHECK(staircase(1) == IntVector{0});
    CHECK(staircase(2) == IntVector{1, 0});
    CHECK(staircase(3) == IntVector{2, 1, 0});
    CHECK(lattice_window({0}, {0}) == std::vector<IntVector>{{0}});
    CHECK(lattice_window({1, 0}, {0, 0}) == std::vector<IntVector>{{0, 0}, {1, 0}});
    const auto w = lattice_window({1, 1}, {-1, -1});
    REQUIRE(w.size() == 9);
    CHECK(w[0] == IntVector{-1, -1});
    CHECK(w[1] == IntVector{-1, 0}); // last coordinate fastest
    CHECK(w[8] == IntVector{1, 1});
    CHECK_THROWS_AS(lattice_window({0, 1}, {1, 0}), EmptyWindow);
    CHECK(to_string(IntVector{-1, 2}) == "(-1,2)");
}
