#include "twb/combinatorics.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

using namespace twb;

namespace {

long long pascal(int n, int k)
{
    std::vector<std::vector<long long>> t(size_t(n) + 1);
    for (int i = 0; i <= n; ++i) {
        t[size_t(i)].assign(size_t(i) + 1, 1);
        for (int j = 1; j < i; ++j)
            t[size_t(i)][size_t(j)] = t[size_t(i - 1)][size_t(j - 1)] + t[size_t(i - 1)][size_t(j)];
    }
    return (k < 0 || k > n) ? 0 : t[size_t(n)][size_t(k)];
}

Composition single(int index, int rest, int d)
{
    std::vector<int> parts(size_t(index) + 1, 0);
    parts[0] = rest;
    parts[size_t(index)] += d - rest;
    return Composition(parts);
}

} // namespace

TEST_CASE("composition counts")
{
    for (int n = 1; n <= 8; ++n)
        for (int d = 0; d <= 8; ++d) {
            const auto all = enumerate(n, d);
            CHECK(long(all.size()) == pascal(n + d - 1, d));
            std::set<std::vector<int>> seen;
            for (const auto& c : all) {
                CHECK(c.degree() == d);
                CHECK(c.parts.size() == size_t(n));
                seen.insert(c.parts);
            }
            CHECK(seen.size() == all.size());
        }
}

TEST_CASE("composition examples")
{
    const auto l22 = enumerate(2, 2);
    REQUIRE(l22.size() == 3);
    CHECK(l22[0].parts == std::vector<int>{2, 0});
    CHECK(l22[1].parts == std::vector<int>{1, 1});
    CHECK(l22[2].parts == std::vector<int>{0, 2});
    CHECK(enumerate(3, 3).size() == 10);
    for (int d = 0; d <= 5; ++d) {
        const auto l1 = enumerate(1, d);
        REQUIRE(l1.size() == 1);
        CHECK(l1[0].parts == std::vector<int>{d});
    }
    CHECK(Composition({1, 2, 0, 0}) == Composition({1, 2}));
}

TEST_CASE("weights")
{
    CHECK(weight(Composition({4})) == 0);
    for (int n = 1; n <= 6; ++n)
        CHECK(weight(single(n, 3, 4)) == 2 * n);
    for (int p : {3, 5}) {
        std::vector<int> parts(size_t(p) + 1, 0);
        parts[size_t(p)] = 1;
        CHECK(scaled_weight(Composition(parts), p, 1) == 2 * p);
        CHECK(scaled_weight(Composition(parts), p, 2) == 2 * p * p * p);
    }
}

TEST_CASE("boundedness")
{
    for (int n = 1; n <= 5; ++n)
        CHECK(is_bounded(Composition({3, 0, 0}), n));
    for (int n = 1; n <= 5; ++n)
        CHECK_FALSE(is_bounded(single(n, 2, 3), n));
}

TEST_CASE("weight below 2n forces n-boundedness, sharply")
{
    for (int d = 1; d <= 3; ++d) {
        const int N = 8 * d;
        const auto all = enumerate(N, d);
        for (int n = 1; n < N; ++n) {
            long long min_unbounded = -1;
            for (const auto& c : all) {
                if (weight(c) < 2 * n)
                    CHECK(is_bounded(c, n));
                if (!is_bounded(c, n) && (min_unbounded < 0 || weight(c) < min_unbounded))
                    min_unbounded = weight(c);
            }
            CHECK(min_unbounded == 2 * n);
        }
    }
}

TEST_CASE("scaled weight below 2p^{2r-1} forces p-boundedness")
{
    for (int p : {3, 5})
        for (int r : {1, 2}) {
            const long long bound = 2 * ipow(p, 2 * r - 1);
            for (int d = 1; d <= 3; ++d) {
                // all compositions whose (unscaled) weight stays within a window past the bound
                const auto all = enumerate_infinite(d, 2 * p + 2);
                long long checked = 0;
                for (const auto& c : all) {
                    if (scaled_weight(c, p, r) < bound) {
                        CHECK(is_bounded(c, p));
                        ++checked;
                    }
                }
                CHECK(checked > 0);
            }
        }
}

TEST_CASE("truncated infinite compositions")
{
    const auto all = enumerate_infinite(2, 6);
    for (const auto& c : all) {
        CHECK(c.degree() == 2);
        CHECK(weight(c) <= 6);
        CHECK(c.trimmed().parts.size() <= 4);
    }
    // (2), (1,1), (0,2), (1,0,1), (1,0,0,1), (0,1,1)
    CHECK(all.size() == 6);
}

TEST_CASE("yoneda algebra dimensions")
{
    const auto cl = yoneda_dims(3, 1, false, 8);
    CHECK(cl.as_vector(6) == std::vector<long long>{1, 0, 1, 0, 1, 0, 0});
    const auto su = yoneda_dims(3, 1, true, 9);
    CHECK(su.as_vector(5) == std::vector<long long>{1, 0, 1, 0, 1, 0});
    CHECK(su.at(8) == 1);
    CHECK(su.provenance_at(7) == Provenance::computed);
    CHECK(su.provenance_at(8) == Provenance::assumed);
    CHECK_FALSE(su.any_assumed(7));
    CHECK(su.any_assumed(8));
    CHECK(yoneda_dims(5, 2, true, 4).provenance_at(0) == Provenance::assumed);
    for (int p : {3, 5, 7})
        for (int r : {1, 2}) {
            const auto c = yoneda_dims(p, r, false, 2 * int(ipow(p, r)) + 2);
            const auto s = yoneda_dims(p, r, true, 2 * int(ipow(p, r)) + 2);
            CHECK(c.at(0) == 1);
            for (int t = 0; t <= 2 * int(ipow(p, r)) - 2; ++t)
                CHECK(c.at(t) == s.at(t));
            CHECK(c.at(2 * int(ipow(p, r))) == 0);
        }
    CHECK_THROWS_AS(yoneda_dims(2, 1, true, 3), std::invalid_argument);
    CHECK_THROWS_AS(yoneda_dims(9, 1, true, 3), std::invalid_argument);
}

TEST_CASE("binomial and power helpers")
{
    for (int n = 0; n <= 12; ++n)
        for (int k = -1; k <= n + 1; ++k)
            CHECK(binomial(n, k) == pascal(n, k));
    CHECK(ipow(3, 4) == 81);
}
