#include "twb/module.hpp"
#include "twb/schur_algebra.hpp"

#include <doctest.h>

#include <random>

using namespace twb;

namespace {

long long choose(long long n, long long k)
{
    if (k < 0 || k > n)
        return 0;
    long long c = 1;
    for (long long i = 1; i <= k; ++i)
        c = c * (n - k + i) / i;
    return c;
}

// dim Γ^D of a superspace of dimension (e|o)
long long gamma_dim(long long e, long long o, int D)
{
    long long s = 0;
    for (int a = 0; a <= D; ++a)
        s += choose(e + a - 1, a) * choose(o, D - a);
    return s;
}

long long closed_form(int m, int n, int D)
{
    return gamma_dim(m * m + n * n, 2 * m * n, D);
}

template <class S>
Vector<S> coords_of(const IntCoords& c, Index dim)
{
    Vector<S> v = Vector<S>::Zero(dim);
    for (const auto& [k, x] : c)
        v(k) += S(x);
    return v;
}

template <class S>
Vector<S> basis_vector(Index dim, int k)
{
    Vector<S> v = Vector<S>::Zero(dim);
    v(k) = S(1);
    return v;
}

} // namespace

TEST_CASE("algebra dimensions, two ways")
{
    for (auto [m, n, D, expected] : std::vector<std::tuple<int, int, int, long long>>{
             {1, 0, 1, 1}, {2, 0, 2, 10}, {3, 0, 3, 165}, {1, 1, 2, 8}, {3, 3, 3, 7788}}) {
        CAPTURE(m);
        CAPTURE(n);
        CAPTURE(D);
        auto a = schur_algebra(m, n, D, 3);
        CHECK(a->dim() == expected);
        CHECK(closed_form(m, n, D) == expected);
        CHECK(schur_dim(m, n, D) == expected);
        CHECK(a->operator_span_rank() == expected);
    }
}

TEST_CASE("closed form over the cap")
{
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            for (int D = 0; D <= 4; ++D) {
                if (m + n == 0)
                    continue;
                long long tensor = 1;
                for (int i = 0; i < D; ++i)
                    tensor *= m + n;
                if (tensor > 1296)
                    continue;
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(D);
                auto a = SchurSuperalgebra::build(m, n, D, 5);
                CHECK(a->dim() == closed_form(m, n, D));
            }
}

TEST_CASE("resource cap")
{
    CHECK_THROWS_AS(SchurSuperalgebra::build(3, 3, 6, 3), ResourceExceeded);
}

TEST_CASE("weight idempotents")
{
    for (auto [m, n, D] : std::vector<std::tuple<int, int, int>>{{2, 0, 2}, {1, 1, 2}, {2, 1, 3}}) {
        auto a = schur_algebra(m, n, D, 3);
        Vector<F3> sum = Vector<F3>::Zero(a->dim());
        for (int w = 0; w < a->weight_count(); ++w)
            sum(a->idempotent(w)) += F3(1);
        CHECK(sum == a->unit<F3>());
        for (int w = 0; w < a->weight_count(); ++w)
            for (int u = 0; u < a->weight_count(); ++u) {
                const auto& prod = a->product(a->idempotent(w), a->idempotent(u));
                if (w == u) {
                    REQUIRE(prod.size() == 1);
                    CHECK(prod[0].first == a->idempotent(w));
                    CHECK(prod[0].second == 1);
                } else {
                    CHECK(prod.empty());
                }
            }
    }
}

TEST_CASE("products against operator composition")
{
    auto a = schur_algebra(3, 3, 3, 3);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(0, int(a->dim()) - 1);
    for (int trial = 0; trial < 60; ++trial) {
        const int x = pick(rng), y = pick(rng);
        const SparseMatrix<F3> lhs = a->op<F3>(x) * a->op<F3>(y);
        const auto c = coords_of<F3>(a->product(x, y), a->dim());
        SparseMatrix<F3> diff = lhs - a->op<F3>(c);
        prune_zeros(diff);
        CHECK(diff.nonZeros() == 0);
    }
}

TEST_CASE("unit and associativity")
{
    auto a = schur_algebra(3, 3, 3, 3);
    const auto one = a->unit<F3>();
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> pick(0, int(a->dim()) - 1);
    for (int trial = 0; trial < 20; ++trial) {
        const int x = pick(rng);
        const auto e = basis_vector<F3>(a->dim(), x);
        CHECK(a->multiply(one, e) == e);
        CHECK(a->multiply(e, one) == e);
    }
    for (int trial = 0; trial < 200; ++trial) {
        const int x = pick(rng), y = pick(rng), z = pick(rng);
        const auto ex = basis_vector<F3>(a->dim(), x);
        const auto ey = basis_vector<F3>(a->dim(), y);
        const auto ez = basis_vector<F3>(a->dim(), z);
        CHECK(a->multiply(a->multiply(ex, ey), ez) == a->multiply(ex, a->multiply(ey, ez)));
    }
}

TEST_CASE("generating set spans the algebra")
{
    for (auto [m, n, D] : std::vector<std::tuple<int, int, int>>{{2, 0, 2}, {3, 0, 3}, {1, 1, 2}, {3, 3, 3}}) {
        auto a = schur_algebra(m, n, D, 3);
        CHECK(a->generated_dimension() == a->dim());
    }
}

TEST_CASE("twist pushforward on S(3|3, 3)")
{
    auto psi = twist_pushforward<F3>(3, 3, 1, 1);
    const auto& big = psi->big();
    const auto& small = psi->small();
    CHECK(small.dim() == 9);
    CHECK(psi->image_rank() == 9);
    CHECK(psi->apply(big.unit<F3>()) == small.unit<F3>());

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(0, int(big.dim()) - 1);
    for (int trial = 0; trial < 500; ++trial) {
        const int x = pick(rng), y = pick(rng);
        const auto ex = basis_vector<F3>(big.dim(), x);
        const auto ey = basis_vector<F3>(big.dim(), y);
        const auto lhs = psi->apply(big.multiply(ex, ey));
        const auto rhs = small.multiply(psi->apply(ex), psi->apply(ey));
        CHECK(lhs == rhs);
    }
    for (int w = 0; w < big.weight_count(); ++w) {
        const auto e = psi->apply(basis_vector<F3>(big.dim(), big.idempotent(w)));
        CHECK(small.multiply(e, e) == e);
    }
}

TEST_CASE("classical twist pushforward sends e_ij^{⊗p} to e_ij and kills the rest")
{
    auto psi = twist_pushforward<F3>(3, 0, 1, 1);
    const auto& big = psi->big();
    const auto& small = psi->small();
    for (int k = 0; k < int(big.dim()); ++k) {
        const auto& pairs = big.pairs(k);
        const bool pure = std::all_of(pairs.begin(), pairs.end(), [&](int c) { return c == pairs[0]; });
        Vector<F3> expected = Vector<F3>::Zero(small.dim());
        if (pure)
            expected(small.index_of({pairs[0]})) = F3(1);
        CHECK(psi->apply(basis_vector<F3>(big.dim(), k)) == expected);
    }
}
