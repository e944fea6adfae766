#include "twb/supervec.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
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

// multisets of size k from n things
long long multichoose(long long n, long long k)
{
    return k == 0 ? 1 : choose(n + k - 1, k);
}

long long gamma_formula(int m, int n, int d)
{
    long long s = 0;
    for (int a = 0; a <= d; ++a)
        s += multichoose(m, a) * choose(n, d - a);
    return s;
}

long long ext_formula(int m, int n, int d)
{
    long long s = 0;
    for (int a = 0; a <= d; ++a)
        s += choose(m, a) * multichoose(n, d - a);
    return s;
}

// Invariants of the signed symmetric-group action on V^{⊗d}, by brute force.
long long signed_invariants(int m, int n, int d)
{
    const int N = m + n;
    int words = 1;
    for (int i = 0; i < d; ++i)
        words *= N;
    auto letter = [&](int w, int pos) {
        for (int i = d - 1; i > pos; --i)
            w /= N;
        return w % N;
    };
    auto odd = [&](int x) { return x >= m; };
    // stack (s_i - 1) for adjacent transpositions
    Matrix<F3> a = Matrix<F3>::Zero((d - 1) * words, words);
    for (int i = 0; i + 1 < d; ++i)
        for (int w = 0; w < words; ++w) {
            int x = letter(w, i), y = letter(w, i + 1);
            int stride = 1;
            for (int k = d - 1; k > i + 1; --k)
                stride *= N;
            const int swapped = w + (y - x) * stride * N + (x - y) * stride;
            const int sign = (odd(x) && odd(y)) ? -1 : 1;
            a(i * words + swapped, w) += F3(sign);
            a(i * words + w, w) -= F3(1);
        }
    return words - rank(a);
}

} // namespace

TEST_CASE("tensor of super spaces")
{
    const auto t = tensor(SuperSpace::standard(1, 0), SuperSpace::standard(0, 1));
    CHECK(t.even_dim() == 0);
    CHECK(t.odd_dim() == 1);
    CHECK(swap_sign(1, 1) == -1);
    CHECK(swap_sign(0, 1) == 1);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dim(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto u = SuperSpace::standard(dim(rng), dim(rng));
        const auto v = SuperSpace::standard(dim(rng), dim(rng));
        const auto uv = tensor(u, v);
        CHECK(uv.dim() == u.dim() * v.dim());
        CHECK(uv.even_dim() == u.even_dim() * v.even_dim() + u.odd_dim() * v.odd_dim());
        for (int i = 0; i < u.dim(); ++i)
            for (int j = 0; j < v.dim(); ++j)
                CHECK(uv.parity[size_t(tensor_index(u, v, i, j))] == (u.parity[size_t(i)] ^ v.parity[size_t(j)]));
    }
}

TEST_CASE("graded tensor adds degrees")
{
    const auto u = SuperSpace::graded({1, 0, 2});
    CHECK(u.dim() == 3);
    CHECK(u.is_graded());
    const auto uv = tensor(u, SuperSpace::graded({1, 1}));
    std::vector<int> degrees;
    for (int i = 0; i < uv.dim(); ++i)
        degrees.push_back(uv.degree_of(i));
    std::sort(degrees.begin(), degrees.end());
    CHECK(degrees == std::vector<int>{0, 1, 2, 2, 3, 3});
}

TEST_CASE("twist and even part")
{
    const auto v = SuperSpace::standard(3, 3);
    const auto t = twist_space(v, 1);
    CHECK(t.even_dim() == 3);
    CHECK(t.odd_dim() == 3);
    CHECK(t.twist == 1);
    const auto e = even_part(v);
    CHECK(e.even_dim() == 3);
    CHECK(e.odd_dim() == 0);
    CHECK(dual(v).dim() == 6);
}

TEST_CASE("frobenius twist of a map raises entries to the p^r-th power")
{
    std::mt19937_64 rng(17);
    const Matrix<F5> f = random_matrix<F5>(4, 3, rng);
    const Matrix<F5> g = twist_map(f, 2);
    for (Index i = 0; i < f.rows(); ++i)
        for (Index j = 0; j < f.cols(); ++j) {
            long long x = 1;
            for (int k = 0; k < 25; ++k)
                x = x * f(i, j).value() % 5;
            CHECK(g(i, j).value() == x);
        }
}

TEST_CASE("power dimensions against closed forms")
{
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n)
            for (int d = 0; d <= 6; ++d) {
                if (gamma_formula(m, n, d) > 5000)
                    continue;
                const auto v = SuperSpace::standard(m, n);
                CHECK(build_power(PowerKind::gamma, v, d).size() == gamma_formula(m, n, d));
                CHECK(build_power(PowerKind::sym, v, d).size() == gamma_formula(m, n, d));
                CHECK(power_dim(PowerKind::gamma, m, n, d) == gamma_formula(m, n, d));
                CHECK(power_dim(PowerKind::ext, m, n, d) == ext_formula(m, n, d));
                if (ext_formula(m, n, d) <= 5000)
                    CHECK(build_power(PowerKind::ext, v, d).size() == ext_formula(m, n, d));
            }
}

TEST_CASE("power examples")
{
    CHECK(build_power(PowerKind::gamma, SuperSpace::standard(1, 1), 2).size() == 2);
    CHECK(build_power(PowerKind::sym, SuperSpace::standard(3, 3), 3).size() == 38);
    CHECK(build_power(PowerKind::gamma, SuperSpace::standard(2, 5), 0).size() == 1);
    CHECK(build_power(PowerKind::tensor, SuperSpace::standard(2, 1), 3).size() == 27);
}

TEST_CASE("divided powers are the signed invariants")
{
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n + m <= 3; ++n)
            for (int d = 2; d <= 3; ++d) {
                if (m + n == 0)
                    continue;
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(d);
                CHECK(signed_invariants(m, n, d) == gamma_formula(m, n, d));
            }
}

TEST_CASE("monomial multiplicities follow parity")
{
    const auto v = SuperSpace::standard(2, 2);
    for (auto kind : {PowerKind::gamma, PowerKind::sym, PowerKind::ext}) {
        const auto b = build_power(kind, v, 3);
        for (const auto& mono : b.monomials) {
            CHECK(std::is_sorted(mono.begin(), mono.end()));
            for (size_t i = 1; i < mono.size(); ++i)
                if (mono[i] == mono[i - 1])
                    CHECK(may_repeat(kind, v.parity[size_t(mono[i])]));
        }
        for (Index i = 0; i < b.size(); ++i)
            CHECK(b.index_of(b.monomials[size_t(i)]) == i);
    }
}

TEST_CASE("koszul sort sign")
{
    const auto v = SuperSpace::standard(1, 2); // 0 even, 1 and 2 odd
    std::vector<int> w{2, 1};
    CHECK(koszul_sort(w, v) == -1);
    CHECK(w == std::vector<int>{1, 2});
    std::vector<int> x{1, 0};
    CHECK(koszul_sort(x, v) == 1);
    std::vector<int> y{2, 0, 1};
    CHECK(koszul_sort(y, v) == -1);
    const auto rank = v.canonical_rank();
    CHECK(permutation_sort_sign({1, 0}, rank) == -1);
    CHECK(permutation_sort_sign({0, 1, 2}, rank) == 1);
}
