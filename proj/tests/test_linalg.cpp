#include "twb/linalg.hpp"

#include <doctest.h>

#include <sstream>

using namespace twb;

namespace {

// Plain integer elimination mod p, kept separate from the library code.
int oracle_rank(std::vector<std::vector<int>> a, int p)
{
    int rank = 0;
    const int rows = int(a.size());
    const int cols = rows ? int(a[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][c] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[piv], a[rank]);
        int inv = 1;
        while ((a[rank][c] * inv) % p != 1)
            ++inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] % p == 0)
                continue;
            const int f = (a[r][c] * inv) % p;
            for (int j = 0; j < cols; ++j)
                a[r][j] = ((a[r][j] - f * a[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

template <class S>
std::vector<std::vector<int>> to_ints(const Matrix<S>& m)
{
    std::vector<std::vector<int>> out(size_t(m.rows()), std::vector<int>(size_t(m.cols())));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            out[size_t(i)][size_t(j)] = m(i, j).value();
    return out;
}

} // namespace

TEST_CASE("field arithmetic")
{
    CHECK(F3(2) + F3(2) == F3(1));
    CHECK(F3(-1) == F3(2));
    CHECK(F5(3).inverse() == F5(2));
    CHECK(F7(3).pow(6) == F7(1));
    CHECK_THROWS_AS(F3(0).inverse(), std::domain_error);
    CHECK(F5(4).centered() == -1);
}

TEST_CASE("rref of trivial matrices")
{
    Matrix<F3> id = Matrix<F3>::Identity(2, 2);
    auto r = rref(id);
    CHECK(r.reduced == id);
    CHECK(r.pivots == std::vector<Index>{0, 1});

    Matrix<F3> z = Matrix<F3>::Zero(3, 4);
    auto rz = rref(z);
    CHECK(is_zero(rz.reduced));
    CHECK(rz.pivots.empty());
}

TEST_CASE("nullspace examples")
{
    CHECK(nullspace(Matrix<F3>(Matrix<F3>::Identity(4, 4))).cols() == 0);
    Matrix<F3> m(1, 2);
    m << F3(1), F3(1);
    Matrix<F3> k = nullspace(m);
    REQUIRE(k.cols() == 1);
    CHECK(k(0, 0) == F3(1) * k(0, 0));
    // forced up to scalar: normalize the first entry
    Vector<F3> v = k.col(0) * k(0, 0).inverse();
    CHECK(v(0) == F3(1));
    CHECK(v(1) == F3(2));
}

TEST_CASE("rank-nullity and idempotent rref on random matrices")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dim(1, 12);
    for (int trial = 0; trial < 500; ++trial) {
        const Index r = dim(rng), c = dim(rng);
        Matrix<F3> m = random_matrix<F3>(r, c, rng, trial % 3 == 0 ? 0.2 : 0.7);
        auto red = rref(m);
        const Index rk = Index(red.pivots.size());
        REQUIRE(rk == oracle_rank(to_ints(m), 3));
        CHECK(rank(m) == rk);
        Matrix<F3> k = nullspace(m);
        CHECK(rk + k.cols() == c);
        CHECK(is_zero(Matrix<F3>(m * k)));
        CHECK(rank(k) == k.cols());
        CHECK(rref(red.reduced).reduced == red.reduced);
    }
    Matrix<F3> big = random_matrix<F3>(50, 70, rng);
    CHECK(rank(big) + nullspace(big).cols() == 70);
    CHECK(rank(big) == oracle_rank(to_ints(big), 3));
}

TEST_CASE("solve")
{
    std::mt19937_64 rng(5);
    Vector<F5> b = random_matrix<F5>(4, 1, rng).col(0);
    auto x = solve(Matrix<F5>(Matrix<F5>::Identity(4, 4)), b);
    REQUIRE(x);
    CHECK(*x == b);

    Vector<F5> nz = Vector<F5>::Zero(3);
    nz(1) = F5(2);
    CHECK_FALSE(solve(Matrix<F5>(Matrix<F5>::Zero(3, 3)), nz).has_value());

    for (int trial = 0; trial < 200; ++trial) {
        Matrix<F3> m = random_matrix<F3>(9, 5, rng);
        if (rank(m) < 5)
            continue;
        Vector<F3> x0 = random_matrix<F3>(5, 1, rng).col(0);
        Vector<F3> rhs = m * x0;
        auto sol = solve(m, rhs);
        REQUIRE(sol);
        CHECK(Vector<F3>(m * *sol) == rhs);
        auto ssol = solve(to_sparse(m), rhs);
        REQUIRE(ssol);
        CHECK(Vector<F3>(m * *ssol) == rhs);
    }
}

TEST_CASE("sparse and dense paths agree")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Matrix<F7> m = random_matrix<F7>(1 + trial % 15, 1 + (trial * 7) % 13, rng, 0.15 + 0.1 * (trial % 5));
        SparseMatrix<F7> s = to_sparse(m);
        CHECK(rank(s) == rank(m));
        auto rd = rref(m);
        auto rs = rref(s);
        CHECK(rd.pivots == rs.pivots);
        CHECK(to_dense(rs.reduced).topRows(Index(rd.pivots.size())) == rd.reduced.topRows(Index(rd.pivots.size())));
        CHECK(nullspace(s) == nullspace(m));
        Vector<F7> b = random_matrix<F7>(m.rows(), 1, rng).col(0);
        CHECK(solve(s, b).has_value() == solve(m, b).has_value());
    }
}

TEST_CASE("echelon accumulates a row space")
{
    std::mt19937_64 rng(3);
    Matrix<F3> m = random_matrix<F3>(8, 10, rng);
    m.row(7) = m.row(0) + m.row(3);
    Echelon<F3> e(10);
    for (Index i = 0; i < m.rows(); ++i)
        e.add(m.row(i).transpose());
    CHECK(e.dimension() == rank(m));
    CHECK(e.contains(Vector<F3>(m.row(2).transpose() * F3(2))));
    CHECK(rank(Matrix<F3>(e.basis())) == e.dimension());
}

TEST_CASE("matrix blob round trip")
{
    std::mt19937_64 rng(9);
    for (double dens : {0.05, 0.9}) {
        auto m = MatrixFp<F5>::adaptive(random_matrix<F5>(17, 23, rng, dens));
        CHECK(m.storage() == (dens < 0.25 ? MatrixFp<F5>::Storage::sparse : MatrixFp<F5>::Storage::dense));
        std::stringstream ss;
        write_matrix(ss, m);
        auto back = read_matrix<F5>(ss);
        CHECK(back == m);
        CHECK(back.storage() == m.storage());
    }
    std::stringstream wrong;
    write_matrix(wrong, MatrixFp<F5>(Matrix<F5>(Matrix<F5>::Identity(2, 2))));
    CHECK_THROWS(read_matrix<F3>(wrong));
}
