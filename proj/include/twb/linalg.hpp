#pragma once

// Exact linear algebra over F_p: dense (Eigen storage) and sparse
// (column-major, sorted row indices) code paths with identical results.

#include "twb/field.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <variant>
#include <vector>

namespace twb {

using Index = Eigen::Index;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using RowMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using SparseMatrix = Eigen::SparseMatrix<S, Eigen::ColMajor, int>;

template <class S>
struct RrefResult
{
    Matrix<S> reduced;
    std::vector<Index> pivots; // pivot column of each nonzero row
};

template <class S>
RrefResult<S> rref(const Matrix<S>& m);
template <class S>
Index rank(const Matrix<S>& m);
/// Columns form a basis of {x : m x = 0}.
template <class S>
Matrix<S> nullspace(const Matrix<S>& m);
/// x with m x = b, or nullopt when b is not in the column space.
template <class S>
std::optional<Vector<S>> solve(const Matrix<S>& m, const Vector<S>& b);

template <class S>
struct SparseRrefResult
{
    SparseMatrix<S> reduced;
    std::vector<Index> pivots;
};

template <class S>
SparseRrefResult<S> rref(const SparseMatrix<S>& m);
template <class S>
Index rank(const SparseMatrix<S>& m);
template <class S>
Matrix<S> nullspace(const SparseMatrix<S>& m);
template <class S>
std::optional<Vector<S>> solve(const SparseMatrix<S>& m, const Vector<S>& b);

template <class S>
bool is_zero(const Matrix<S>& m)
{
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!m(i, j).is_zero())
                return false;
    return true;
}

template <class S>
bool is_zero(const SparseMatrix<S>& m)
{
    for (Index k = 0; k < m.outerSize(); ++k)
        for (typename SparseMatrix<S>::InnerIterator it(m, k); it; ++it)
            if (!it.value().is_zero())
                return false;
    return true;
}

template <class S>
Matrix<S> to_dense(const SparseMatrix<S>& m)
{
    Matrix<S> d = Matrix<S>::Zero(m.rows(), m.cols());
    for (Index k = 0; k < m.outerSize(); ++k)
        for (typename SparseMatrix<S>::InnerIterator it(m, k); it; ++it)
            d(it.row(), it.col()) += it.value();
    return d;
}

template <class S>
SparseMatrix<S> to_sparse(const Matrix<S>& m)
{
    std::vector<Eigen::Triplet<S>> trip;
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!m(i, j).is_zero())
                trip.emplace_back(int(i), int(j), m(i, j));
    SparseMatrix<S> s(m.rows(), m.cols());
    s.setFromTriplets(trip.begin(), trip.end());
    return s;
}

/// Drop explicitly stored zeros.
template <class S>
void prune_zeros(SparseMatrix<S>& m)
{
    m.prune([](const Index&, const Index&, const S& v) { return !v.is_zero(); });
}

template <class S>
double density(const Matrix<S>& m)
{
    if (m.size() == 0)
        return 0.0;
    Index nz = 0;
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            nz += !m(i, j).is_zero();
    return double(nz) / double(m.size());
}

template <class S>
Matrix<S> random_matrix(Index rows, Index cols, std::mt19937_64& rng, double nonzero_fraction = 1.0)
{
    std::uniform_int_distribution<int> val(1, int(S::modulus) - 1);
    std::bernoulli_distribution keep(nonzero_fraction);
    Matrix<S> m = Matrix<S>::Zero(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            if (keep(rng))
                m(i, j) = S(val(rng));
    return m;
}

template <class S>
Matrix<S> kronecker(const Matrix<S>& a, const Matrix<S>& b)
{
    Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Incrementally maintained row space in semi-echelon form.
/// Rows are normalized at their pivot and vanish at earlier pivots.
template <class S>
class Echelon
{
public:
    explicit Echelon(Index length = 0) : length_(length) {}

    Index length() const { return length_; }
    Index dimension() const { return Index(rows_.size()); }

    /// Reduce `v` against the stored rows; returns true if a nonzero residual remains.
    bool reduce(Vector<S>& v) const;
    bool contains(const Vector<S>& v) const
    {
        Vector<S> w = v;
        return !reduce(w);
    }
    /// Adds `v` if independent; returns whether it was added.
    bool add(Vector<S> v);

    const std::vector<Vector<S>>& rows() const { return rows_; }
    const std::vector<Index>& pivots() const { return pivots_; }
    /// Stored rows as matrix columns.
    Matrix<S> basis() const;

private:
    Index length_;
    std::vector<Vector<S>> rows_;
    std::vector<Index> pivots_;
};

/// Matrix with storage chosen by density (dense above the threshold).
template <class S>
class MatrixFp
{
public:
    enum class Storage : std::uint8_t { dense = 0, sparse = 1 };
    static constexpr double default_density_threshold = 0.25;

    MatrixFp() : data_(Matrix<S>()) {}
    explicit MatrixFp(Matrix<S> m) : data_(std::move(m)) {}
    explicit MatrixFp(SparseMatrix<S> m) : data_(std::move(m)) {}

    static MatrixFp adaptive(const Matrix<S>& m, double threshold = default_density_threshold)
    {
        if (density(m) >= threshold)
            return MatrixFp(m);
        return MatrixFp(to_sparse(m));
    }

    Storage storage() const { return data_.index() == 0 ? Storage::dense : Storage::sparse; }
    Index rows() const;
    Index cols() const;
    Matrix<S> dense() const;
    SparseMatrix<S> sparse() const;

    Index rank() const;
    Matrix<S> nullspace() const;

    friend bool operator==(const MatrixFp& a, const MatrixFp& b)
    {
        return a.rows() == b.rows() && a.cols() == b.cols() && a.dense() == b.dense();
    }

private:
    std::variant<Matrix<S>, SparseMatrix<S>> data_;
};

/// Versioned binary blob: magic, version, p, rows, cols, storage tag, payload.
template <class S>
void write_matrix(std::ostream& os, const MatrixFp<S>& m);
template <class S>
MatrixFp<S> read_matrix(std::istream& is);

inline constexpr std::uint32_t matrix_blob_version = 1;

} // namespace twb
