#include "twb/linalg.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace twb {

namespace {

// In-place Gauss-Jordan on a row-major matrix; first-nonzero pivoting.
template <class S>
std::vector<Index> gauss_jordan(RowMatrix<S>& r, bool back_substitute)
{
    const Index rows = r.rows(), cols = r.cols();
    std::vector<Index> pivots;
    Index row = 0;
    for (Index col = 0; col < cols && row < rows; ++col) {
        Index piv = -1;
        for (Index i = row; i < rows; ++i)
            if (!r(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != row)
            r.row(piv).swap(r.row(row));
        S* prow = r.data() + row * cols;
        const S inv = prow[col].inverse();
        for (Index j = col; j < cols; ++j)
            prow[j] *= inv;
        const Index start = back_substitute ? 0 : row + 1;
        for (Index i = start; i < rows; ++i) {
            if (i == row)
                continue;
            S* irow = r.data() + i * cols;
            const S c = irow[col];
            if (c.is_zero())
                continue;
            for (Index j = col; j < cols; ++j)
                if (!prow[j].is_zero())
                    irow[j] -= c * prow[j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class S>
Matrix<S> nullspace_from_rref(const Matrix<S>& red, const std::vector<Index>& pivots, Index cols)
{
    std::vector<char> is_pivot(size_t(cols), 0);
    for (Index c : pivots)
        is_pivot[size_t(c)] = 1;
    Matrix<S> k = Matrix<S>::Zero(cols, cols - Index(pivots.size()));
    Index out = 0;
    for (Index f = 0; f < cols; ++f) {
        if (is_pivot[size_t(f)])
            continue;
        k(f, out) = S(1);
        for (size_t i = 0; i < pivots.size(); ++i)
            k(pivots[i], out) = -red(Index(i), f);
        ++out;
    }
    return k;
}

// Sparse row: sorted (column, value) pairs.
template <class S>
using SparseRow = std::map<Index, S>;

template <class S>
std::vector<SparseRow<S>> sparse_rows(const SparseMatrix<S>& m)
{
    std::vector<SparseRow<S>> rows(static_cast<size_t>(m.rows()));
    for (Index k = 0; k < m.outerSize(); ++k)
        for (typename SparseMatrix<S>::InnerIterator it(m, k); it; ++it)
            if (!it.value().is_zero())
                rows[size_t(it.row())][it.col()] += it.value();
    return rows;
}

template <class S>
void axpy_row(SparseRow<S>& target, S c, const SparseRow<S>& src)
{
    for (const auto& [col, v] : src) {
        auto it = target.find(col);
        if (it == target.end())
            target.emplace(col, -(c * v));
        else {
            it->second -= c * v;
            if (it->second.is_zero())
                target.erase(it);
        }
    }
}

// Sparse Gauss-Jordan: rows processed one at a time against reduced pivots.
template <class S>
std::vector<std::pair<Index, SparseRow<S>>> sparse_gauss_jordan(const SparseMatrix<S>& m)
{
    auto rows = sparse_rows(m);
    std::map<Index, SparseRow<S>> pivot_rows; // pivot column -> normalized row
    for (auto& row : rows) {
        // eliminate existing pivots from the incoming row
        for (auto it = row.begin(); it != row.end();) {
            auto pr = pivot_rows.find(it->first);
            if (pr == pivot_rows.end()) {
                ++it;
                continue;
            }
            const Index col = it->first;
            const S c = it->second;
            axpy_row(row, c, pr->second);
            it = row.upper_bound(col);
        }
        if (row.empty())
            continue;
        const Index pcol = row.begin()->first;
        const S inv = row.begin()->second.inverse();
        for (auto& [col, v] : row)
            v *= inv;
        // clear the new pivot column from older rows
        for (auto& [col, prow] : pivot_rows) {
            auto hit = prow.find(pcol);
            if (hit != prow.end()) {
                const S c = hit->second;
                axpy_row(prow, c, row);
            }
        }
        pivot_rows.emplace(pcol, std::move(row));
    }
    std::vector<std::pair<Index, SparseRow<S>>> out(pivot_rows.begin(), pivot_rows.end());
    return out;
}

} // namespace

template <class S>
RrefResult<S> rref(const Matrix<S>& m)
{
    RowMatrix<S> r = m;
    auto pivots = gauss_jordan(r, true);
    return {Matrix<S>(r), std::move(pivots)};
}

template <class S>
Index rank(const Matrix<S>& m)
{
    RowMatrix<S> r = m;
    return Index(gauss_jordan(r, false).size());
}

template <class S>
Matrix<S> nullspace(const Matrix<S>& m)
{
    auto res = rref(m);
    return nullspace_from_rref(res.reduced, res.pivots, m.cols());
}

template <class S>
std::optional<Vector<S>> solve(const Matrix<S>& m, const Vector<S>& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: shape mismatch");
    Matrix<S> aug(m.rows(), m.cols() + 1);
    aug << m, b;
    auto res = rref(aug);
    Vector<S> x = Vector<S>::Zero(m.cols());
    for (size_t i = 0; i < res.pivots.size(); ++i) {
        if (res.pivots[i] == m.cols())
            return std::nullopt;
        x(res.pivots[i]) = res.reduced(Index(i), m.cols());
    }
    return x;
}

template <class S>
SparseRrefResult<S> rref(const SparseMatrix<S>& m)
{
    auto rows = sparse_gauss_jordan(m);
    std::vector<Eigen::Triplet<S>> trip;
    std::vector<Index> pivots;
    for (size_t i = 0; i < rows.size(); ++i) {
        pivots.push_back(rows[i].first);
        for (const auto& [col, v] : rows[i].second)
            trip.emplace_back(int(i), int(col), v);
    }
    SparseMatrix<S> r(m.rows(), m.cols());
    r.setFromTriplets(trip.begin(), trip.end());
    return {std::move(r), std::move(pivots)};
}

template <class S>
Index rank(const SparseMatrix<S>& m)
{
    // column elimination on the transpose keeps fill local for column-sparse operators
    SparseMatrix<S> t = m.transpose();
    return Index(sparse_gauss_jordan(t).size());
}

template <class S>
Matrix<S> nullspace(const SparseMatrix<S>& m)
{
    auto res = rref(m);
    std::vector<char> is_pivot(size_t(m.cols()), 0);
    for (Index c : res.pivots)
        is_pivot[size_t(c)] = 1;
    Matrix<S> k = Matrix<S>::Zero(m.cols(), m.cols() - Index(res.pivots.size()));
    std::vector<Index> free_index(size_t(m.cols()), -1);
    Index out = 0;
    for (Index f = 0; f < m.cols(); ++f)
        if (!is_pivot[size_t(f)]) {
            free_index[size_t(f)] = out;
            k(f, out++) = S(1);
        }
    for (Index col = 0; col < res.reduced.outerSize(); ++col)
        for (typename SparseMatrix<S>::InnerIterator it(res.reduced, col); it; ++it) {
            const Index f = it.col();
            if (free_index[size_t(f)] >= 0)
                k(res.pivots[size_t(it.row())], free_index[size_t(f)]) = -it.value();
        }
    return k;
}

template <class S>
std::optional<Vector<S>> solve(const SparseMatrix<S>& m, const Vector<S>& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: shape mismatch");
    std::vector<Eigen::Triplet<S>> trip;
    for (Index k = 0; k < m.outerSize(); ++k)
        for (typename SparseMatrix<S>::InnerIterator it(m, k); it; ++it)
            trip.emplace_back(int(it.row()), int(it.col()), it.value());
    for (Index i = 0; i < b.size(); ++i)
        if (!b(i).is_zero())
            trip.emplace_back(int(i), int(m.cols()), b(i));
    SparseMatrix<S> aug(m.rows(), m.cols() + 1);
    aug.setFromTriplets(trip.begin(), trip.end());
    auto res = rref(aug);
    Vector<S> x = Vector<S>::Zero(m.cols());
    for (Index col = 0; col < res.reduced.outerSize(); ++col)
        for (typename SparseMatrix<S>::InnerIterator it(res.reduced, col); it; ++it)
            if (it.col() == m.cols()) {
                const Index pc = res.pivots[size_t(it.row())];
                if (pc == m.cols())
                    return std::nullopt;
                x(pc) = it.value();
            }
    for (Index pc : res.pivots)
        if (pc == m.cols())
            return std::nullopt;
    return x;
}

template <class S>
bool Echelon<S>::reduce(Vector<S>& v) const
{
    for (size_t i = 0; i < rows_.size(); ++i) {
        const S c = v(pivots_[i]);
        if (c.is_zero())
            continue;
        const Vector<S>& r = rows_[i];
        for (Index j = pivots_[i]; j < length_; ++j)
            if (!r(j).is_zero())
                v(j) -= c * r(j);
    }
    for (Index j = 0; j < length_; ++j)
        if (!v(j).is_zero())
            return true;
    return false;
}

template <class S>
bool Echelon<S>::add(Vector<S> v)
{
    if (v.size() != length_)
        throw std::invalid_argument("Echelon::add: length mismatch");
    if (!reduce(v))
        return false;
    Index piv = 0;
    while (v(piv).is_zero())
        ++piv;
    v *= v(piv).inverse();
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

template <class S>
Matrix<S> Echelon<S>::basis() const
{
    Matrix<S> b(length_, Index(rows_.size()));
    for (size_t i = 0; i < rows_.size(); ++i)
        b.col(Index(i)) = rows_[i];
    return b;
}

template <class S>
Index MatrixFp<S>::rows() const
{
    return std::visit([](const auto& m) { return Index(m.rows()); }, data_);
}

template <class S>
Index MatrixFp<S>::cols() const
{
    return std::visit([](const auto& m) { return Index(m.cols()); }, data_);
}

template <class S>
Matrix<S> MatrixFp<S>::dense() const
{
    if (const auto* d = std::get_if<Matrix<S>>(&data_))
        return *d;
    return to_dense(std::get<SparseMatrix<S>>(data_));
}

template <class S>
SparseMatrix<S> MatrixFp<S>::sparse() const
{
    if (const auto* s = std::get_if<SparseMatrix<S>>(&data_))
        return *s;
    return to_sparse(std::get<Matrix<S>>(data_));
}

template <class S>
Index MatrixFp<S>::rank() const
{
    return std::visit([](const auto& m) { return twb::rank(m); }, data_);
}

template <class S>
Matrix<S> MatrixFp<S>::nullspace() const
{
    return std::visit([](const auto& m) { return twb::nullspace(m); }, data_);
}

namespace {
constexpr char matrix_magic[4] = {'T', 'W', 'B', 'M'};

template <class T>
void put(std::ostream& os, T v)
{
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is)
{
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is)
        throw std::runtime_error("matrix blob truncated");
    return v;
}
} // namespace

template <class S>
void write_matrix(std::ostream& os, const MatrixFp<S>& m)
{
    os.write(matrix_magic, 4);
    put<std::uint32_t>(os, matrix_blob_version);
    put<std::uint32_t>(os, S::modulus);
    put<std::uint64_t>(os, std::uint64_t(m.rows()));
    put<std::uint64_t>(os, std::uint64_t(m.cols()));
    put<std::uint8_t>(os, std::uint8_t(m.storage()));
    if (m.storage() == MatrixFp<S>::Storage::dense) {
        const Matrix<S> d = m.dense();
        for (Index j = 0; j < d.cols(); ++j)
            for (Index i = 0; i < d.rows(); ++i)
                put<std::uint8_t>(os, d(i, j).value());
    } else {
        SparseMatrix<S> s = m.sparse();
        s.makeCompressed();
        put<std::uint64_t>(os, std::uint64_t(s.nonZeros()));
        for (Index k = 0; k < s.outerSize(); ++k)
            for (typename SparseMatrix<S>::InnerIterator it(s, k); it; ++it) {
                put<std::uint32_t>(os, std::uint32_t(it.row()));
                put<std::uint32_t>(os, std::uint32_t(it.col()));
                put<std::uint8_t>(os, it.value().value());
            }
    }
}

template <class S>
MatrixFp<S> read_matrix(std::istream& is)
{
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != std::string(matrix_magic, 4))
        throw std::runtime_error("not a matrix blob");
    if (get<std::uint32_t>(is) != matrix_blob_version)
        throw std::runtime_error("unsupported matrix blob version");
    if (get<std::uint32_t>(is) != S::modulus)
        throw std::runtime_error("matrix blob has a different characteristic");
    const auto rows = Index(get<std::uint64_t>(is));
    const auto cols = Index(get<std::uint64_t>(is));
    const auto tag = get<std::uint8_t>(is);
    if (tag == 0) {
        Matrix<S> d(rows, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i)
                d(i, j) = S::from_rep(get<std::uint8_t>(is));
        return MatrixFp<S>(std::move(d));
    }
    if (tag != 1)
        throw std::runtime_error("unknown matrix storage tag");
    const auto nnz = get<std::uint64_t>(is);
    std::vector<Eigen::Triplet<S>> trip;
    trip.reserve(nnz);
    for (std::uint64_t k = 0; k < nnz; ++k) {
        const auto r = get<std::uint32_t>(is);
        const auto c = get<std::uint32_t>(is);
        trip.emplace_back(int(r), int(c), S::from_rep(get<std::uint8_t>(is)));
    }
    SparseMatrix<S> s(rows, cols);
    s.setFromTriplets(trip.begin(), trip.end());
    return MatrixFp<S>(std::move(s));
}

#define TWB_INSTANTIATE_LINALG(S)                                                         \
    template RrefResult<S> rref(const Matrix<S>&);                                        \
    template Index rank(const Matrix<S>&);                                                \
    template Matrix<S> nullspace(const Matrix<S>&);                                       \
    template std::optional<Vector<S>> solve(const Matrix<S>&, const Vector<S>&);          \
    template SparseRrefResult<S> rref(const SparseMatrix<S>&);                            \
    template Index rank(const SparseMatrix<S>&);                                          \
    template Matrix<S> nullspace(const SparseMatrix<S>&);                                 \
    template std::optional<Vector<S>> solve(const SparseMatrix<S>&, const Vector<S>&);    \
    template class Echelon<S>;                                                            \
    template class MatrixFp<S>;                                                           \
    template void write_matrix(std::ostream&, const MatrixFp<S>&);                        \
    template MatrixFp<S> read_matrix(std::istream&);

TWB_FOR_EACH_FIELD(TWB_INSTANTIATE_LINALG)

} // namespace twb
