#pragma once

// Schur superalgebras S(m|n, D) = Γ^D End(k^{m|n}), realized by signed
// monomial operators on (k^{m|n})^{⊗D}, and the twist pushforward
// S(m|n, d p^r) -> S(m, d).

#include "twb/combinatorics.hpp"
#include "twb/errors.hpp"
#include "twb/linalg.hpp"
#include "twb/supervec.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

namespace twb {

inline constexpr long long default_tensor_cap = 4096;

/// Sparse integer combination of basis elements.
using IntCoords = std::vector<std::pair<int, long long>>;

template <class S>
using SparseCoords = std::vector<std::pair<int, S>>;

class SchurSuperalgebra
{
public:
    /// One summand of a basis element: maps word `in` to word `out` with `sign`.
    struct Arrangement
    {
        int in;
        int out;
        int sign;
    };

    /// Throws ResourceExceeded when (m+n)^D exceeds `cap`.
    static std::shared_ptr<const SchurSuperalgebra> build(int m, int n, int D, int p, long long cap = default_tensor_cap);

    int m() const { return m_; }
    int n() const { return n_; }
    int letters() const { return m_ + n_; }
    int degree() const { return D_; }
    int characteristic() const { return p_; }
    bool classical() const { return n_ == 0; }
    Index dim() const { return Index(pairs_.size()); }
    const SuperSpace& space() const { return space_; }

    /// Pair codes i*N+j in canonical order (even pairs lexicographic, then odd pairs).
    const std::vector<int>& pairs(int k) const { return pairs_[size_t(k)]; }
    std::uint8_t parity(int k) const { return parity_[size_t(k)]; }
    int rowwt(int k) const { return rowwt_[size_t(k)]; }
    int colwt(int k) const { return colwt_[size_t(k)]; }
    const std::vector<Arrangement>& arrangements(int k) const { return arrangements_[size_t(k)]; }
    /// -1 if no basis element has these pairs (codes in any order).
    int index_of(std::vector<int> pair_codes) const;
    std::uint8_t pair_parity(int code) const;

    // weights
    const std::vector<Composition>& weights() const { return weights_; }
    int weight_count() const { return int(weights_.size()); }
    int weight_index(const Composition& c) const;
    int idempotent(int w) const { return idempotents_[size_t(w)]; }
    /// Basis elements with the given column weight.
    const std::vector<int>& column(int w) const { return columns_[size_t(w)]; }
    /// Basis elements in ξ_row A ξ_col.
    const std::vector<int>& block(int row, int col) const { return blocks_[size_t(row) * weights_.size() + size_t(col)]; }
    /// Position of basis element k inside column(colwt(k)).
    int column_position(int k) const { return column_pos_[size_t(k)]; }
    /// Weights whose support lies in the even letters.
    bool even_supported(int w) const;

    // words of the tensor realization
    int word_count() const { return word_count_; }
    int letter(int word, int pos) const { return word_letters_[size_t(word) * size_t(D_) + size_t(pos)]; }
    int encode(const std::vector<int>& letters) const;
    int word_weight(int word) const { return word_weight_[size_t(word)]; }
    /// (basis element, arrangement) pairs whose input is `word`.
    const std::vector<std::pair<int, int>>& arrangements_from(int word) const { return from_word_[size_t(word)]; }

    /// Basis element whose operator is supported at (out, in), or -1.
    int index_at(int out, int in) const;
    /// Sign of that basis element's operator at (out, in).
    int position_sign(int out, int in) const;
    /// Letterwise form of the same sign, for words given as letter lists.
    int sign_of_sequence(const std::vector<int>& out_letters, const std::vector<int>& in_letters,
                         const std::vector<std::uint8_t>& extra_parity = {}) const;

    /// Product of basis elements as integer coordinates (cached).
    const IntCoords& product(int a, int b) const;

    template <class S>
    SparseCoords<S> product_mod(int a, int b) const
    {
        SparseCoords<S> out;
        for (const auto& [k, c] : product(a, b)) {
            S v(c);
            if (!v.is_zero())
                out.emplace_back(k, v);
        }
        return out;
    }

    /// Product of general elements given as dense coordinate vectors.
    template <class S>
    Vector<S> multiply(const Vector<S>& x, const Vector<S>& y) const;

    template <class S>
    SparseMatrix<S> op(int k) const;
    template <class S>
    SparseMatrix<S> op(const Vector<S>& x) const;
    /// Coordinates of an operator in the span; CoordinateFailure otherwise.
    template <class S>
    Vector<S> coordinates(const SparseMatrix<S>& x) const;
    template <class S>
    Vector<S> unit() const;

    /// Rank of the basis operators as vectors (faithfulness certificate).
    Index operator_span_rank() const;

    /// Certified generating set: idempotents excluded, only non-diagonal generators.
    const std::vector<int>& generators() const { return generators_; }
    /// Dimension of the subalgebra generated by idempotents and generators() (mod p).
    Index generated_dimension() const { return generated_dim_; }

private:
    SchurSuperalgebra() = default;
    void enumerate_basis();
    void build_operators();
    void choose_generators();
    template <class S>
    void choose_generators_impl();

    int m_ = 0, n_ = 0, D_ = 0, p_ = 3;
    SuperSpace space_;
    std::vector<std::vector<int>> pairs_;
    std::vector<std::uint8_t> parity_;
    std::vector<int> rowwt_, colwt_;
    std::vector<std::vector<Arrangement>> arrangements_;
    std::unordered_map<std::uint64_t, int> index_;

    std::vector<Composition> weights_;
    std::unordered_map<std::uint64_t, int> weight_index_;
    std::vector<int> idempotents_;
    std::vector<std::vector<int>> columns_;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> column_pos_;

    int word_count_ = 0;
    std::vector<std::int8_t> word_letters_;
    std::vector<int> word_weight_;
    std::vector<std::vector<std::pair<int, int>>> from_word_;

    std::vector<int> generators_;
    Index generated_dim_ = 0;

    mutable std::mutex product_mutex_;
    mutable std::unordered_map<std::uint64_t, IntCoords> products_;
};

using AlgebraPtr = std::shared_ptr<const SchurSuperalgebra>;

/// Process-wide memoized build.
AlgebraPtr schur_algebra(int m, int n, int D, int p, long long cap = default_tensor_cap);

/// Closed-form dimension of S(m|n, D).
long long schur_dim(int m, int n, int D);

/// The algebra map ψ: S(m|n, d p^r) -> S(m, d) through which
/// F ↦ F(V_0^{(r)}) acts, for V_0^{(r)} the span of p^r-th powers in S^{p^r} V.
template <class S>
class TwistPushforward
{
public:
    /// `big` has degree d p^r; `small` is S(big.m(), d). Throws SubfunctorFailure / CoordinateFailure.
    TwistPushforward(AlgebraPtr big, AlgebraPtr small, int r);

    const SchurSuperalgebra& big() const { return *big_; }
    const AlgebraPtr& big_ptr() const { return big_; }
    const SchurSuperalgebra& small() const { return *small_; }
    int r() const { return r_; }
    int q() const { return q_; }

    const SparseCoords<S>& image(int k) const { return images_[size_t(k)]; }
    Vector<S> apply(const Vector<S>& x) const;
    /// Weight of the big algebra corresponding to a small weight (scaled by q, padded).
    int big_weight(int small_weight) const { return weight_map_[size_t(small_weight)]; }
    /// Rank of the image of ψ.
    Index image_rank() const;

private:
    AlgebraPtr big_, small_;
    int r_ = 0, q_ = 1;
    std::vector<SparseCoords<S>> images_;
    std::vector<int> weight_map_;
};

} // namespace twb
