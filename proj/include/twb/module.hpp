#pragma once

// Finite-dimensional supermodules over a Schur superalgebra, given by a
// weight basis and lazily computed actions of basis elements.

#include "twb/schur_algebra.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

namespace twb {

template <class S>
class Module
{
public:
    using ActionFn = std::function<SparseMatrix<S>(int)>;

    Module(AlgebraPtr algebra, std::vector<int> weight, std::vector<std::uint8_t> parity, ActionFn action,
           std::vector<int> grading = {}, std::string name = {});

    const SchurSuperalgebra& algebra() const { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    Index dim() const { return Index(weight_.size()); }
    int weight(Index i) const { return weight_[size_t(i)]; }
    std::uint8_t parity(Index i) const { return parity_[size_t(i)]; }
    int degree(Index i) const { return grading_.empty() ? 0 : grading_[size_t(i)]; }
    bool graded() const { return !grading_.empty(); }
    const std::vector<int>& weights() const { return weight_; }
    const std::vector<std::uint8_t>& parities() const { return parity_; }
    const std::vector<int>& grading() const { return grading_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    /// Degrees above this are not exact (parameter truncation); -1 when unbounded.
    int truncation() const { return truncation_; }
    void set_truncation(int t) { truncation_ = t; }

    /// Action of basis element k as a dim x dim sparse matrix (cached).
    const SparseMatrix<S>& action(int k) const;
    /// Basis indices of weight w, optionally restricted to a parity.
    const std::vector<Index>& weight_space(int w) const { return spaces_[size_t(w)]; }
    std::vector<Index> weight_space(int w, std::uint8_t parity) const;

    /// Dense block of action(k) between weight spaces (rows: rowwt(k), cols: colwt(k)), given parity filters.
    Matrix<S> block(int k, const std::vector<Index>& rows, const std::vector<Index>& cols) const;

private:
    AlgebraPtr algebra_;
    std::vector<int> weight_;
    std::vector<std::uint8_t> parity_;
    std::vector<int> grading_;
    std::vector<std::vector<Index>> spaces_;
    ActionFn fn_;
    std::string name_;
    int truncation_ = -1;

    mutable std::mutex mutex_;
    mutable std::vector<std::unique_ptr<SparseMatrix<S>>> cache_;
};

template <class S>
using ModulePtr = std::shared_ptr<const Module<S>>;

/// ΠM: parity flipped, odd basis elements act with a sign.
template <class S>
ModulePtr<S> parity_shift(const ModulePtr<S>& m);

/// The degree-t part of a graded module (a submodule for the degree-0 algebra).
template <class S>
ModulePtr<S> graded_piece(const ModulePtr<S>& m, int t);

/// Submodule spanned by a subset of the basis (caller guarantees stability).
template <class S>
ModulePtr<S> basis_submodule(const ModulePtr<S>& m, const std::vector<Index>& keep, std::string name);

/// M ⊗ N over S(m|n, a+b) through the comultiplication.
template <class S>
ModulePtr<S> tensor_modules(const ModulePtr<S>& a, const ModulePtr<S>& b, const AlgebraPtr& target);

/// Module over the big algebra of ψ obtained from a module over the small one.
template <class S>
ModulePtr<S> pull_back(const ModulePtr<S>& m, const std::shared_ptr<const TwistPushforward<S>>& psi);

/// eM over S(m, D) for M over S(m|n, D), e the sum of idempotents of even-supported weights.
template <class S>
ModulePtr<S> restrict_even(const ModulePtr<S>& m, const AlgebraPtr& classical);

/// Basis index of the classical algebra element inside the super algebra with the same pairs.
std::vector<int> even_embedding(const SchurSuperalgebra& classical, const SchurSuperalgebra& super);

/// Memoized ψ.
template <class S>
std::shared_ptr<const TwistPushforward<S>> twist_pushforward(int m, int n, int d, int r, long long cap = default_tensor_cap);

/// Samples products a·b of basis elements and checks action(a)action(b) = action(ab).
template <class S>
bool check_module_relations(const Module<S>& m, int samples, std::mt19937_64& rng);

} // namespace twb
