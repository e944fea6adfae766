#pragma once

// Hom spaces, free resolutions over Schur superalgebras and Ext dimensions.

#include "twb/functor_catalog.hpp"
#include "twb/module.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twb {

template <class S>
using SparseVec = std::vector<std::pair<Index, S>>;

/// Dimensions of even and odd morphisms.
struct ParityDims
{
    long long even = 0;
    long long odd = 0;
    long long total() const { return even + odd; }
};

/// Even intertwiners M -> N as matrices (dim N x dim M).
template <class S>
std::vector<Matrix<S>> hom_basis(const Module<S>& m, const Module<S>& n);
/// dims of even and odd intertwiners.
template <class S>
ParityDims hom_dims(const ModulePtr<S>& m, const ModulePtr<S>& n);
/// Reference solver without weight blocking (small modules only).
template <class S>
long long hom_dim_unblocked(const Module<S>& m, const Module<S>& n);

/// ⊕_j A g_j with g_j homogeneous of weight weight[j] and parity parity[j].
/// Basis: (j, c) for c in column(weight[j]), ordered by j then column position.
template <class S>
class FreeModule
{
public:
    FreeModule() = default;
    FreeModule(AlgebraPtr algebra, std::vector<int> weight, std::vector<std::uint8_t> parity);

    const SchurSuperalgebra& algebra() const { return *algebra_; }
    int rank() const { return int(weight_.size()); }
    Index dim() const { return dim_; }
    int generator_weight(int j) const { return weight_[size_t(j)]; }
    std::uint8_t generator_parity(int j) const { return parity_[size_t(j)]; }
    const std::vector<int>& generator_weights() const { return weight_; }
    const std::vector<std::uint8_t>& generator_parities() const { return parity_; }

    Index index(int j, int c) const { return offset_[size_t(j)] + algebra_->column_position(c); }
    /// (generator, algebra basis element) of a basis index.
    std::pair<int, int> decode(Index i) const { return {gen_[size_t(i)], elem_[size_t(i)]}; }
    int weight(Index i) const { return algebra_->rowwt(elem_[size_t(i)]); }
    std::uint8_t parity(Index i) const { return std::uint8_t(algebra_->parity(elem_[size_t(i)]) ^ parity_[size_t(gen_[size_t(i)])]); }

    /// b · v.
    SparseVec<S> apply(int b, const SparseVec<S>& v) const;

private:
    AlgebraPtr algebra_;
    std::vector<int> weight_;
    std::vector<std::uint8_t> parity_;
    std::vector<Index> offset_;
    std::vector<int> gen_, elem_;
    Index dim_ = 0;
};

struct ResolutionOptions
{
    /// 0: deterministic first-fit generators; otherwise random combinations from this seed.
    std::uint64_t seed = 0;
    /// Drop redundant generators after each stage.
    bool prune = true;
    /// ResourceExceeded when a term exceeds this dimension.
    long long max_term_dim = 400000;
    /// Directory for cached resolutions; empty disables the disk cache.
    std::string cache_dir;
};

template <class S>
struct Resolution
{
    ModulePtr<S> module;
    /// P_0 .. P_L.
    std::vector<FreeModule<S>> terms;
    /// images[i][l]: d_i(g_l), in P_{i-1} for i > 0 and in the module for i = 0.
    std::vector<std::vector<SparseVec<S>>> images;
    /// Per stage: d∘d = 0 on generators and the kernel is spanned (ranks compared).
    std::vector<bool> exact;
    /// Dimension of ker d_i per stage.
    std::vector<long long> kernel_dims;
    bool from_cache = false;

    int length() const { return int(terms.size()) - 1; }
    bool certified() const;
};

/// Free resolution P_0..P_length of M.
template <class S>
Resolution<S> free_resolution(const ModulePtr<S>& m, int length, const ResolutionOptions& options = {});

/// The coboundary Hom(P_i, N) -> Hom(P_{i+1}, N) on even maps, in generator-value coordinates.
template <class S>
SparseMatrix<S> coboundary(const Resolution<S>& p, const Module<S>& n, int i);
/// Coordinates of C^i: (generator, basis index of N) pairs.
template <class S>
std::vector<std::pair<int, Index>> cochain_basis(const Resolution<S>& p, const Module<S>& n, int i);

struct ExtTable
{
    /// Ext of even maps to N and to ΠN, degrees 0..window.
    std::vector<long long> even, odd;
    std::vector<long long> full() const;
};

/// Ext^i_A(M, N), i = 0..window (needs a resolution of length window + 1).
template <class S>
ExtTable ext_dims(const Resolution<S>& p, const ModulePtr<S>& n, int window);

/// Convenience: evaluate F and G at k^{m|n} and compute Ext over S(m|n, deg).
template <class S>
ExtTable ext_dims(const ExprPtr& f, const ExprPtr& g, int m, int n, int window, const ResolutionOptions& options = {},
                  long long cap = default_tensor_cap);

/// Process-wide resolution cache keyed by expression, evaluation space, length and seed.
template <class S>
std::shared_ptr<const Resolution<S>> cached_resolution(const ExprPtr& f, int m, int n, int length,
                                                       const ResolutionOptions& options = {},
                                                       long long cap = default_tensor_cap);

/// Ranks of Ext_A(M, N) -> Ext_{eAe}(eM, eN), e the even-supported idempotent, degrees 0..window.
/// `parity_shifted` uses ΠN.
template <class S>
std::vector<long long> res0_ext_ranks(const Resolution<S>& p, const ModulePtr<S>& n, int window, bool parity_shifted,
                                      const ResolutionOptions& options = {});

/// Ext^t((Γ^{d,V})_0^(r), G_0^(r)), t = 0..window, full (both parities); V = k^v.
template <class S>
std::vector<long long> derived_adjoint_dims(const ExprPtr& g, int r, int v, int window, const ResolutionOptions& options = {},
                                            long long cap = default_tensor_cap);

/// dim Hom(Γ^{d,V}(W), F(W)) == dim F(V), W = k^{d|d} (super) or k^d.
template <class S>
bool yoneda_check(const ExprPtr& f, int vm, int vn, bool super, long long cap = default_tensor_cap);

/// The trace form of the tensor-space representation is nondegenerate (hence the algebra is semisimple).
template <class S>
bool trace_form_nondegenerate(const SchurSuperalgebra& a);

/// Content hash of a module (weights, parities, grading and generator actions).
template <class S>
std::string module_hash(const Module<S>& m);

} // namespace twb
