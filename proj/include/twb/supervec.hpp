#pragma once

// Z/2-graded vector spaces with ordered bases, and the monomial bases of
// their divided, symmetric, exterior and tensor powers.

#include "twb/linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace twb {

struct SuperSpace
{
    std::vector<std::string> labels;
    std::vector<std::uint8_t> parity;
    /// Optional grading (parameter spaces); empty means concentrated in degree 0.
    std::vector<int> degree;
    /// Frobenius twist bookkeeping: V^(r) has the same basis.
    int twist = 0;

    /// k^{m|n}: m even vectors e0.. followed by n odd vectors.
    static SuperSpace standard(int m, int n, const std::string& prefix = "e");
    /// Graded even space with dims[t] basis vectors in degree t.
    static SuperSpace graded(const std::vector<long long>& dims, const std::string& prefix = "u");

    int dim() const { return int(parity.size()); }
    int even_dim() const;
    int odd_dim() const { return dim() - even_dim(); }
    int degree_of(int i) const { return degree.empty() ? 0 : degree[size_t(i)]; }
    bool is_graded() const;

    /// Position of basis vector i in the canonical order (even before odd, then by index).
    std::vector<int> canonical_rank() const;

    friend bool operator==(const SuperSpace&, const SuperSpace&) = default;
};

/// Koszul sign for moving y past x.
inline int swap_sign(std::uint8_t px, std::uint8_t py) { return (px & py) ? -1 : 1; }

/// Basis (u, v) in u-major order; parity and degree add.
SuperSpace tensor(const SuperSpace& u, const SuperSpace& v);
/// Index of (i, j) in tensor(u, v).
inline int tensor_index(const SuperSpace& /*u*/, const SuperSpace& v, int i, int j) { return i * v.dim() + j; }
SuperSpace dual(const SuperSpace& v);
SuperSpace twist_space(const SuperSpace& v, int r);
SuperSpace even_part(const SuperSpace& v);

/// f^(r): entries raised to the p^r-th power.
template <class S>
Matrix<S> twist_map(const Matrix<S>& f, int r)
{
    unsigned long long q = 1;
    for (int i = 0; i < r; ++i)
        q *= S::modulus;
    return f.unaryExpr([q](const S& x) { return x.pow(q); });
}

enum class PowerKind : std::uint8_t { gamma, sym, ext, tensor };

const char* to_string(PowerKind k);

/// Sorts `letters` into canonical order and returns the Koszul sign (odd-odd inversions).
int koszul_sort(std::vector<int>& letters, const SuperSpace& v);
/// Sign of the symmetric-group permutation sorting `letters` (all inversions).
int permutation_sort_sign(std::vector<int> letters, const std::vector<int>& rank);

struct MonomialBasis
{
    PowerKind kind = PowerKind::tensor;
    int degree = 0;
    SuperSpace space;
    /// Letters in canonical order (for `tensor`: arbitrary words).
    std::vector<std::vector<int>> monomials;
    std::vector<std::uint8_t> parity;
    std::vector<int> grading;

    Index size() const { return Index(monomials.size()); }
    /// -1 when `letters` is not a basis monomial.
    Index index_of(const std::vector<int>& letters) const;

    std::map<std::vector<int>, Index> lookup;
};

MonomialBasis build_power(PowerKind kind, const SuperSpace& v, int d);

/// Closed-form dimension of the power functor at k^{m|n}.
long long power_dim(PowerKind kind, int m, int n, int d);

/// Multiplicity rule: can letter `x` (of the given parity) repeat in a monomial of this kind?
inline bool may_repeat(PowerKind kind, std::uint8_t parity)
{
    switch (kind) {
    case PowerKind::gamma:
    case PowerKind::sym:
        return parity == 0;
    case PowerKind::ext:
        return parity == 1;
    case PowerKind::tensor:
        return true;
    }
    return true;
}

} // namespace twb
