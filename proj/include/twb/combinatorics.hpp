#pragma once

// Compositions, weights and graded dimension bookkeeping.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace twb {

/// C(n, k), with C(n, 0) = 1 for every n and 0 outside 0 <= k <= n.
long long binomial(long long n, long long k);
long long ipow(long long base, int exp);

/// Finitely supported sequence (λ_0, λ_1, ...). Indexing is 0-based.
struct Composition
{
    std::vector<int> parts;

    Composition() = default;
    explicit Composition(std::vector<int> p) : parts(std::move(p)) {}

    int degree() const;
    int operator[](size_t i) const { return i < parts.size() ? parts[i] : 0; }
    /// Drops trailing zeros.
    Composition trimmed() const;
    std::string str() const;

    friend bool operator==(const Composition& a, const Composition& b) { return a.trimmed().parts == b.trimmed().parts; }
    friend bool operator<(const Composition& a, const Composition& b) { return a.parts < b.parts; }
};

/// Λ(n, d) in reverse lexicographic order: (d,0,..,0) first.
std::vector<Composition> enumerate(int n, int d);

/// |λ| = Σ 2 i λ_i.
long long weight(const Composition& lambda);
/// ||λ|| = p^{2(r-1)} |λ|.
long long scaled_weight(const Composition& lambda, int p, int r);
/// λ_i = 0 for all i >= n.
bool is_bounded(const Composition& lambda, int n);

/// Λ(∞, d) restricted to weight <= max_weight (support automatically within [0, max_weight/2]).
std::vector<Composition> enumerate_infinite(int d, long long max_weight);

enum class Provenance : std::uint8_t { computed, assumed };
const char* to_string(Provenance p);

struct GradedDims
{
    std::map<int, long long> dims;
    std::map<int, Provenance> provenance;
    /// Entries above this degree are unknown (not zero).
    int max_degree = 0;

    long long at(int t) const;
    Provenance provenance_at(int t) const;
    bool any_assumed(int up_to) const;
    void set(int t, long long dim, Provenance p);
    std::vector<long long> as_vector(int up_to) const;
    long long total(int up_to) const;
};

/// Graded dims of E_r (classical) or the super Yoneda algebra, degrees 0..max_degree.
GradedDims yoneda_dims(int p, int r, bool super, int max_degree);

/// Degrees in which the homology engine backs yoneda_dims.
bool yoneda_entry_computed(int p, int r, int t);

} // namespace twb
