#pragma once

// Second page of the twisting spectral sequence and the verification suite.

#include "twb/homology.hpp"

#include <string>
#include <utility>
#include <vector>

namespace twb {

enum class Verdict : std::uint8_t { pass, fail, assumed_pass, data };
const char* to_string(Verdict v);

struct Check
{
    std::string id;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<long long> expected;
    std::vector<long long> computed;
    Verdict verdict = Verdict::fail;
    std::string note;
    double runtime = 0;

    bool gating() const { return verdict != Verdict::data; }
};

/// Pass when equal, assumed-pass when equal but resting on assumed data, fail otherwise.
Verdict compare(const std::vector<long long>& expected, const std::vector<long long>& computed, bool assumed = false);

struct VerificationReport
{
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    void add(std::vector<Check> cs)
    {
        for (auto& c : cs)
            checks.push_back(std::move(c));
    }
    bool ok() const;
    bool any_assumed() const;
};

struct GridEntry
{
    int s = 0;
    int t = 0;
    long long dim = 0;
    Provenance provenance = Provenance::computed;
};

struct SecondPageGrid
{
    std::string f, g;
    int p = 3, d = 1, r = 1, window = 0;
    std::vector<GridEntry> entries;
    /// Σ_{s+t=n} dim E_2^{s,t}, n = 0..window.
    std::vector<long long> column_sums;
    std::vector<Provenance> column_provenance;

    long long at(int s, int t) const;
    bool any_assumed() const;
};

/// E_2^{s,t} = Ext^s(F, (G_{E_bold_r})^t) for s + t <= window, computed over S(d, d).
/// `truncation` < 0 uses the window.
SecondPageGrid second_page(const ExprPtr& f, const ExprPtr& g, int p, int r, int window,
                           const ResolutionOptions& options = {}, int truncation = -1);

/// 2p^{2r-1}: the main theorem holds in degrees below this.
int main_window(int p, int r);

/// Abutment Ext^n(F_0^(r), G_0^(r)) over S(D|D, D), D = deg F · p^r; both parities.
ExtTable abutment(const ExprPtr& f, const ExprPtr& g, int p, int r, int window, const ResolutionOptions& options = {});
/// Whether the super side is within the desk-scale caps.
bool abutment_computable(const ExprPtr& f, int p, int r);

/// Main theorem: abutment equals column sums for n < 2p^{2r-1}, plus the degree-0 Hom identity.
std::vector<Check> verify_main_theorem(const ExprPtr& f, const ExprPtr& g, int p, int r, const ResolutionOptions& options = {});
/// Degrees 2p^{2r-1} .. 2p^{2r-1}+extra-1 as non-gating data.
Check probe_conjecture(const ExprPtr& f, const ExprPtr& g, int p, int r, int extra = 2,
                       const ResolutionOptions& options = {});

/// Ext^i(A ⊗ B, (S^d_V)_0^(r)) vanishing and factorization.
std::vector<Check> verify_fs_factorization(const ExprPtr& a, const ExprPtr& b, int v, int p, int r, int window,
                                           const ResolutionOptions& options = {});

/// Graded dims of S^d(U) for a graded even space U given by dims, degrees 0..window.
std::vector<long long> graded_sym_dims(const std::vector<long long>& u, int d, int window);

/// R^*ρ((S^d_V)_0^(r))(W) against S^d(E_bold_r ⊗ V ⊗ W).
Check verify_adjoint_sd(int v, int w, int p, int d, int r, int window, const ResolutionOptions& options = {});

/// res0 on Ext is an isomorphism in degrees t < 2p^r; both classical and super sides computed.
std::vector<Check> generic_window_check(const ExprPtr& f, const ExprPtr& g, int p, int r,
                                        const ResolutionOptions& options = {});

/// Module-level res0 identities over catalog functors of degree <= max_degree.
std::vector<Check> verify_lemmas(int p, int max_degree = 3);

/// dim Hom(Γ^{d,V}, F) = dim F(V), catalog F of degree <= max_degree, classical and super, dim V <= 2.
std::vector<Check> verify_yoneda(int p, int max_degree = 2);

/// yoneda_dims entries flagged computed agree with the homology engine.
Check verify_yoneda_backing(int p, int r, int max_degree, const ResolutionOptions& options = {});

/// Graded dims of E_bold_1^{(r-1)} ⊗ E_{r-1} against E_bold_r.
Check verify_yoneda_identity(int p, int r, int max_degree);

/// Column sums are unchanged when the parameter truncation is raised.
Check verify_truncation_stability(const ExprPtr& f, const ExprPtr& g, int p, int r, int window,
                                  const ResolutionOptions& options = {});

/// Ext(F, G) and Ext(G#, F#) agree, and dim F(V) = dim F#(V), catalog degree <= max_degree.
std::vector<Check> verify_kuhn_duality(int p, int max_degree = 2);

/// Ext^{>0} vanishes between catalog functors of degree d < p; trace form of S(d, d) nondegenerate.
std::vector<Check> verify_semisimplicity(int p, int window = 3);

/// Ext of I_0^(1) with itself over S(3|3, 3) is unchanged under a reseeded resolution.
Check verify_rerandomization(std::uint64_t seed, int window = 5);

} // namespace twb
