#include "twb/functor_catalog.hpp"

#include <map>
#include <numeric>

namespace twb {

namespace {

inline constexpr long long max_module_dim = 200000;

struct Block
{
    PowerKind kind;
    int degree;
};

// Tensor products of power functors evaluated at L = U ⊗ V, realized inside L^{⊗D}.
class Realization
{
public:
    Realization(AlgebraPtr A, SuperSpace U, std::vector<Block> blocks)
        : A_(std::move(A)), U_(std::move(U)), blocks_(std::move(blocks))
    {
        dimV_ = A_->letters();
        L_ = tensor(U_, A_->space());
        rank_ = L_.canonical_rank();
        D_ = 0;
        for (const auto& b : blocks_) {
            bases_.push_back(build_power(b.kind, L_, b.degree));
            D_ += b.degree;
        }
        if (D_ != A_->degree())
            throw std::logic_error("realization degree mismatch");
        long long total = 1;
        for (const auto& b : bases_) {
            total *= b.size();
            if (total > max_module_dim)
                throw ResourceExceeded("evaluate", "module dimension exceeds " + std::to_string(max_module_dim));
        }
        dim_ = Index(total);
        u_even_ = U_.odd_dim() == 0;
        strides_.assign(bases_.size(), 0);
        Index s = 1;
        for (size_t i = bases_.size(); i-- > 0;) {
            strides_[i] = s;
            s *= bases_[i].size();
        }
    }

    Index dim() const { return dim_; }
    const SuperSpace& space() const { return L_; }
    const AlgebraPtr& algebra() const { return A_; }
    int word_length() const { return D_; }

    std::vector<Index> digits(Index x) const
    {
        std::vector<Index> d(bases_.size());
        for (size_t i = 0; i < bases_.size(); ++i) {
            d[i] = x / strides_[i];
            x %= strides_[i];
        }
        return d;
    }

    std::vector<int> letters(Index x) const
    {
        std::vector<int> w;
        const auto d = digits(x);
        for (size_t i = 0; i < bases_.size(); ++i) {
            const auto& m = bases_[i].monomials[size_t(d[i])];
            w.insert(w.end(), m.begin(), m.end());
        }
        return w;
    }

    void basis_data(std::vector<int>& weight, std::vector<std::uint8_t>& parity, std::vector<int>& grading) const
    {
        for (Index x = 0; x < dim_; ++x) {
            const auto w = letters(x);
            std::vector<int> content(size_t(dimV_), 0);
            std::uint8_t par = 0;
            int deg = 0;
            for (int l : w) {
                ++content[size_t(l % dimV_)];
                par ^= L_.parity[size_t(l)];
                deg += L_.degree_of(l);
            }
            weight.push_back(A_->weight_index(Composition(content)));
            parity.push_back(par);
            grading.push_back(deg);
        }
    }

    /// Words of the section of basis vector x: orbit sums for divided powers and, with
    /// `ext_orbits`, sign-twisted orbit sums for exterior powers.
    std::vector<std::pair<std::vector<int>, int>> section(Index x, bool ext_orbits = false) const
    {
        std::vector<std::pair<std::vector<int>, int>> acc{{{}, 1}};
        const auto d = digits(x);
        for (size_t i = 0; i < bases_.size(); ++i) {
            const auto& mono = bases_[i].monomials[size_t(d[i])];
            std::vector<std::pair<std::vector<int>, int>> piece;
            const bool twisted = bases_[i].kind == PowerKind::ext;
            if (bases_[i].kind == PowerKind::gamma || (twisted && ext_orbits)) {
                // distinct rearrangements, through the canonical ranks
                std::vector<int> by_rank(mono.size());
                for (size_t k = 0; k < mono.size(); ++k)
                    by_rank[k] = rank_[size_t(mono[k])];
                std::sort(by_rank.begin(), by_rank.end());
                std::vector<int> of_rank(size_t(L_.dim()));
                for (int l = 0; l < L_.dim(); ++l)
                    of_rank[size_t(rank_[size_t(l)])] = l;
                do {
                    std::vector<int> word;
                    for (int r : by_rank)
                        word.push_back(of_rank[size_t(r)]);
                    std::vector<int> tmp = word;
                    int sign = koszul_sort(tmp, L_);
                    if (twisted)
                        sign *= permutation_sort_sign(word, rank_);
                    piece.emplace_back(word, sign);
                } while (std::next_permutation(by_rank.begin(), by_rank.end()));
            } else {
                piece.emplace_back(mono, 1);
            }
            std::vector<std::pair<std::vector<int>, int>> next;
            for (const auto& [a, sa] : acc)
                for (const auto& [b, sb] : piece) {
                    std::vector<int> w = a;
                    w.insert(w.end(), b.begin(), b.end());
                    next.emplace_back(std::move(w), sa * sb);
                }
            acc = std::move(next);
        }
        return acc;
    }

    /// Coordinate of a word under the projection to this product: (index, sign) or index -1.
    std::pair<Index, int> retract(const std::vector<int>& word) const
    {
        Index idx = 0;
        int sign = 1;
        size_t pos = 0;
        for (size_t i = 0; i < bases_.size(); ++i) {
            const int a = blocks_[i].degree;
            std::vector<int> w(word.begin() + long(pos), word.begin() + long(pos) + a);
            pos += size_t(a);
            Index j = -1;
            switch (blocks_[i].kind) {
            case PowerKind::tensor:
                j = bases_[i].index_of(w);
                break;
            case PowerKind::gamma:
                for (size_t k = 1; k < w.size(); ++k)
                    if (rank_[size_t(w[k - 1])] > rank_[size_t(w[k])])
                        return {-1, 0};
                j = bases_[i].index_of(w);
                break;
            case PowerKind::sym:
                sign *= koszul_sort(w, L_);
                j = bases_[i].index_of(w);
                break;
            case PowerKind::ext:
                sign *= permutation_sort_sign(w, rank_);
                sign *= koszul_sort(w, L_);
                j = bases_[i].index_of(w);
                break;
            }
            if (j < 0)
                return {-1, 0};
            idx += j * strides_[i];
        }
        return {idx, sign};
    }

    /// Sign of applying the arrangement (in -> out) to a word whose U-letters are `u`.
    int apply_sign(const std::vector<int>& out, const std::vector<int>& in, const std::vector<std::uint8_t>& upar,
                   int stored) const
    {
        if (u_even_)
            return stored;
        return A_->sign_of_sequence(out, in, upar);
    }

    /// Action of algebra element k on a list of (column, word, coefficient) entries, indexed by V-word.
    struct Entry
    {
        Index column;
        std::vector<int> u;
        int coeff;
    };

    std::vector<std::vector<Entry>> index_sections(const std::vector<std::vector<std::pair<std::vector<int>, int>>>& sections) const
    {
        std::vector<std::vector<Entry>> by_word(size_t(A_->word_count()));
        for (size_t x = 0; x < sections.size(); ++x)
            for (const auto& [w, c] : sections[x]) {
                std::vector<int> v(w.size()), u(w.size());
                for (size_t l = 0; l < w.size(); ++l) {
                    v[l] = w[l] % dimV_;
                    u[l] = w[l] / dimV_;
                }
                by_word[size_t(A_->encode(v))].push_back(Entry{Index(x), std::move(u), c});
            }
        return by_word;
    }

    /// Matrix of k on the tensor words, followed by `project` (word -> (index, sign)).
    template <class S, class Project>
    SparseMatrix<S> act(int k, const std::vector<std::vector<Entry>>& by_word, Index rows, Index cols,
                        const Project& project) const
    {
        std::vector<Eigen::Triplet<S>> trip;
        std::vector<int> in(static_cast<size_t>(D_)), out(static_cast<size_t>(D_)), word(static_cast<size_t>(D_));
        std::vector<std::uint8_t> upar(static_cast<size_t>(D_));
        for (const auto& arr : A_->arrangements(k)) {
            const auto& entries = by_word[size_t(arr.in)];
            if (entries.empty())
                continue;
            for (int l = 0; l < D_; ++l) {
                in[size_t(l)] = A_->letter(arr.in, l);
                out[size_t(l)] = A_->letter(arr.out, l);
            }
            for (const auto& e : entries) {
                for (int l = 0; l < D_; ++l) {
                    word[size_t(l)] = e.u[size_t(l)] * dimV_ + out[size_t(l)];
                    upar[size_t(l)] = U_.parity[size_t(e.u[size_t(l)])];
                }
                const int s = apply_sign(out, in, upar, arr.sign);
                const auto [row, t] = project(word);
                if (row < 0)
                    continue;
                trip.emplace_back(int(row), int(e.column), sign_scalar<S>(s * t * e.coeff));
            }
        }
        SparseMatrix<S> m(rows, cols);
        m.setFromTriplets(trip.begin(), trip.end());
        return m;
    }

    int dimV() const { return dimV_; }

private:
    AlgebraPtr A_;
    SuperSpace U_, L_;
    std::vector<Block> blocks_;
    std::vector<MonomialBasis> bases_;
    std::vector<Index> strides_;
    std::vector<int> rank_;
    int dimV_ = 0, D_ = 0;
    Index dim_ = 0;
    bool u_even_ = true;
};

SuperSpace param_space(const ParamSpec& spec, int p)
{
    return spec.to_space(p);
}

template <class S>
ModulePtr<S> realize_product(const AlgebraPtr& A, const ParamSpec& spec, const std::vector<Block>& blocks,
                             const std::string& name)
{
    const int p = A->characteristic();
    auto R = std::make_shared<Realization>(A, param_space(spec, p), blocks);
    std::vector<int> weight, grading;
    std::vector<std::uint8_t> parity;
    R->basis_data(weight, parity, grading);
    std::vector<std::vector<std::pair<std::vector<int>, int>>> sections;
    for (Index x = 0; x < R->dim(); ++x)
        sections.push_back(R->section(x));
    auto by_word = std::make_shared<std::vector<std::vector<Realization::Entry>>>(R->index_sections(sections));
    auto fn = [R, by_word](int k) -> SparseMatrix<S> {
        return R->template act<S>(k, *by_word, R->dim(), R->dim(),
                                  [&R](const std::vector<int>& w) { return R->retract(w); });
    };
    const bool graded = std::any_of(grading.begin(), grading.end(), [](int t) { return t != 0; }) ||
                        spec.truncation() >= 0;
    auto out = std::make_shared<Module<S>>(A, std::move(weight), std::move(parity), fn,
                                           graded ? std::move(grading) : std::vector<int>{}, name);
    out->set_truncation(spec.truncation());
    return out;
}

// The image of a linear map between realizations that commutes with the action, as a module.
template <class S>
ModulePtr<S> image_module(const ModulePtr<S>& target, const SparseMatrix<S>& map, const std::string& name)
{
    const Index T = target->dim();
    // blocks of the target by (weight, parity, degree)
    std::map<std::tuple<int, int, int>, std::vector<Index>> blocks;
    for (Index i = 0; i < T; ++i)
        blocks[{target->weight(i), target->parity(i), target->degree(i)}].push_back(i);
    std::map<std::tuple<int, int, int>, std::vector<Index>> sources;
    {
        // columns grouped by the block of their (nonzero) image
        for (Index j = 0; j < map.cols(); ++j) {
            typename SparseMatrix<S>::InnerIterator it(map, j);
            if (!it)
                continue;
            const Index r = it.row();
            sources[{target->weight(r), target->parity(r), target->degree(r)}].push_back(j);
        }
    }
    auto basis = std::make_shared<std::vector<std::vector<std::pair<Index, S>>>>();
    auto pivot_of = std::make_shared<std::vector<Index>>(size_t(T), -1);
    std::vector<int> weight, grading;
    std::vector<std::uint8_t> parity;
    for (const auto& [key, cols] : sources) {
        const auto& rows = blocks.at(key);
        std::vector<Index> pos(size_t(T), -1);
        for (size_t i = 0; i < rows.size(); ++i)
            pos[size_t(rows[i])] = Index(i);
        Matrix<S> mt = Matrix<S>::Zero(Index(cols.size()), Index(rows.size()));
        for (size_t c = 0; c < cols.size(); ++c)
            for (typename SparseMatrix<S>::InnerIterator it(map, cols[c]); it; ++it) {
                if (pos[size_t(it.row())] < 0)
                    throw std::logic_error("image map does not preserve weight blocks");
                mt(Index(c), pos[size_t(it.row())]) = it.value();
            }
        const auto rr = rref(mt);
        for (size_t i = 0; i < rr.pivots.size(); ++i) {
            std::vector<std::pair<Index, S>> v;
            for (Index c = 0; c < Index(rows.size()); ++c)
                if (!rr.reduced(Index(i), c).is_zero())
                    v.emplace_back(rows[size_t(c)], rr.reduced(Index(i), c));
            (*pivot_of)[size_t(rows[size_t(rr.pivots[i])])] = Index(basis->size());
            basis->push_back(std::move(v));
            weight.push_back(std::get<0>(key));
            parity.push_back(std::uint8_t(std::get<1>(key)));
            grading.push_back(std::get<2>(key));
        }
    }
    const Index r = Index(basis->size());
    auto fn = [target, basis, pivot_of, r](int k) -> SparseMatrix<S> {
        const SparseMatrix<S>& a = target->action(k);
        std::vector<Eigen::Triplet<S>> trip;
        Vector<S> y = Vector<S>::Zero(a.rows());
        for (Index j = 0; j < r; ++j) {
            y.setZero();
            for (const auto& [i, v] : (*basis)[size_t(j)])
                for (typename SparseMatrix<S>::InnerIterator it(a, i); it; ++it)
                    y(it.row()) += it.value() * v;
            // read coordinates at pivots, then check the remainder vanishes
            Vector<S> rem = y;
            for (Index i = 0; i < y.size(); ++i) {
                const Index b = (*pivot_of)[size_t(i)];
                if (b < 0 || y(i).is_zero())
                    continue;
                const S c = y(i);
                trip.emplace_back(int(b), int(j), c);
                for (const auto& [t, v] : (*basis)[size_t(b)])
                    rem(t) -= c * v;
            }
            if (!is_zero(Matrix<S>(rem)))
                throw SubfunctorFailure("image is not stable under the action");
        }
        SparseMatrix<S> m(r, r);
        m.setFromTriplets(trip.begin(), trip.end());
        return m;
    };
    const bool graded = target->graded();
    auto out = std::make_shared<Module<S>>(target->algebra_ptr(), std::move(weight), std::move(parity), fn,
                                           graded ? std::move(grading) : std::vector<int>{}, name);
    out->set_truncation(target->truncation());
    return out;
}

std::vector<int> conjugate(const std::vector<int>& lambda)
{
    std::vector<int> c;
    for (int j = 0; j < lambda.front(); ++j) {
        int x = 0;
        for (int l : lambda)
            x += l > j;
        c.push_back(x);
    }
    return c;
}

// position of cell (i, j) in row reading and in column reading
std::vector<int> row_to_column(const std::vector<int>& lambda)
{
    const auto conj = conjugate(lambda);
    std::vector<int> perm;
    for (size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) {
            int c = 0;
            for (int jj = 0; jj < j; ++jj)
                c += conj[size_t(jj)];
            perm.push_back(c + int(i));
        }
    return perm;
}

// Rearranges word positions: out[perm[i]] = w[i], with the Koszul sign.
int permute_word(const std::vector<int>& w, const std::vector<int>& perm, const SuperSpace& L, std::vector<int>& out)
{
    out.assign(w.size(), 0);
    int sign = 1;
    for (size_t i = 0; i < w.size(); ++i) {
        out[size_t(perm[i])] = w[i];
        for (size_t j = i + 1; j < w.size(); ++j)
            if (perm[i] > perm[j] && L.parity[size_t(w[i])] && L.parity[size_t(w[j])])
                sign = -sign;
    }
    return sign;
}

template <class S>
ModulePtr<S> realize_young(const AlgebraPtr& A, const ParamSpec& spec, bool weyl, const std::vector<int>& lambda,
                           const std::string& name)
{
    const int p = A->characteristic();
    const SuperSpace U = param_space(spec, p);
    const auto conj = conjugate(lambda);
    std::vector<Block> rows_gamma, rows_sym, cols_ext;
    for (int l : lambda) {
        rows_gamma.push_back({PowerKind::gamma, l});
        rows_sym.push_back({PowerKind::sym, l});
    }
    for (int c : conj)
        cols_ext.push_back({PowerKind::ext, c});
    auto perm = row_to_column(lambda);
    std::vector<int> inverse(perm.size());
    for (size_t i = 0; i < perm.size(); ++i)
        inverse[size_t(perm[i])] = int(i);

    Realization source(A, U, weyl ? rows_gamma : cols_ext);
    ModulePtr<S> target = realize_product<S>(A, spec, weyl ? cols_ext : rows_sym, name + ":target");
    Realization tgt(A, U, weyl ? cols_ext : rows_sym);
    const SuperSpace& L = source.space();

    std::vector<Eigen::Triplet<S>> trip;
    for (Index x = 0; x < source.dim(); ++x) {
        const auto words = source.section(x, true);
        std::map<Index, long long> col;
        for (const auto& [w, s] : words) {
            std::vector<int> moved;
            const int ps = permute_word(w, weyl ? perm : inverse, L, moved);
            const auto [row, t] = tgt.retract(moved);
            if (row >= 0)
                col[row] += s * ps * t;
        }
        for (const auto& [row, v] : col) {
            S c(v);
            if (!c.is_zero())
                trip.emplace_back(int(row), int(x), c);
        }
    }
    SparseMatrix<S> map(target->dim(), source.dim());
    map.setFromTriplets(trip.begin(), trip.end());
    return image_module<S>(target, map, name);
}

template <class S>
ModulePtr<S> constant_module(const AlgebraPtr& A)
{
    auto fn = [](int) -> SparseMatrix<S> {
        SparseMatrix<S> m(1, 1);
        m.insert(0, 0) = S(1);
        return m;
    };
    return std::make_shared<Module<S>>(A, std::vector<int>{0}, std::vector<std::uint8_t>{0}, fn, std::vector<int>{}, "k");
}

template <class S>
ModulePtr<S> eval(const ExprPtr& f, int m, int n, long long cap);

// A leaf that the realization handles directly: power, or param(power), or weyl/schur (possibly parametrized).
bool is_leaf(const ExprPtr& f, ParamSpec& spec, ExprPtr& core)
{
    spec = ParamSpec{};
    core = f;
    if (f->kind == ExprKind::param) {
        spec = f->param;
        core = f->children[0];
    }
    return core->kind == ExprKind::power || core->kind == ExprKind::weyl || core->kind == ExprKind::schur;
}

template <class S>
ModulePtr<S> eval_tensor(const std::vector<ExprPtr>& factors, int m, int n, long long cap)
{
    const int p = int(S::modulus);
    ModulePtr<S> acc;
    int acc_degree = 0;
    auto fold = [&](ModulePtr<S> x, int d) {
        if (!acc) {
            acc = std::move(x);
            acc_degree = d;
            return;
        }
        acc_degree += d;
        acc = tensor_modules<S>(acc, x, schur_algebra(m, n, acc_degree, p, cap));
    };
    size_t i = 0;
    while (i < factors.size()) {
        ParamSpec spec;
        ExprPtr core;
        if (is_leaf(factors[i], spec, core) && core->kind == ExprKind::power) {
            // group consecutive power factors sharing the parameter
            std::vector<Block> blocks;
            std::string name;
            int d = 0;
            size_t j = i;
            while (j < factors.size()) {
                ParamSpec s2;
                ExprPtr c2;
                if (!is_leaf(factors[j], s2, c2) || c2->kind != ExprKind::power || !(s2 == spec))
                    break;
                blocks.push_back({c2->power, c2->a});
                d += c2->a;
                name += (name.empty() ? "" : "*") + to_string(factors[j]);
                ++j;
            }
            fold(realize_product<S>(schur_algebra(m, n, d, p, cap), spec, blocks, name), d);
            i = j;
        } else {
            fold(eval<S>(factors[i], m, n, cap), degree(factors[i], p));
            ++i;
        }
    }
    return acc;
}

template <class S>
ModulePtr<S> eval(const ExprPtr& f, int m, int n, long long cap)
{
    const int p = int(S::modulus);
    const int D = degree(f, p);
    if (D == 0)
        return constant_module<S>(schur_algebra(m, n, 0, p, cap));
    ParamSpec spec;
    ExprPtr core;
    if (is_leaf(f, spec, core)) {
        const AlgebraPtr A = schur_algebra(m, n, D, p, cap);
        if (core->kind == ExprKind::power)
            return realize_product<S>(A, spec, {{core->power, core->a}}, to_string(f));
        return realize_young<S>(A, spec, core->kind == ExprKind::weyl, core->partition, to_string(f));
    }
    switch (f->kind) {
    case ExprKind::tensor:
        return eval_tensor<S>(f->children, m, n, cap);
    case ExprKind::twist0:
    case ExprKind::twist: {
        if (f->kind == ExprKind::twist && n != 0)
            throw UnsupportedExpr("the classical twist is evaluated on purely even spaces only");
        const ExprPtr& inner = f->children[0];
        const int d = degree(inner, p);
        auto psi = twist_pushforward<S>(m, n, d, f->r, cap);
        ModulePtr<S> base = eval<S>(inner, m, 0, cap);
        auto out = pull_back<S>(base, psi);
        return out;
    }
    default:
        break;
    }
    throw UnsupportedExpr("cannot evaluate " + to_string(f));
}

} // namespace

template <class S>
ModulePtr<S> evaluate(const ExprPtr& f, int m, int n, long long cap)
{
    const ExprPtr g = normalize(f);
    auto out = eval<S>(g, m, n, cap);
    auto named = std::const_pointer_cast<Module<S>>(out);
    named->set_name(to_string(g));
    return out;
}

#define TWB_INSTANTIATE_EVAL(S) template ModulePtr<S> evaluate<S>(const ExprPtr&, int, int, long long);
TWB_FOR_EACH_FIELD(TWB_INSTANTIATE_EVAL)

} // namespace twb
