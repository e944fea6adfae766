#include "twb/module.hpp"

#include <map>
#include <stdexcept>

namespace twb {

template <class S>
Module<S>::Module(AlgebraPtr algebra, std::vector<int> weight, std::vector<std::uint8_t> parity, ActionFn action,
                  std::vector<int> grading, std::string name)
    : algebra_(std::move(algebra)), weight_(std::move(weight)), parity_(std::move(parity)), grading_(std::move(grading)),
      fn_(std::move(action)), name_(std::move(name))
{
    if (parity_.size() != weight_.size() || (!grading_.empty() && grading_.size() != weight_.size()))
        throw std::invalid_argument("module: inconsistent basis data");
    spaces_.assign(size_t(algebra_->weight_count()), {});
    for (size_t i = 0; i < weight_.size(); ++i)
        spaces_[size_t(weight_[i])].push_back(Index(i));
    cache_.resize(size_t(algebra_->dim()));
}

template <class S>
const SparseMatrix<S>& Module<S>::action(int k) const
{
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = cache_[size_t(k)];
    if (!slot) {
        SparseMatrix<S> a = fn_(k);
        if (a.rows() != dim() || a.cols() != dim())
            throw std::logic_error("module action has the wrong shape");
        prune_zeros(a);
        a.makeCompressed();
        slot = std::make_unique<SparseMatrix<S>>(std::move(a));
    }
    return *slot;
}

template <class S>
std::vector<Index> Module<S>::weight_space(int w, std::uint8_t parity) const
{
    std::vector<Index> out;
    for (Index i : spaces_[size_t(w)])
        if (parity_[size_t(i)] == parity)
            out.push_back(i);
    return out;
}

template <class S>
Matrix<S> Module<S>::block(int k, const std::vector<Index>& rows, const std::vector<Index>& cols) const
{
    const SparseMatrix<S>& a = action(k);
    Matrix<S> out = Matrix<S>::Zero(Index(rows.size()), Index(cols.size()));
    std::vector<Index> row_pos(size_t(dim()), -1);
    for (size_t i = 0; i < rows.size(); ++i)
        row_pos[size_t(rows[i])] = Index(i);
    for (size_t j = 0; j < cols.size(); ++j)
        for (typename SparseMatrix<S>::InnerIterator it(a, cols[j]); it; ++it) {
            const Index r = row_pos[size_t(it.row())];
            if (r >= 0)
                out(r, Index(j)) = it.value();
        }
    return out;
}

template <class S>
ModulePtr<S> parity_shift(const ModulePtr<S>& m)
{
    std::vector<std::uint8_t> par = m->parities();
    for (auto& x : par)
        x ^= 1;
    auto fn = [m](int k) -> SparseMatrix<S> {
        SparseMatrix<S> a = m->action(k);
        if (m->algebra().parity(k))
            a = -a;
        return a;
    };
    auto out = std::make_shared<Module<S>>(m->algebra_ptr(), m->weights(), std::move(par), fn, m->grading(),
                                           "Pi(" + m->name() + ")");
    out->set_truncation(m->truncation());
    return out;
}

template <class S>
ModulePtr<S> basis_submodule(const ModulePtr<S>& m, const std::vector<Index>& keep, std::string name)
{
    std::vector<int> w, g;
    std::vector<std::uint8_t> par;
    std::vector<Index> pos(size_t(m->dim()), -1);
    for (size_t i = 0; i < keep.size(); ++i) {
        pos[size_t(keep[i])] = Index(i);
        w.push_back(m->weight(keep[i]));
        par.push_back(m->parity(keep[i]));
        if (m->graded())
            g.push_back(m->degree(keep[i]));
    }
    auto fn = [m, keep, pos](int k) -> SparseMatrix<S> {
        const SparseMatrix<S>& a = m->action(k);
        std::vector<Eigen::Triplet<S>> trip;
        for (size_t j = 0; j < keep.size(); ++j)
            for (typename SparseMatrix<S>::InnerIterator it(a, keep[j]); it; ++it) {
                const Index r = pos[size_t(it.row())];
                if (r < 0) {
                    if (!it.value().is_zero())
                        throw std::logic_error("basis submodule is not stable");
                    continue;
                }
                trip.emplace_back(int(r), int(j), it.value());
            }
        SparseMatrix<S> out(Index(keep.size()), Index(keep.size()));
        out.setFromTriplets(trip.begin(), trip.end());
        return out;
    };
    auto out = std::make_shared<Module<S>>(m->algebra_ptr(), std::move(w), std::move(par), fn, std::move(g), std::move(name));
    out->set_truncation(m->truncation());
    return out;
}

template <class S>
ModulePtr<S> graded_piece(const ModulePtr<S>& m, int t)
{
    if (m->truncation() >= 0 && t > m->truncation())
        throw TruncationTooSmall("degree " + std::to_string(t) + " exceeds the parameter truncation " +
                                 std::to_string(m->truncation()));
    std::vector<Index> keep;
    for (Index i = 0; i < m->dim(); ++i)
        if (m->degree(i) == t)
            keep.push_back(i);
    return basis_submodule(m, keep, m->name() + "[" + std::to_string(t) + "]");
}

namespace {

// Sub-multisets of size a of a sorted multiset (codes), with the shuffle sign
// of moving the chosen odd pairs in front of the others.
void splits(const std::vector<int>& codes, const std::vector<std::uint8_t>& odd, int a,
            std::vector<std::tuple<std::vector<int>, std::vector<int>, int>>& out)
{
    // group equal codes
    std::vector<std::pair<int, int>> groups; // (code, multiplicity)
    for (int c : codes) {
        if (!groups.empty() && groups.back().first == c)
            ++groups.back().second;
        else
            groups.emplace_back(c, 1);
    }
    std::vector<int> take(groups.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t g, int left) {
        if (g == groups.size()) {
            if (left != 0)
                return;
            std::vector<int> q, r;
            for (size_t i = 0; i < groups.size(); ++i) {
                for (int t = 0; t < take[i]; ++t)
                    q.push_back(groups[i].first);
                for (int t = take[i]; t < groups[i].second; ++t)
                    r.push_back(groups[i].first);
            }
            // odd pairs are distinct; count (x in q, y in r) both odd with x after y in the order of `codes`
            int sign = 1;
            for (size_t i = 0; i < groups.size(); ++i)
                for (size_t j = 0; j < i; ++j)
                    if (odd[i] && odd[j] && take[i] == 1 && take[j] == 0)
                        sign = -sign;
            out.emplace_back(std::move(q), std::move(r), sign);
            return;
        }
        for (int t = 0; t <= std::min(left, groups[g].second); ++t) {
            take[g] = t;
            rec(g + 1, left - t);
        }
        take[g] = 0;
    };
    rec(0, a);
}

} // namespace

template <class S>
ModulePtr<S> tensor_modules(const ModulePtr<S>& a, const ModulePtr<S>& b, const AlgebraPtr& target)
{
    const auto& A1 = a->algebra();
    const auto& A2 = b->algebra();
    const auto& A = *target;
    if (A1.m() != A.m() || A1.n() != A.n() || A2.m() != A.m() || A2.n() != A.n() ||
        A1.degree() + A2.degree() != A.degree())
        throw std::invalid_argument("tensor_modules: algebra mismatch");
    const int N = A.letters();
    const Index db = b->dim();
    std::vector<int> w;
    std::vector<std::uint8_t> par;
    std::vector<int> g;
    const bool graded = a->graded() || b->graded();
    for (Index i = 0; i < a->dim(); ++i)
        for (Index j = 0; j < db; ++j) {
            Composition c;
            const auto& c1 = A1.weights()[size_t(a->weight(i))].parts;
            const auto& c2 = A2.weights()[size_t(b->weight(j))].parts;
            for (int x = 0; x < N; ++x)
                c.parts.push_back(c1[size_t(x)] + c2[size_t(x)]);
            w.push_back(A.weight_index(c));
            par.push_back(std::uint8_t(a->parity(i) ^ b->parity(j)));
            if (graded)
                g.push_back(a->degree(i) + b->degree(j));
        }
    const int deg_a = A1.degree();
    auto fn = [a, b, target, deg_a, db, N](int k) -> SparseMatrix<S> {
        const auto& A = *target;
        const auto& codes = A.pairs(k);
        // the group order of `splits` follows codes sorted numerically; odd pairs are distinct there
        std::vector<int> sorted = codes;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> uniq;
        std::vector<std::uint8_t> odd;
        for (int c : sorted)
            if (uniq.empty() || uniq.back() != c) {
                uniq.push_back(c);
                odd.push_back(A.pair_parity(c));
            }
        std::vector<std::tuple<std::vector<int>, std::vector<int>, int>> parts;
        splits(sorted, odd, deg_a, parts);
        std::vector<Eigen::Triplet<S>> trip;
        for (const auto& [q, r, sign] : parts) {
            const int k1 = a->algebra().index_of(q);
            const int k2 = b->algebra().index_of(r);
            if (k1 < 0 || k2 < 0)
                continue;
            const SparseMatrix<S>& m1 = a->action(k1);
            const SparseMatrix<S>& m2 = b->action(k2);
            const bool odd2 = b->algebra().parity(k2);
            for (Index i = 0; i < m1.outerSize(); ++i)
                for (typename SparseMatrix<S>::InnerIterator x(m1, i); x; ++x) {
                    const int s = sign * ((odd2 && a->parity(i)) ? -1 : 1);
                    for (Index j = 0; j < m2.outerSize(); ++j)
                        for (typename SparseMatrix<S>::InnerIterator y(m2, j); y; ++y)
                            trip.emplace_back(int(x.row() * db + y.row()), int(i * db + j),
                                              sign_scalar<S>(s) * x.value() * y.value());
                }
        }
        SparseMatrix<S> out(a->dim() * db, a->dim() * db);
        out.setFromTriplets(trip.begin(), trip.end());
        return out;
    };
    auto out = std::make_shared<Module<S>>(target, std::move(w), std::move(par), fn, std::move(g),
                                           a->name() + "*" + b->name());
    int trunc = -1;
    if (a->truncation() >= 0 || b->truncation() >= 0) {
        trunc = std::max(a->truncation(), b->truncation());
        if (a->truncation() >= 0)
            trunc = std::min(trunc, a->truncation());
        if (b->truncation() >= 0)
            trunc = std::min(trunc, b->truncation());
    }
    out->set_truncation(trunc);
    return out;
}

template <class S>
ModulePtr<S> pull_back(const ModulePtr<S>& m, const std::shared_ptr<const TwistPushforward<S>>& psi)
{
    if (&m->algebra() != &psi->small())
        throw std::invalid_argument("pull_back: module is not over the small algebra");
    std::vector<int> w;
    for (Index i = 0; i < m->dim(); ++i)
        w.push_back(psi->big_weight(m->weight(i)));
    auto fn = [m, psi](int k) -> SparseMatrix<S> {
        SparseMatrix<S> out(m->dim(), m->dim());
        for (const auto& [c, v] : psi->image(k))
            out += v * m->action(c);
        return out;
    };
    auto out = std::make_shared<Module<S>>(psi->big_ptr(), std::move(w), m->parities(), fn, m->grading(),
                                           "twist" + std::to_string(psi->r()) + "(" + m->name() + ")");
    out->set_truncation(m->truncation());
    return out;
}

std::vector<int> even_embedding(const SchurSuperalgebra& classical, const SchurSuperalgebra& super)
{
    if (classical.n() != 0 || classical.m() != super.m() || classical.degree() != super.degree())
        throw std::invalid_argument("even_embedding: expected S(m, D) and S(m|n, D)");
    const int m = classical.m(), N = super.letters();
    std::vector<int> map;
    for (int k = 0; k < int(classical.dim()); ++k) {
        std::vector<int> codes;
        for (int c : classical.pairs(k))
            codes.push_back((c / m) * N + (c % m));
        map.push_back(super.index_of(codes));
    }
    return map;
}

template <class S>
ModulePtr<S> restrict_even(const ModulePtr<S>& m, const AlgebraPtr& classical)
{
    const auto& big = m->algebra();
    auto embed = std::make_shared<std::vector<int>>(even_embedding(*classical, big));
    std::vector<Index> keep;
    std::vector<int> w;
    std::vector<std::uint8_t> par;
    std::vector<int> g;
    std::vector<int> small_weight(size_t(big.weight_count()), -1);
    for (int x = 0; x < classical->weight_count(); ++x) {
        Composition c = classical->weights()[size_t(x)];
        small_weight[size_t(big.weight_index(c))] = x;
    }
    for (Index i = 0; i < m->dim(); ++i)
        if (big.even_supported(m->weight(i))) {
            keep.push_back(i);
            w.push_back(small_weight[size_t(m->weight(i))]);
            par.push_back(0);
            if (m->graded())
                g.push_back(m->degree(i));
        }
    std::vector<Index> pos(size_t(m->dim()), -1);
    for (size_t i = 0; i < keep.size(); ++i)
        pos[size_t(keep[i])] = Index(i);
    auto fn = [m, embed, keep, pos](int k) -> SparseMatrix<S> {
        const SparseMatrix<S>& a = m->action((*embed)[size_t(k)]);
        std::vector<Eigen::Triplet<S>> trip;
        for (size_t j = 0; j < keep.size(); ++j)
            for (typename SparseMatrix<S>::InnerIterator it(a, keep[j]); it; ++it)
                if (pos[size_t(it.row())] >= 0)
                    trip.emplace_back(int(pos[size_t(it.row())]), int(j), it.value());
        SparseMatrix<S> out(Index(keep.size()), Index(keep.size()));
        out.setFromTriplets(trip.begin(), trip.end());
        return out;
    };
    auto out = std::make_shared<Module<S>>(classical, std::move(w), std::move(par), fn, std::move(g),
                                           "res0(" + m->name() + ")");
    out->set_truncation(m->truncation());
    return out;
}

template <class S>
std::shared_ptr<const TwistPushforward<S>> twist_pushforward(int m, int n, int d, int r, long long cap)
{
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int, int>, std::shared_ptr<const TwistPushforward<S>>> cache;
    const auto key = std::make_tuple(m, n, d, r);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    const int q = int(ipow(S::modulus, r));
    auto big = schur_algebra(m, n, d * q, int(S::modulus), cap);
    auto small = schur_algebra(m, 0, d, int(S::modulus), cap);
    auto psi = std::make_shared<const TwistPushforward<S>>(big, small, r);
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, psi).first->second;
}

template <class S>
bool check_module_relations(const Module<S>& m, int samples, std::mt19937_64& rng)
{
    const auto& A = m.algebra();
    std::uniform_int_distribution<int> pick(0, int(A.dim()) - 1);
    int done = 0;
    for (int tries = 0; done < samples && tries < samples * 50; ++tries) {
        const int a = pick(rng);
        // choose b with rowwt(b) = colwt(a)
        std::vector<int> cands;
        for (int w = 0; w < A.weight_count(); ++w)
            for (int b : A.block(A.colwt(a), w))
                cands.push_back(b);
        if (cands.empty())
            continue;
        const int b = cands[size_t(std::uniform_int_distribution<size_t>(0, cands.size() - 1)(rng))];
        SparseMatrix<S> lhs = m.action(a) * m.action(b);
        SparseMatrix<S> rhs(m.dim(), m.dim());
        for (const auto& [c, v] : A.product(a, b))
            rhs += S(v) * m.action(c);
        SparseMatrix<S> diff = lhs - rhs;
        prune_zeros(diff);
        if (diff.nonZeros() != 0)
            return false;
        ++done;
    }
    return true;
}

#define TWB_INSTANTIATE_MODULE(S)                                                                                 \
    template class Module<S>;                                                                                     \
    template ModulePtr<S> parity_shift(const ModulePtr<S>&);                                                      \
    template ModulePtr<S> graded_piece(const ModulePtr<S>&, int);                                                 \
    template ModulePtr<S> basis_submodule(const ModulePtr<S>&, const std::vector<Index>&, std::string);           \
    template ModulePtr<S> tensor_modules(const ModulePtr<S>&, const ModulePtr<S>&, const AlgebraPtr&);            \
    template ModulePtr<S> pull_back(const ModulePtr<S>&, const std::shared_ptr<const TwistPushforward<S>>&);     \
    template ModulePtr<S> restrict_even(const ModulePtr<S>&, const AlgebraPtr&);                                  \
    template std::shared_ptr<const TwistPushforward<S>> twist_pushforward<S>(int, int, int, int, long long);      \
    template bool check_module_relations(const Module<S>&, int, std::mt19937_64&);

TWB_FOR_EACH_FIELD(TWB_INSTANTIATE_MODULE)

} // namespace twb
