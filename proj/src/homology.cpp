#include "twb/homology.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace twb {

// ---------------------------------------------------------------- Hom

template <class S>
std::vector<Matrix<S>> hom_basis(const Module<S>& m, const Module<S>& n)
{
    const auto& A = m.algebra();
    if (&A != &n.algebra())
        throw std::invalid_argument("hom: modules over different algebras");
    // unknown blocks f_{w,π}: N_{w,π} x M_{w,π}
    struct Unknown
    {
        std::vector<Index> rows, cols;
        Index offset;
    };
    std::map<std::pair<int, int>, Unknown> blocks;
    Index count = 0;
    for (int w = 0; w < A.weight_count(); ++w)
        for (int par = 0; par < 2; ++par) {
            Unknown u{n.weight_space(w, std::uint8_t(par)), m.weight_space(w, std::uint8_t(par)), count};
            if (u.rows.empty() || u.cols.empty())
                continue;
            count += Index(u.rows.size() * u.cols.size());
            blocks.emplace(std::make_pair(w, par), std::move(u));
        }
    if (count == 0)
        return {};
    std::vector<Eigen::Triplet<S>> trip;
    int eq = 0;
    for (int g : A.generators()) {
        const int u = A.colwt(g), v = A.rowwt(g);
        const int sg = A.parity(g);
        for (int par = 0; par < 2; ++par) {
            // f_{v, par^sg} · M(g) [v ← u] = N(g) [v ← u] · f_{u, par}
            auto src_it = blocks.find({u, par});
            auto dst_it = blocks.find({v, par ^ sg});
            const auto m_rows = m.weight_space(v, std::uint8_t(par ^ sg));
            const auto m_cols = m.weight_space(u, std::uint8_t(par));
            const auto n_rows = n.weight_space(v, std::uint8_t(par ^ sg));
            const auto n_cols = n.weight_space(u, std::uint8_t(par));
            if (n_rows.empty() || m_cols.empty())
                continue;
            const Matrix<S> gm = m.block(g, m_rows, m_cols);
            const Matrix<S> gn = n.block(g, n_rows, n_cols);
            for (size_t i = 0; i < n_rows.size(); ++i)
                for (size_t j = 0; j < m_cols.size(); ++j) {
                    bool any = false;
                    if (dst_it != blocks.end()) {
                        const auto& d = dst_it->second;
                        for (size_t k = 0; k < m_rows.size(); ++k)
                            if (!gm(Index(k), Index(j)).is_zero()) {
                                trip.emplace_back(eq, int(d.offset + Index(i * d.cols.size() + k)), gm(Index(k), Index(j)));
                                any = true;
                            }
                    }
                    if (src_it != blocks.end()) {
                        const auto& s = src_it->second;
                        for (size_t k = 0; k < n_cols.size(); ++k)
                            if (!gn(Index(i), Index(k)).is_zero()) {
                                trip.emplace_back(eq, int(s.offset + Index(k * s.cols.size() + j)), -gn(Index(i), Index(k)));
                                any = true;
                            }
                    }
                    if (any)
                        ++eq;
                }
        }
    }
    SparseMatrix<S> sys(eq, count);
    sys.setFromTriplets(trip.begin(), trip.end());
    const Matrix<S> null = nullspace(sys);
    std::vector<Matrix<S>> out;
    for (Index c = 0; c < null.cols(); ++c) {
        Matrix<S> f = Matrix<S>::Zero(n.dim(), m.dim());
        for (const auto& [key, b] : blocks)
            for (size_t i = 0; i < b.rows.size(); ++i)
                for (size_t j = 0; j < b.cols.size(); ++j)
                    f(b.rows[i], b.cols[j]) = null(b.offset + Index(i * b.cols.size() + j), c);
        out.push_back(std::move(f));
    }
    return out;
}

template <class S>
ParityDims hom_dims(const ModulePtr<S>& m, const ModulePtr<S>& n)
{
    ParityDims d;
    d.even = (long long)hom_basis(*m, *n).size();
    d.odd = (long long)hom_basis(*m, *parity_shift(n)).size();
    return d;
}

template <class S>
long long hom_dim_unblocked(const Module<S>& m, const Module<S>& n)
{
    const auto& A = m.algebra();
    const Index a = m.dim(), b = n.dim();
    std::vector<Eigen::Triplet<S>> trip;
    int eq = 0;
    // parity: f must map even to even
    for (Index i = 0; i < b; ++i)
        for (Index j = 0; j < a; ++j)
            if (n.parity(i) != m.parity(j))
                trip.emplace_back(eq++, int(i * a + j), S(1));
    for (int k = 0; k < int(A.dim()); ++k) {
        const Matrix<S> gm = to_dense(m.action(k));
        const Matrix<S> gn = to_dense(n.action(k));
        for (Index i = 0; i < b; ++i)
            for (Index j = 0; j < a; ++j) {
                for (Index t = 0; t < a; ++t)
                    if (!gm(t, j).is_zero())
                        trip.emplace_back(eq, int(i * a + t), gm(t, j));
                for (Index t = 0; t < b; ++t)
                    if (!gn(i, t).is_zero())
                        trip.emplace_back(eq, int(t * a + j), -gn(i, t));
                ++eq;
            }
    }
    SparseMatrix<S> sys(eq, a * b);
    sys.setFromTriplets(trip.begin(), trip.end());
    return (long long)(a * b - rank(sys));
}

// ---------------------------------------------------------------- free modules

template <class S>
FreeModule<S>::FreeModule(AlgebraPtr algebra, std::vector<int> weight, std::vector<std::uint8_t> parity)
    : algebra_(std::move(algebra)), weight_(std::move(weight)), parity_(std::move(parity))
{
    for (size_t j = 0; j < weight_.size(); ++j) {
        offset_.push_back(dim_);
        for (int c : algebra_->column(weight_[j])) {
            gen_.push_back(int(j));
            elem_.push_back(c);
        }
        dim_ += Index(algebra_->column(weight_[j]).size());
    }
}

namespace {

template <class S>
class Accumulator
{
public:
    explicit Accumulator(Index n) : vals_(size_t(n), S(0)), seen_(size_t(n), 0) {}
    void add(Index i, S v)
    {
        if (!seen_[size_t(i)]) {
            seen_[size_t(i)] = 1;
            touched_.push_back(i);
        }
        vals_[size_t(i)] += v;
    }
    SparseVec<S> take()
    {
        std::sort(touched_.begin(), touched_.end());
        SparseVec<S> out;
        for (Index i : touched_) {
            if (!vals_[size_t(i)].is_zero())
                out.emplace_back(i, vals_[size_t(i)]);
            vals_[size_t(i)] = S(0);
            seen_[size_t(i)] = 0;
        }
        touched_.clear();
        return out;
    }

private:
    std::vector<S> vals_;
    std::vector<std::uint8_t> seen_;
    std::vector<Index> touched_;
};

} // namespace

template <class S>
SparseVec<S> FreeModule<S>::apply(int b, const SparseVec<S>& v) const
{
    thread_local std::unique_ptr<Accumulator<S>> acc;
    thread_local Index acc_dim = -1;
    if (!acc || acc_dim < dim_) {
        acc = std::make_unique<Accumulator<S>>(dim_);
        acc_dim = dim_;
    }
    for (const auto& [i, x] : v) {
        const int j = gen_[size_t(i)], c = elem_[size_t(i)];
        for (const auto& [e, coef] : algebra_->product(b, c))
            acc->add(index(j, e), x * S(coef));
    }
    return acc->take();
}

namespace {

// A space with an algebra action on sparse vectors, split into (weight, parity) blocks.
template <class S>
struct Acted
{
    Index dim = 0;
    std::vector<int> weight;
    std::vector<std::uint8_t> parity;
    std::function<SparseVec<S>(int, const SparseVec<S>&)> apply;

    std::map<std::pair<int, int>, int> block_id;
    std::vector<std::pair<int, int>> keys;
    std::vector<std::vector<Index>> members;
    std::vector<int> block_of;
    std::vector<Index> local;

    void index_blocks()
    {
        std::map<std::pair<int, int>, std::vector<Index>> tmp;
        for (Index i = 0; i < dim; ++i)
            tmp[{weight[size_t(i)], parity[size_t(i)]}].push_back(i);
        block_of.assign(size_t(dim), -1);
        local.assign(size_t(dim), -1);
        for (auto& [k, v] : tmp) {
            const int id = int(keys.size());
            block_id[k] = id;
            keys.push_back(k);
            for (size_t t = 0; t < v.size(); ++t) {
                block_of[size_t(v[t])] = id;
                local[size_t(v[t])] = Index(t);
            }
            members.push_back(std::move(v));
        }
    }
    int find(int w, int par) const
    {
        auto it = block_id.find({w, par});
        return it == block_id.end() ? -1 : it->second;
    }
};

template <class S>
Acted<S> acted_module(const ModulePtr<S>& m)
{
    Acted<S> a;
    a.dim = m->dim();
    a.weight = m->weights();
    a.parity = m->parities();
    auto acc = std::make_shared<Accumulator<S>>(m->dim());
    a.apply = [m, acc](int b, const SparseVec<S>& v) {
        const SparseMatrix<S>& x = m->action(b);
        for (const auto& [i, c] : v)
            for (typename SparseMatrix<S>::InnerIterator it(x, i); it; ++it)
                acc->add(it.row(), c * it.value());
        return acc->take();
    };
    a.index_blocks();
    return a;
}

template <class S>
Acted<S> acted_free(const std::shared_ptr<const FreeModule<S>>& p)
{
    Acted<S> a;
    a.dim = p->dim();
    for (Index i = 0; i < p->dim(); ++i) {
        a.weight.push_back(p->weight(i));
        a.parity.push_back(p->parity(i));
    }
    a.apply = [p](int b, const SparseVec<S>& v) { return p->apply(b, v); };
    a.index_blocks();
    return a;
}

struct Generator
{
    int weight;
    std::uint8_t parity;
};

// Kernel of the map P -> T, g_l ↦ y_l, per block of P.
template <class S>
std::vector<Matrix<S>> kernel_blocks(const Acted<S>& p, const Acted<S>& t, const std::vector<SparseVec<S>>& images,
                                     const FreeModule<S>& free, long long& kernel_dim, bool& rank_ok,
                                     const std::vector<long long>& expected_image)
{
    std::vector<Matrix<S>> out(p.keys.size());
    kernel_dim = 0;
    rank_ok = true;
    std::vector<long long> image_dims(t.keys.size(), 0);
    for (size_t b = 0; b < p.keys.size(); ++b) {
        const auto [w, par] = p.keys[b];
        const auto& cols = p.members[b];
        const int tb = t.find(w, par);
        const Index rows = tb < 0 ? 0 : Index(t.members[size_t(tb)].size());
        Matrix<S> d = Matrix<S>::Zero(rows, Index(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c) {
            const auto [l, e] = free.decode(cols[c]);
            for (const auto& [i, v] : t.apply(e, images[size_t(l)])) {
                if (t.block_of[size_t(i)] != tb)
                    throw std::logic_error("resolution differential does not preserve blocks");
                d(t.local[size_t(i)], Index(c)) = v;
            }
        }
        out[b] = nullspace(d);
        kernel_dim += out[b].cols();
        if (tb >= 0)
            image_dims[size_t(tb)] = (long long)(Index(cols.size()) - out[b].cols());
    }
    if (!expected_image.empty())
        for (size_t b = 0; b < t.keys.size(); ++b)
            if (image_dims[b] != expected_image[b])
                rank_ok = false;
    return out;
}

template <class S>
SparseVec<S> to_sparse_vec(const Acted<S>& a, int block, const Vector<S>& v)
{
    SparseVec<S> out;
    for (Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero())
            out.emplace_back(a.members[size_t(block)][size_t(i)], v(i));
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

// A-submodule generated by vectors, as echelon forms per block.
template <class S>
class Span
{
public:
    explicit Span(const Acted<S>& a) : a_(a)
    {
        for (const auto& m : a.members)
            ech_.emplace_back(Index(m.size()));
    }
    void add_orbit(const SchurSuperalgebra& A, int w, const SparseVec<S>& y)
    {
        for (int b : A.column(w)) {
            const SparseVec<S> z = a_.apply(b, y);
            if (z.empty())
                continue;
            const int blk = a_.block_of[size_t(z.front().first)];
            Vector<S> v = Vector<S>::Zero(Index(a_.members[size_t(blk)].size()));
            for (const auto& [i, x] : z)
                v(a_.local[size_t(i)]) = x;
            ech_[size_t(blk)].add(std::move(v));
        }
    }
    const Echelon<S>& block(int b) const { return ech_[size_t(b)]; }

private:
    const Acted<S>& a_;
    std::vector<Echelon<S>> ech_;
};

template <class S>
std::vector<SparseVec<S>> cover(const SchurSuperalgebra& A, const Acted<S>& t, const std::vector<Matrix<S>>& kernel,
                                std::vector<Generator>& gens, const ResolutionOptions& opt, std::mt19937_64& rng)
{
    std::vector<SparseVec<S>> chosen;
    std::vector<int> chosen_block;
    Span<S> span(t);
    for (size_t b = 0; b < t.keys.size(); ++b) {
        const Matrix<S>& k = kernel[b];
        Index next = 0;
        while (span.block(int(b)).dimension() < k.cols()) {
            Vector<S> v;
            bool found = false;
            if (opt.seed != 0) {
                for (int tries = 0; tries < 8 && !found; ++tries) {
                    v = k * random_matrix<S>(k.cols(), 1, rng);
                    found = !span.block(int(b)).contains(v);
                }
            }
            while (!found) {
                if (next >= k.cols())
                    throw std::logic_error("cover: kernel not reached");
                v = k.col(next++);
                found = !span.block(int(b)).contains(v);
            }
            SparseVec<S> y = to_sparse_vec(t, int(b), v);
            span.add_orbit(A, t.keys[b].first, y);
            chosen.push_back(std::move(y));
            chosen_block.push_back(int(b));
        }
    }
    if (opt.prune && chosen.size() > 1) {
        std::vector<bool> keep(chosen.size(), true);
        for (size_t r = chosen.size(); r-- > 0;) {
            keep[r] = false;
            Span<S> s(t);
            for (size_t i = 0; i < chosen.size(); ++i)
                if (keep[i])
                    s.add_orbit(A, t.keys[size_t(chosen_block[i])].first, chosen[i]);
            bool spans = true;
            for (size_t b = 0; b < t.keys.size() && spans; ++b)
                spans = s.block(int(b)).dimension() == kernel[b].cols();
            if (!spans)
                keep[r] = true;
        }
        std::vector<SparseVec<S>> kept;
        std::vector<int> kept_block;
        for (size_t i = 0; i < chosen.size(); ++i)
            if (keep[i]) {
                kept.push_back(std::move(chosen[i]));
                kept_block.push_back(chosen_block[i]);
            }
        chosen = std::move(kept);
        chosen_block = std::move(kept_block);
    }
    gens.clear();
    for (int b : chosen_block)
        gens.push_back({t.keys[size_t(b)].first, std::uint8_t(t.keys[size_t(b)].second)});
    return chosen;
}

// ---------------------------------------------------------------- disk cache

constexpr char resolution_magic[4] = {'T', 'W', 'B', 'R'};
constexpr std::uint32_t resolution_blob_version = 1;

template <class T>
void put(std::ostream& os, T x)
{
    os.write(reinterpret_cast<const char*>(&x), sizeof(T));
}
template <class T>
T get(std::istream& is)
{
    T x{};
    is.read(reinterpret_cast<char*>(&x), sizeof(T));
    if (!is)
        throw std::runtime_error("truncated resolution blob");
    return x;
}

std::uint64_t fnv(const std::string& s, std::uint64_t h = 1469598103934665603ULL)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

template <class S>
std::string cache_key(const Module<S>& m, const ResolutionOptions& opt)
{
    const auto& A = m.algebra();
    std::ostringstream os;
    os << "p" << S::modulus << "_S" << A.m() << "-" << A.n() << "-" << A.degree() << "_" << module_hash(m) << "_s"
       << opt.seed << (opt.prune ? "p" : "n");
    return os.str();
}

template <class S>
void save_resolution(const Resolution<S>& r, const std::filesystem::path& path)
{
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        os.write(resolution_magic, 4);
        put<std::uint32_t>(os, resolution_blob_version);
        put<std::uint32_t>(os, S::modulus);
        put<std::uint32_t>(os, std::uint32_t(r.terms.size()));
        for (size_t i = 0; i < r.terms.size(); ++i) {
            const auto& t = r.terms[i];
            put<std::uint32_t>(os, std::uint32_t(t.rank()));
            for (int j = 0; j < t.rank(); ++j) {
                put<std::int32_t>(os, t.generator_weight(j));
                put<std::uint8_t>(os, t.generator_parity(j));
                const auto& img = r.images[i][size_t(j)];
                put<std::uint64_t>(os, img.size());
                for (const auto& [k, v] : img) {
                    put<std::uint64_t>(os, std::uint64_t(k));
                    put<std::uint8_t>(os, v.value());
                }
            }
            put<std::uint8_t>(os, r.exact[i] ? 1 : 0);
            put<std::int64_t>(os, r.kernel_dims[i]);
        }
    }
    std::filesystem::rename(tmp, path);
}

template <class S>
std::optional<Resolution<S>> load_resolution(const ModulePtr<S>& m, const std::filesystem::path& path, int length)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        return std::nullopt;
    try {
        char magic[4];
        is.read(magic, 4);
        if (!is || std::memcmp(magic, resolution_magic, 4) != 0)
            return std::nullopt;
        if (get<std::uint32_t>(is) != resolution_blob_version || get<std::uint32_t>(is) != S::modulus)
            return std::nullopt;
        const std::uint32_t terms = get<std::uint32_t>(is);
        if (int(terms) < length + 1)
            return std::nullopt;
        Resolution<S> r;
        r.module = m;
        r.from_cache = true;
        for (std::uint32_t i = 0; i < terms; ++i) {
            const std::uint32_t rank = get<std::uint32_t>(is);
            std::vector<int> w;
            std::vector<std::uint8_t> par;
            std::vector<SparseVec<S>> imgs;
            for (std::uint32_t j = 0; j < rank; ++j) {
                w.push_back(get<std::int32_t>(is));
                par.push_back(get<std::uint8_t>(is));
                const auto n = get<std::uint64_t>(is);
                SparseVec<S> v;
                for (std::uint64_t k = 0; k < n; ++k) {
                    const auto idx = get<std::uint64_t>(is);
                    v.emplace_back(Index(idx), S::from_rep(get<std::uint8_t>(is)));
                }
                imgs.push_back(std::move(v));
            }
            r.terms.emplace_back(m->algebra_ptr(), std::move(w), std::move(par));
            r.images.push_back(std::move(imgs));
            r.exact.push_back(get<std::uint8_t>(is) != 0);
            r.kernel_dims.push_back(get<std::int64_t>(is));
        }
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace

template <class S>
bool Resolution<S>::certified() const
{
    return std::all_of(exact.begin(), exact.end(), [](bool b) { return b; });
}

template <class S>
Resolution<S> free_resolution(const ModulePtr<S>& m, int length, const ResolutionOptions& opt)
{
    if (length < 0)
        throw std::invalid_argument("resolution length must be >= 0");
    std::filesystem::path cache_path;
    if (!opt.cache_dir.empty()) {
        cache_path = std::filesystem::path(opt.cache_dir) / ("resolution_" + cache_key(*m, opt) + ".bin");
        if (auto r = load_resolution<S>(m, cache_path, length))
            return *r;
    }
    const auto& A = m->algebra();
    std::mt19937_64 rng(opt.seed);
    Resolution<S> res;
    res.module = m;

    // stage 0: cover M
    Acted<S> target = acted_module(m);
    std::vector<Matrix<S>> whole(target.keys.size());
    for (size_t b = 0; b < target.keys.size(); ++b)
        whole[b] = Matrix<S>::Identity(Index(target.members[b].size()), Index(target.members[b].size()));
    std::vector<long long> expected(target.keys.size());
    for (size_t b = 0; b < target.keys.size(); ++b)
        expected[b] = (long long)target.members[b].size();
    std::vector<Matrix<S>> kernel = whole;

    for (int i = 0; i <= length; ++i) {
        std::vector<Generator> gens;
        std::vector<SparseVec<S>> images = cover<S>(A, target, kernel, gens, opt, rng);
        std::vector<int> gw;
        std::vector<std::uint8_t> gp;
        for (const auto& g : gens) {
            gw.push_back(g.weight);
            gp.push_back(g.parity);
        }
        auto free = std::make_shared<const FreeModule<S>>(m->algebra_ptr(), gw, gp);
        if (free->dim() > opt.max_term_dim)
            throw ResourceExceeded("resolution stage " + std::to_string(i),
                                   "term dimension " + std::to_string(free->dim()) + " exceeds " +
                                       std::to_string(opt.max_term_dim));
        Acted<S> p = acted_free(free);
        long long kdim = 0;
        bool rank_ok = true;
        std::vector<Matrix<S>> next = kernel_blocks<S>(p, target, images, *free, kdim, rank_ok, expected);
        // images are cycles: d(y) = 0 is implied by y in the previous kernel; check on generators
        bool cycles = true;
        if (i > 0) {
            const auto& prev = res.terms[size_t(i - 1)];
            const auto& prev_images = res.images[size_t(i - 1)];
            Acted<S> below = i == 1 ? acted_module(m) : Acted<S>{};
            for (const auto& y : images) {
                // d_{i-1}(y) = Σ y_{(j,c)} c·d_{i-1}(g_j)
                std::map<Index, S> acc;
                for (const auto& [idx, v] : y) {
                    const auto [j, c] = prev.decode(idx);
                    SparseVec<S> z;
                    if (i == 1)
                        z = below.apply(c, prev_images[size_t(j)]);
                    else
                        z = res.terms[size_t(i - 2)].apply(c, prev_images[size_t(j)]);
                    for (const auto& [k, x] : z)
                        acc[k] += v * x;
                }
                for (const auto& [k, x] : acc)
                    if (!x.is_zero())
                        cycles = false;
            }
        }
        res.terms.push_back(*free);
        res.images.push_back(std::move(images));
        res.exact.push_back(rank_ok && cycles);
        res.kernel_dims.push_back(kdim);
        expected.assign(p.keys.size(), 0);
        for (size_t b = 0; b < p.keys.size(); ++b)
            expected[b] = (long long)next[b].cols();
        target = std::move(p);
        kernel = std::move(next);
    }
    if (!cache_path.empty())
        save_resolution(res, cache_path);
    return res;
}

// ---------------------------------------------------------------- Ext

template <class S>
std::vector<std::pair<int, Index>> cochain_basis(const Resolution<S>& p, const Module<S>& n, int i)
{
    std::vector<std::pair<int, Index>> out;
    const auto& t = p.terms[size_t(i)];
    for (int j = 0; j < t.rank(); ++j)
        for (Index x : n.weight_space(t.generator_weight(j), t.generator_parity(j)))
            out.emplace_back(j, x);
    return out;
}

namespace {

// Matrix of f ↦ (g_l ↦ f(z_l)) for vectors z_l in the free module `src`, cochains on `src` to cochains indexed by `rows`.
template <class S>
SparseMatrix<S> pullback_matrix(const FreeModule<S>& src, const Module<S>& n, const std::vector<SparseVec<S>>& z,
                                const std::vector<std::vector<Index>>& row_targets, Index row_count,
                                const std::vector<Index>& row_offset)
{
    // column coordinates of src cochains
    std::vector<Index> col_offset;
    std::vector<std::vector<Index>> col_targets;
    Index cols = 0;
    for (int j = 0; j < src.rank(); ++j) {
        col_offset.push_back(cols);
        col_targets.push_back(n.weight_space(src.generator_weight(j), src.generator_parity(j)));
        cols += Index(col_targets.back().size());
    }
    std::vector<Eigen::Triplet<S>> trip;
    for (size_t l = 0; l < z.size(); ++l) {
        const auto& rows = row_targets[l];
        if (rows.empty())
            continue;
        std::vector<Index> row_pos(size_t(n.dim()), -1);
        for (size_t r = 0; r < rows.size(); ++r)
            row_pos[size_t(rows[r])] = Index(r);
        for (const auto& [idx, v] : z[l]) {
            const auto [j, c] = src.decode(idx);
            const auto& cj = col_targets[size_t(j)];
            if (cj.empty())
                continue;
            const SparseMatrix<S>& act = n.action(c);
            for (size_t s = 0; s < cj.size(); ++s)
                for (typename SparseMatrix<S>::InnerIterator it(act, cj[s]); it; ++it) {
                    const Index r = row_pos[size_t(it.row())];
                    if (r >= 0)
                        trip.emplace_back(int(row_offset[l] + r), int(col_offset[size_t(j)] + Index(s)), v * it.value());
                }
        }
    }
    SparseMatrix<S> out(row_count, cols);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

} // namespace

template <class S>
SparseMatrix<S> coboundary(const Resolution<S>& p, const Module<S>& n, int i)
{
    if (i + 1 >= int(p.terms.size()))
        throw std::invalid_argument("coboundary: resolution too short");
    const auto& next = p.terms[size_t(i + 1)];
    std::vector<std::vector<Index>> rows;
    std::vector<Index> offset;
    Index count = 0;
    for (int l = 0; l < next.rank(); ++l) {
        offset.push_back(count);
        rows.push_back(n.weight_space(next.generator_weight(l), next.generator_parity(l)));
        count += Index(rows.back().size());
    }
    return pullback_matrix<S>(p.terms[size_t(i)], n, p.images[size_t(i + 1)], rows, count, offset);
}

std::vector<long long> ExtTable::full() const
{
    std::vector<long long> out(even.size());
    for (size_t i = 0; i < even.size(); ++i)
        out[i] = even[i] + odd[i];
    return out;
}

namespace {

template <class S>
std::vector<long long> ext_even(const Resolution<S>& p, const Module<S>& n, int window)
{
    if (p.length() < window + 1)
        throw std::invalid_argument("ext: resolution of length window + 1 required");
    std::vector<long long> ranks;
    for (int i = 0; i <= window; ++i)
        ranks.push_back((long long)rank(coboundary(p, n, i)));
    std::vector<long long> out;
    for (int i = 0; i <= window; ++i) {
        const long long c = (long long)cochain_basis(p, n, i).size();
        out.push_back(c - ranks[size_t(i)] - (i > 0 ? ranks[size_t(i - 1)] : 0));
    }
    return out;
}

} // namespace

template <class S>
ExtTable ext_dims(const Resolution<S>& p, const ModulePtr<S>& n, int window)
{
    if (&p.module->algebra() != &n->algebra())
        throw std::invalid_argument("ext: modules over different algebras");
    ExtTable t;
    t.even = ext_even(p, *n, window);
    t.odd = ext_even(p, *parity_shift(n), window);
    return t;
}

template <class S>
std::shared_ptr<const Resolution<S>> cached_resolution(const ExprPtr& f, int m, int n, int length,
                                                       const ResolutionOptions& options, long long cap)
{
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const Resolution<S>>> cache;
    std::ostringstream key;
    key << to_string(normalize(f)) << "@" << m << "|" << n << "/s" << options.seed << (options.prune ? "p" : "n");
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key.str());
        if (it != cache.end() && it->second->length() >= length)
            return it->second;
    }
    auto module = evaluate<S>(f, m, n, cap);
    auto r = std::make_shared<const Resolution<S>>(free_resolution(module, length, options));
    std::lock_guard<std::mutex> lock(mutex);
    cache[key.str()] = r;
    return r;
}

template <class S>
ExtTable ext_dims(const ExprPtr& f, const ExprPtr& g, int m, int n, int window, const ResolutionOptions& options,
                  long long cap)
{
    const int p = int(S::modulus);
    if (degree(f, p) != degree(g, p))
        throw std::invalid_argument("ext: functors of different degrees");
    auto res = cached_resolution<S>(f, m, n, window + 1, options, cap);
    auto target = evaluate<S>(g, m, n, cap);
    return ext_dims<S>(*res, target, window);
}

// ---------------------------------------------------------------- res0 on Ext

template <class S>
std::vector<long long> res0_ext_ranks(const Resolution<S>& p, const ModulePtr<S>& n0, int window, bool parity_shifted,
                                      const ResolutionOptions& options)
{
    const ModulePtr<S> n = parity_shifted ? parity_shift(n0) : n0;
    const auto& A = p.module->algebra();
    const AlgebraPtr C = schur_algebra(A.m(), 0, A.degree(), A.characteristic());
    const auto embed = even_embedding(*C, A);
    const ModulePtr<S> em = restrict_even(p.module, C);
    const ModulePtr<S> en = restrict_even(n, C);
    const Resolution<S> q = free_resolution(em, window + 1, options);

    auto big_weight = [&](int w) { return A.weight_index(C->weights()[size_t(w)]); };
    // indices of M (resp. N) that survive in eM (resp. eN), in order
    auto surviving = [&](const Module<S>& x) {
        std::vector<Index> keep;
        for (Index i = 0; i < x.dim(); ++i)
            if (A.even_supported(x.weight(i)))
                keep.push_back(i);
        return keep;
    };
    const std::vector<Index> m_keep = surviving(*p.module);
    const std::vector<Index> n_keep = surviving(*n);

    // chain map Φ_i: Q_i -> P_i lifting the identity of eM; phi[i][l] = Φ_i(h_l)
    std::vector<std::vector<SparseVec<S>>> phi;
    const Acted<S> m_acted = acted_module(p.module);
    for (int i = 0; i <= window; ++i) {
        const auto& qi = q.terms[size_t(i)];
        const auto& pi = p.terms[size_t(i)];
        std::vector<SparseVec<S>> lifts;
        for (int l = 0; l < qi.rank(); ++l) {
            // target vector in P_{i-1} (or M) that Φ_i(h_l) must hit
            std::map<Index, S> rhs;
            if (i == 0) {
                for (const auto& [k, v] : q.images[0][size_t(l)])
                    rhs[m_keep[size_t(k)]] += v;
            } else {
                const auto& qprev = q.terms[size_t(i - 1)];
                for (const auto& [idx, v] : q.images[size_t(i)][size_t(l)]) {
                    const auto [j, c] = qprev.decode(idx);
                    for (const auto& [k, x] : p.terms[size_t(i - 1)].apply(embed[size_t(c)], phi[size_t(i - 1)][size_t(j)]))
                        rhs[k] += v * x;
                }
            }
            // unknown: z in the (W, even) block of P_i
            const int W = big_weight(qi.generator_weight(l));
            std::vector<Index> cols;
            for (Index x = 0; x < pi.dim(); ++x)
                if (pi.weight(x) == W && pi.parity(x) == 0)
                    cols.push_back(x);
            std::map<Index, Index> row_of;
            std::vector<std::vector<std::pair<Index, S>>> col_entries;
            for (Index x : cols) {
                const auto [j, c] = pi.decode(x);
                SparseVec<S> img = i == 0 ? m_acted.apply(c, p.images[0][size_t(j)])
                                          : p.terms[size_t(i - 1)].apply(c, p.images[size_t(i)][size_t(j)]);
                for (const auto& [k, v] : img)
                    row_of.emplace(k, Index(row_of.size()));
                col_entries.push_back(std::move(img));
            }
            for (const auto& [k, v] : rhs)
                if (!v.is_zero())
                    row_of.emplace(k, Index(row_of.size()));
            Matrix<S> d = Matrix<S>::Zero(Index(row_of.size()), Index(cols.size()));
            for (size_t c = 0; c < cols.size(); ++c)
                for (const auto& [k, v] : col_entries[c])
                    d(row_of.at(k), Index(c)) = v;
            Vector<S> b = Vector<S>::Zero(Index(row_of.size()));
            for (const auto& [k, v] : rhs)
                if (!v.is_zero())
                    b(row_of.at(k)) = v;
            const auto x = solve(d, b);
            if (!x)
                throw std::logic_error("res0: comparison lift does not exist");
            SparseVec<S> z;
            for (size_t c = 0; c < cols.size(); ++c)
                if (!(*x)(Index(c)).is_zero())
                    z.emplace_back(cols[c], (*x)(Index(c)));
            lifts.push_back(std::move(z));
        }
        phi.push_back(std::move(lifts));
    }

    // Φ^*: C^i_P(N) -> C^i_Q(eN)
    std::vector<Index> n_to_e(size_t(n->dim()), -1);
    for (size_t k = 0; k < n_keep.size(); ++k)
        n_to_e[size_t(n_keep[k])] = Index(k);
    std::vector<long long> ranks;
    for (int i = 0; i <= window; ++i) {
        const auto& qi = q.terms[size_t(i)];
        std::vector<std::vector<Index>> rows;
        std::vector<Index> offset;
        Index count = 0;
        // rows: Q cochains (l, eN index) realized as N indices of the big weight
        for (int l = 0; l < qi.rank(); ++l) {
            offset.push_back(count);
            std::vector<Index> r;
            for (Index x : en->weight_space(qi.generator_weight(l), 0))
                r.push_back(n_keep[size_t(x)]);
            rows.push_back(std::move(r));
            count += Index(rows.back().size());
        }
        const SparseMatrix<S> pull = pullback_matrix<S>(p.terms[size_t(i)], *n, phi[size_t(i)], rows, count, offset);
        const Matrix<S> z = nullspace(coboundary(p, *n, i));
        Matrix<S> image = to_dense(pull) * z;
        Matrix<S> bq;
        if (i > 0)
            bq = to_dense(coboundary(q, *en, i - 1));
        else
            bq = Matrix<S>::Zero(count, 0);
        Matrix<S> both(count, image.cols() + bq.cols());
        both.leftCols(image.cols()) = image;
        both.rightCols(bq.cols()) = bq;
        ranks.push_back((long long)(rank(both) - rank(bq)));
    }
    return ranks;
}

template <class S>
std::vector<long long> derived_adjoint_dims(const ExprPtr& g, int r, int v, int window, const ResolutionOptions& options,
                                            long long cap)
{
    const int p = int(S::modulus);
    const int d = degree(g, p);
    const int D = d * int(ipow(p, r));
    ExprPtr f = twist0_of(r, parametrize(power_functor(PowerKind::gamma, d), ParamSpec::space(v, 0)));
    return ext_dims<S>(f, twist0_of(r, g), D, D, window, options, cap).full();
}

template <class S>
bool yoneda_check(const ExprPtr& f, int vm, int vn, bool super, long long cap)
{
    const int p = int(S::modulus);
    const int d = degree(f, p);
    ExprPtr gamma = parametrize(power_functor(PowerKind::gamma, d), ParamSpec::space(vm, vn));
    const int wm = d, wn = super ? d : 0;
    auto a = evaluate<S>(gamma, wm, wn, cap);
    auto b = evaluate<S>(f, wm, wn, cap);
    const long long h = hom_dims<S>(a, b).total();
    return h == evaluate<S>(f, vm, vn, cap)->dim();
}

template <class S>
bool trace_form_nondegenerate(const SchurSuperalgebra& a)
{
    std::vector<S> tr(size_t(a.dim()), S(0));
    for (int c = 0; c < int(a.dim()); ++c)
        for (const auto& x : a.arrangements(c))
            if (x.in == x.out)
                tr[size_t(c)] += sign_scalar<S>(x.sign);
    std::vector<Eigen::Triplet<S>> trip;
    for (int x = 0; x < int(a.dim()); ++x)
        for (int y : a.block(a.colwt(x), a.rowwt(x))) {
            S v(0);
            for (const auto& [c, k] : a.product(x, y))
                v += S(k) * tr[size_t(c)];
            if (!v.is_zero())
                trip.emplace_back(x, y, v);
        }
    SparseMatrix<S> g(a.dim(), a.dim());
    g.setFromTriplets(trip.begin(), trip.end());
    return rank(g) == a.dim();
}

template <class S>
std::string module_hash(const Module<S>& m)
{
    std::ostringstream os;
    const auto& A = m.algebra();
    os << A.m() << "," << A.n() << "," << A.degree() << "," << A.characteristic() << ";" << m.dim() << ";";
    for (Index i = 0; i < m.dim(); ++i)
        os << m.weight(i) << ":" << int(m.parity(i)) << ":" << m.degree(i) << ",";
    std::vector<int> elems = A.generators();
    for (int w = 0; w < A.weight_count(); ++w)
        elems.push_back(A.idempotent(w));
    for (int k : elems) {
        os << "|" << k;
        const auto& a = m.action(k);
        for (Index c = 0; c < a.outerSize(); ++c)
            for (typename SparseMatrix<S>::InnerIterator it(a, c); it; ++it)
                os << " " << it.row() << "," << c << "," << int(it.value().value());
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv(os.str()));
    return buf;
}

#define TWB_INSTANTIATE_HOMOLOGY(S)                                                                                    \
    template std::vector<Matrix<S>> hom_basis(const Module<S>&, const Module<S>&);                                     \
    template ParityDims hom_dims(const ModulePtr<S>&, const ModulePtr<S>&);                                            \
    template long long hom_dim_unblocked(const Module<S>&, const Module<S>&);                                          \
    template class FreeModule<S>;                                                                                      \
    template struct Resolution<S>;                                                                                     \
    template Resolution<S> free_resolution(const ModulePtr<S>&, int, const ResolutionOptions&);                       \
    template SparseMatrix<S> coboundary(const Resolution<S>&, const Module<S>&, int);                                 \
    template std::vector<std::pair<int, Index>> cochain_basis(const Resolution<S>&, const Module<S>&, int);           \
    template ExtTable ext_dims(const Resolution<S>&, const ModulePtr<S>&, int);                                         \
    template ExtTable ext_dims<S>(const ExprPtr&, const ExprPtr&, int, int, int, const ResolutionOptions&, long long); \
    template std::shared_ptr<const Resolution<S>> cached_resolution<S>(const ExprPtr&, int, int, int,                  \
                                                                       const ResolutionOptions&, long long);          \
    template std::vector<long long> res0_ext_ranks(const Resolution<S>&, const ModulePtr<S>&, int, bool,              \
                                                   const ResolutionOptions&);                                          \
    template std::vector<long long> derived_adjoint_dims<S>(const ExprPtr&, int, int, int, const ResolutionOptions&,   \
                                                            long long);                                                \
    template bool yoneda_check<S>(const ExprPtr&, int, int, bool, long long);                                          \
    template bool trace_form_nondegenerate<S>(const SchurSuperalgebra&);                                               \
    template std::string module_hash(const Module<S>&);

TWB_FOR_EACH_FIELD(TWB_INSTANTIATE_HOMOLOGY)

} // namespace twb
