#include "twb/schur_algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace twb {

namespace {

std::uint64_t multiset_key(std::vector<int> codes, int base)
{
    std::sort(codes.begin(), codes.end());
    std::uint64_t key = 0;
    for (int c : codes)
        key = key * std::uint64_t(base) + std::uint64_t(c);
    return key;
}

std::uint64_t content_key(const std::vector<int>& content, int base)
{
    std::uint64_t key = 0;
    for (int c : content)
        key = key * std::uint64_t(base) + std::uint64_t(c);
    return key;
}

} // namespace

long long schur_dim(int m, int n, int D)
{
    return power_dim(PowerKind::gamma, m * m + n * n, 2 * m * n, D);
}

std::uint8_t SchurSuperalgebra::pair_parity(int code) const
{
    const int N = letters();
    return std::uint8_t(((code / N) >= m_) ^ ((code % N) >= m_));
}

std::shared_ptr<const SchurSuperalgebra> SchurSuperalgebra::build(int m, int n, int D, int p, long long cap)
{
    if (p < 3 || !is_prime(std::uint32_t(p)))
        throw std::invalid_argument("Schur algebra: odd prime characteristic expected");
    if (m < 0 || n < 0 || D < 0 || m + n == 0)
        throw std::invalid_argument("Schur algebra: bad dimensions");
    const long long words = ipow(m + n, D);
    if (words > cap)
        throw ResourceExceeded("schur_build", "tensor dimension (" + std::to_string(m + n) + ")^" + std::to_string(D) +
                                                  " = " + std::to_string(words) + " exceeds cap " + std::to_string(cap));
    std::shared_ptr<SchurSuperalgebra> a(new SchurSuperalgebra());
    a->m_ = m;
    a->n_ = n;
    a->D_ = D;
    a->p_ = p;
    a->space_ = SuperSpace::standard(m, n);
    a->enumerate_basis();
    a->build_operators();
    a->choose_generators();
    return a;
}

void SchurSuperalgebra::enumerate_basis()
{
    const int N = letters();
    SuperSpace end_space;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            end_space.labels.push_back("E" + std::to_string(i) + std::to_string(j));
            end_space.parity.push_back(pair_parity(i * N + j));
        }
    MonomialBasis b = build_power(PowerKind::gamma, end_space, D_);
    pairs_ = b.monomials;
    parity_ = b.parity;

    weights_ = enumerate(N, D_);
    for (size_t w = 0; w < weights_.size(); ++w)
        weight_index_.emplace(content_key(weights_[w].parts, D_ + 1), int(w));

    const int W = int(weights_.size());
    idempotents_.assign(size_t(W), -1);
    columns_.assign(size_t(W), {});
    blocks_.assign(size_t(W) * size_t(W), {});
    for (size_t k = 0; k < pairs_.size(); ++k) {
        std::vector<int> row(static_cast<size_t>(N), 0), col(static_cast<size_t>(N), 0);
        bool diagonal = true;
        for (int c : pairs_[k]) {
            ++row[size_t(c / N)];
            ++col[size_t(c % N)];
            diagonal = diagonal && (c / N == c % N);
        }
        const int rw = weight_index_.at(content_key(row, D_ + 1));
        const int cw = weight_index_.at(content_key(col, D_ + 1));
        rowwt_.push_back(rw);
        colwt_.push_back(cw);
        if (diagonal)
            idempotents_[size_t(cw)] = int(k);
        column_pos_.push_back(int(columns_[size_t(cw)].size()));
        columns_[size_t(cw)].push_back(int(k));
        blocks_[size_t(rw) * size_t(W) + size_t(cw)].push_back(int(k));
        index_.emplace(multiset_key(pairs_[k], N * N), int(k));
    }
}

int SchurSuperalgebra::index_of(std::vector<int> pair_codes) const
{
    if (int(pair_codes.size()) != D_)
        return -1;
    auto it = index_.find(multiset_key(std::move(pair_codes), letters() * letters()));
    return it == index_.end() ? -1 : it->second;
}

int SchurSuperalgebra::weight_index(const Composition& c) const
{
    std::vector<int> parts(size_t(letters()), 0);
    for (size_t i = 0; i < c.parts.size(); ++i) {
        if (c.parts[i] == 0)
            continue;
        if (i >= parts.size())
            return -1;
        parts[i] = c.parts[i];
    }
    if (std::accumulate(parts.begin(), parts.end(), 0) != D_)
        return -1;
    auto it = weight_index_.find(content_key(parts, D_ + 1));
    return it == weight_index_.end() ? -1 : it->second;
}

bool SchurSuperalgebra::even_supported(int w) const
{
    const auto& parts = weights_[size_t(w)].parts;
    for (size_t i = size_t(m_); i < parts.size(); ++i)
        if (parts[i] != 0)
            return false;
    return true;
}

int SchurSuperalgebra::encode(const std::vector<int>& letters_seq) const
{
    int w = 0;
    for (int x : letters_seq)
        w = w * letters() + x;
    return w;
}

int SchurSuperalgebra::sign_of_sequence(const std::vector<int>& out_letters, const std::vector<int>& in_letters,
                                        const std::vector<std::uint8_t>& extra_parity) const
{
    const int N = letters();
    int sign = 1;
    // arrangement sign: inversions among odd pairs
    for (int a = 0; a < D_; ++a) {
        const int ca = out_letters[size_t(a)] * N + in_letters[size_t(a)];
        if (!pair_parity(ca))
            continue;
        for (int b = a + 1; b < D_; ++b) {
            const int cb = out_letters[size_t(b)] * N + in_letters[size_t(b)];
            if (pair_parity(cb) && ca > cb)
                sign = -sign;
        }
    }
    // application sign: each factor passes the letters before it
    int passed = 0;
    for (int l = 0; l < D_; ++l) {
        const int c = out_letters[size_t(l)] * N + in_letters[size_t(l)];
        const int extra = extra_parity.empty() ? 0 : extra_parity[size_t(l)];
        if (pair_parity(c) && ((passed + extra) & 1))
            sign = -sign;
        passed += int(in_letters[size_t(l)] >= m_) + extra;
    }
    return sign;
}

void SchurSuperalgebra::build_operators()
{
    const int N = letters();
    word_count_ = int(ipow(N, D_));
    word_letters_.resize(size_t(word_count_) * size_t(D_));
    word_weight_.resize(size_t(word_count_));
    for (int w = 0; w < word_count_; ++w) {
        int x = w;
        std::vector<int> content(size_t(N), 0);
        for (int l = D_ - 1; l >= 0; --l) {
            word_letters_[size_t(w) * size_t(D_) + size_t(l)] = std::int8_t(x % N);
            ++content[size_t(x % N)];
            x /= N;
        }
        word_weight_[size_t(w)] = weight_index_.at(content_key(content, D_ + 1));
    }
    from_word_.assign(size_t(word_count_), {});
    arrangements_.resize(pairs_.size());
    std::vector<int> rank(static_cast<size_t>(N * N));
    {
        std::vector<int> order(static_cast<size_t>(N * N));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return pair_parity(a) < pair_parity(b); });
        for (size_t k = 0; k < order.size(); ++k)
            rank[size_t(order[k])] = int(k);
    }
    std::vector<int> out(static_cast<size_t>(D_)), in(static_cast<size_t>(D_));
    for (size_t k = 0; k < pairs_.size(); ++k) {
        std::vector<int> seq = pairs_[k];
        // seq is sorted by rank already; permute by rank to list distinct arrangements
        std::vector<int> ranks;
        for (int c : seq)
            ranks.push_back(rank[size_t(c)]);
        std::vector<int> by_rank(static_cast<size_t>(N * N));
        for (int c = 0; c < N * N; ++c)
            by_rank[size_t(rank[size_t(c)])] = c;
        do {
            for (int l = 0; l < D_; ++l) {
                const int c = by_rank[size_t(ranks[size_t(l)])];
                out[size_t(l)] = c / N;
                in[size_t(l)] = c % N;
            }
            Arrangement a{encode(in), encode(out), sign_of_sequence(out, in)};
            from_word_[size_t(a.in)].emplace_back(int(k), int(arrangements_[k].size()));
            arrangements_[k].push_back(a);
        } while (std::next_permutation(ranks.begin(), ranks.end()));
    }
}

int SchurSuperalgebra::index_at(int out, int in) const
{
    const int N = letters();
    std::vector<int> codes(static_cast<size_t>(D_));
    for (int l = 0; l < D_; ++l)
        codes[size_t(l)] = letter(out, l) * N + letter(in, l);
    return index_of(std::move(codes));
}

int SchurSuperalgebra::position_sign(int out, int in) const
{
    std::vector<int> o(static_cast<size_t>(D_)), i(static_cast<size_t>(D_));
    for (int l = 0; l < D_; ++l) {
        o[size_t(l)] = letter(out, l);
        i[size_t(l)] = letter(in, l);
    }
    return sign_of_sequence(o, i);
}

const IntCoords& SchurSuperalgebra::product(int a, int b) const
{
    static const IntCoords empty;
    if (colwt(a) != rowwt(b))
        return empty;
    const std::uint64_t key = std::uint64_t(a) * std::uint64_t(dim()) + std::uint64_t(b);
    {
        std::lock_guard<std::mutex> lock(product_mutex_);
        auto it = products_.find(key);
        if (it != products_.end())
            return it->second;
    }
    std::map<std::pair<int, int>, long long> x;
    for (const auto& beta : arrangements(b))
        for (const auto& alpha : arrangements(a))
            if (alpha.in == beta.out)
                x[{alpha.out, beta.in}] += alpha.sign * beta.sign;
    std::map<int, long long> coef;
    size_t support = 0;
    for (const auto& [pos, v] : x) {
        if (v == 0)
            continue;
        ++support;
        const int c = index_at(pos.first, pos.second);
        if (c < 0)
            throw CoordinateFailure("product leaves the span of the basis operators");
        const auto& canon = arrangements(c).front();
        if (canon.out == pos.first && canon.in == pos.second)
            coef[c] = v * canon.sign;
        else
            coef.emplace(c, 0);
    }
    IntCoords result;
    size_t expected = 0;
    for (const auto& [c, v] : coef) {
        if (v == 0)
            throw CoordinateFailure("product has a support without its canonical entry");
        for (const auto& alpha : arrangements(c)) {
            auto it = x.find({alpha.out, alpha.in});
            if (it == x.end() || it->second != v * alpha.sign)
                throw CoordinateFailure("product is not a combination of basis operators");
        }
        expected += arrangements(c).size();
        result.emplace_back(c, v);
    }
    if (expected != support)
        throw CoordinateFailure("product has stray entries");
    std::lock_guard<std::mutex> lock(product_mutex_);
    return products_.emplace(key, std::move(result)).first->second;
}

template <class S>
Vector<S> SchurSuperalgebra::multiply(const Vector<S>& x, const Vector<S>& y) const
{
    Vector<S> out = Vector<S>::Zero(dim());
    std::vector<int> nx, ny;
    for (Index i = 0; i < x.size(); ++i)
        if (!x(i).is_zero())
            nx.push_back(int(i));
    for (Index i = 0; i < y.size(); ++i)
        if (!y(i).is_zero())
            ny.push_back(int(i));
    for (int a : nx)
        for (int b : ny) {
            if (colwt(a) != rowwt(b))
                continue;
            const S c = x(a) * y(b);
            for (const auto& [k, v] : product(a, b))
                out(k) += c * S(v);
        }
    return out;
}

template <class S>
SparseMatrix<S> SchurSuperalgebra::op(int k) const
{
    std::vector<Eigen::Triplet<S>> trip;
    for (const auto& a : arrangements(k))
        trip.emplace_back(a.out, a.in, sign_scalar<S>(a.sign));
    SparseMatrix<S> m(word_count_, word_count_);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

template <class S>
SparseMatrix<S> SchurSuperalgebra::op(const Vector<S>& x) const
{
    std::vector<Eigen::Triplet<S>> trip;
    for (Index k = 0; k < x.size(); ++k) {
        if (x(k).is_zero())
            continue;
        for (const auto& a : arrangements(int(k)))
            trip.emplace_back(a.out, a.in, x(k) * sign_scalar<S>(a.sign));
    }
    SparseMatrix<S> m(word_count_, word_count_);
    m.setFromTriplets(trip.begin(), trip.end());
    prune_zeros(m);
    return m;
}

template <class S>
Vector<S> SchurSuperalgebra::coordinates(const SparseMatrix<S>& x) const
{
    Vector<S> c = Vector<S>::Zero(dim());
    for (Index col = 0; col < x.outerSize(); ++col)
        for (typename SparseMatrix<S>::InnerIterator it(x, col); it; ++it) {
            if (it.value().is_zero())
                continue;
            const int k = index_at(int(it.row()), int(it.col()));
            if (k < 0)
                throw CoordinateFailure("operator entry outside every basis support");
            const auto& canon = arrangements(k).front();
            if (canon.out == it.row() && canon.in == it.col())
                c(k) = it.value() * sign_scalar<S>(canon.sign);
        }
    SparseMatrix<S> diff = op(c) - x;
    prune_zeros(diff);
    if (diff.nonZeros() != 0)
        throw CoordinateFailure("operator is not in the span of the basis operators");
    return c;
}

template <class S>
Vector<S> SchurSuperalgebra::unit() const
{
    Vector<S> u = Vector<S>::Zero(dim());
    for (int k : idempotents_)
        u(k) = S(1);
    return u;
}

Index SchurSuperalgebra::operator_span_rank() const
{
    return with_field(std::uint32_t(p_), [&](auto s) -> Index {
        using S = decltype(s);
        std::vector<Eigen::Triplet<S>> trip;
        for (int k = 0; k < int(dim()); ++k)
            for (const auto& a : arrangements(k))
                trip.emplace_back(k, a.out * word_count_ + a.in, sign_scalar<S>(a.sign));
        SparseMatrix<S> m(dim(), Index(word_count_) * word_count_);
        m.setFromTriplets(trip.begin(), trip.end());
        return rank(m);
    });
}

void SchurSuperalgebra::choose_generators()
{
    with_field(std::uint32_t(p_), [&](auto s) {
        choose_generators_impl<decltype(s)>();
        return 0;
    });
}

template <class S>
void SchurSuperalgebra::choose_generators_impl()
{
    const int W = weight_count();
    const int N = letters();
    std::vector<Echelon<S>> span;
    std::vector<std::vector<Vector<S>>> vecs(static_cast<size_t>(W));
    for (int w = 0; w < W; ++w)
        span.emplace_back(Index(columns_[size_t(w)].size()));
    std::vector<std::vector<int>> gens_by_col(static_cast<size_t>(W));
    std::deque<std::pair<int, size_t>> queue;

    auto push = [&](int w, Vector<S> v) {
        Vector<S> keep = v;
        if (span[size_t(w)].add(std::move(v))) {
            vecs[size_t(w)].push_back(std::move(keep));
            queue.emplace_back(w, vecs[size_t(w)].size() - 1);
        }
    };
    // g·v for v in column w, restricted to one generator
    auto act = [&](int g, int w, const Vector<S>& v) {
        Vector<S> out = Vector<S>::Zero(v.size());
        bool any = false;
        const auto& col = columns_[size_t(w)];
        for (Index i = 0; i < v.size(); ++i) {
            if (v(i).is_zero())
                continue;
            const int c = col[size_t(i)];
            if (rowwt(c) != colwt(g))
                continue;
            for (const auto& [k, val] : product(g, c)) {
                out(column_pos_[size_t(k)]) += v(i) * S(val);
                any = true;
            }
        }
        return std::make_pair(any, out);
    };
    auto drain = [&]() {
        while (!queue.empty()) {
            auto [w, idx] = queue.front();
            queue.pop_front();
            const Vector<S> v = vecs[size_t(w)][idx];
            // row weight of v is homogeneous
            int row = -1;
            for (Index i = 0; i < v.size() && row < 0; ++i)
                if (!v(i).is_zero())
                    row = rowwt(columns_[size_t(w)][size_t(i)]);
            if (row < 0)
                continue;
            for (int g : gens_by_col[size_t(row)]) {
                auto [any, out] = act(g, w, v);
                if (any)
                    push(w, std::move(out));
            }
        }
    };
    auto add_generator = [&](int g) {
        generators_.push_back(g);
        gens_by_col[size_t(colwt(g))].push_back(g);
        for (int w = 0; w < W; ++w) {
            const size_t count = vecs[size_t(w)].size();
            for (size_t i = 0; i < count; ++i) {
                auto [any, out] = act(g, w, vecs[size_t(w)][i]);
                if (any)
                    push(w, std::move(out));
            }
        }
        drain();
    };
    auto member = [&](int k) {
        const int w = colwt(k);
        Vector<S> e = Vector<S>::Zero(Index(columns_[size_t(w)].size()));
        e(column_pos_[size_t(k)]) = S(1);
        return span[size_t(w)].contains(e);
    };

    for (int w = 0; w < W; ++w) {
        Vector<S> e = Vector<S>::Zero(Index(columns_[size_t(w)].size()));
        e(column_pos_[size_t(idempotents_[size_t(w)])]) = S(1);
        push(w, std::move(e));
    }
    drain();

    // divided powers of simple root vectors times diagonal completions
    std::vector<int> candidates;
    for (int k = 1; k <= D_; ++k)
        for (int i = 0; i + 1 < N; ++i) {
            const bool odd_root = (i + 1 == m_);
            if (odd_root && k > 1)
                continue;
            for (int dir = 0; dir < 2; ++dir) {
                const int code = dir == 0 ? i * N + (i + 1) : (i + 1) * N + i;
                for (const auto& comp : enumerate(N, D_ - k)) {
                    std::vector<int> codes(size_t(k), code);
                    for (int j = 0; j < N; ++j)
                        for (int t = 0; t < comp.parts[size_t(j)]; ++t)
                            codes.push_back(j * N + j);
                    const int idx = index_of(codes);
                    if (idx >= 0)
                        candidates.push_back(idx);
                }
            }
        }
    for (int g : candidates)
        if (!member(g))
            add_generator(g);
    for (int k = 0; k < int(dim()); ++k)
        if (!member(k))
            add_generator(k);

    generated_dim_ = 0;
    for (int w = 0; w < W; ++w)
        generated_dim_ += span[size_t(w)].dimension();
    if (generated_dim_ != dim())
        throw CoordinateFailure("generating set certification failed");
}

AlgebraPtr schur_algebra(int m, int n, int D, int p, long long cap)
{
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int, int>, AlgebraPtr> cache;
    const auto key = std::make_tuple(m, n, D, p);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    auto a = SchurSuperalgebra::build(m, n, D, p, cap);
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, a).first->second;
}

template <class S>
TwistPushforward<S>::TwistPushforward(AlgebraPtr big, AlgebraPtr small, int r)
    : big_(std::move(big)), small_(std::move(small)), r_(r)
{
    if (r < 0)
        throw std::invalid_argument("twist pushforward: r >= 0 expected");
    if (big_->characteristic() != int(S::modulus) || small_->characteristic() != int(S::modulus))
        throw std::invalid_argument("twist pushforward: characteristic mismatch");
    q_ = int(ipow(S::modulus, r));
    const int d = small_->degree();
    const int m = big_->m();
    if (small_->n() != 0 || small_->m() != m || big_->degree() != d * q_)
        throw std::invalid_argument("twist pushforward: expected S(m|n, d p^r) and S(m, d)");

    images_.assign(size_t(big_->dim()), {});
    std::vector<std::map<std::pair<int, int>, S>> entries(static_cast<size_t>(big_->dim()));
    std::map<std::tuple<int, int, std::vector<int>>, S> leftover;
    const SuperSpace& V = big_->space();

    std::vector<int> in_letters(static_cast<size_t>(d * q_)), block;
    for (int t = 0; t < small_->word_count(); ++t) {
        for (int l = 0; l < d; ++l)
            for (int c = 0; c < q_; ++c)
                in_letters[size_t(l * q_ + c)] = small_->letter(t, l);
        const int word = big_->encode(in_letters);
        for (const auto& [k, ai] : big_->arrangements_from(word)) {
            const auto& arr = big_->arrangements(k)[size_t(ai)];
            int sign = arr.sign;
            bool zero = false, power = true;
            std::vector<int> sorted, out_small(static_cast<size_t>(d));
            for (int l = 0; l < d && !zero; ++l) {
                block.clear();
                for (int c = 0; c < q_; ++c)
                    block.push_back(big_->letter(arr.out, l * q_ + c));
                sign *= koszul_sort(block, V);
                for (size_t c = 1; c < block.size(); ++c)
                    if (block[c] == block[c - 1] && V.parity[size_t(block[c])])
                        zero = true;
                if (block.front() != block.back())
                    power = false;
                else
                    out_small[size_t(l)] = block.front();
                sorted.insert(sorted.end(), block.begin(), block.end());
            }
            if (zero)
                continue;
            if (power)
                entries[size_t(k)][{small_->encode(out_small), t}] += sign_scalar<S>(sign);
            else
                leftover[{k, t, sorted}] += sign_scalar<S>(sign);
        }
    }
    for (const auto& [key, v] : leftover)
        if (!v.is_zero())
            throw SubfunctorFailure("span of p^r-th powers is not stable under basis element " +
                                    std::to_string(std::get<0>(key)));

    for (size_t k = 0; k < entries.size(); ++k) {
        std::map<int, S> coords;
        for (const auto& [pos, v] : entries[k]) {
            if (v.is_zero())
                continue;
            const int c = small_->index_at(pos.first, pos.second);
            if (c < 0)
                throw CoordinateFailure("twisted operator outside the small Schur algebra");
            const auto& canon = small_->arrangements(c).front();
            if (canon.out == pos.first && canon.in == pos.second)
                coords[c] = v * sign_scalar<S>(canon.sign);
            else
                coords.emplace(c, S(0));
        }
        for (const auto& [c, v] : coords) {
            for (const auto& a : small_->arrangements(c)) {
                auto it = entries[k].find({a.out, a.in});
                const S have = it == entries[k].end() ? S(0) : it->second;
                if (have != v * sign_scalar<S>(a.sign))
                    throw CoordinateFailure("twisted operator is not in the small Schur algebra");
            }
            if (!v.is_zero())
                images_[k].emplace_back(c, v);
        }
    }

    for (const auto& lambda : small_->weights()) {
        Composition scaled;
        for (int x : lambda.parts)
            scaled.parts.push_back(x * q_);
        weight_map_.push_back(big_->weight_index(scaled));
    }
}

template <class S>
Vector<S> TwistPushforward<S>::apply(const Vector<S>& x) const
{
    Vector<S> y = Vector<S>::Zero(small_->dim());
    for (Index k = 0; k < x.size(); ++k)
        if (!x(k).is_zero())
            for (const auto& [c, v] : images_[size_t(k)])
                y(c) += x(k) * v;
    return y;
}

template <class S>
Index TwistPushforward<S>::image_rank() const
{
    Echelon<S> e(small_->dim());
    for (const auto& img : images_) {
        Vector<S> v = Vector<S>::Zero(small_->dim());
        for (const auto& [c, val] : img)
            v(c) = val;
        e.add(std::move(v));
    }
    return e.dimension();
}

#define TWB_INSTANTIATE_ALGEBRA(S)                                                          \
    template Vector<S> SchurSuperalgebra::multiply(const Vector<S>&, const Vector<S>&) const; \
    template SparseMatrix<S> SchurSuperalgebra::op<S>(int) const;                            \
    template SparseMatrix<S> SchurSuperalgebra::op(const Vector<S>&) const;                  \
    template Vector<S> SchurSuperalgebra::coordinates(const SparseMatrix<S>&) const;         \
    template Vector<S> SchurSuperalgebra::unit<S>() const;                                   \
    template class TwistPushforward<S>;

TWB_FOR_EACH_FIELD(TWB_INSTANTIATE_ALGEBRA)

} // namespace twb
