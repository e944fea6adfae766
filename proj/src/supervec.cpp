#include "twb/supervec.hpp"

#include "twb/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace twb {

SuperSpace SuperSpace::standard(int m, int n, const std::string& prefix)
{
    if (m < 0 || n < 0)
        throw std::invalid_argument("negative dimension");
    SuperSpace s;
    for (int i = 0; i < m + n; ++i) {
        s.labels.push_back(prefix + std::to_string(i));
        s.parity.push_back(i < m ? 0 : 1);
    }
    return s;
}

SuperSpace SuperSpace::graded(const std::vector<long long>& dims, const std::string& prefix)
{
    SuperSpace s;
    for (size_t t = 0; t < dims.size(); ++t)
        for (long long k = 0; k < dims[t]; ++k) {
            s.labels.push_back(prefix + std::to_string(t) + "_" + std::to_string(k));
            s.parity.push_back(0);
            s.degree.push_back(int(t));
        }
    return s;
}

int SuperSpace::even_dim() const
{
    return int(std::count(parity.begin(), parity.end(), std::uint8_t(0)));
}

bool SuperSpace::is_graded() const
{
    return std::any_of(degree.begin(), degree.end(), [](int t) { return t != 0; });
}

std::vector<int> SuperSpace::canonical_rank() const
{
    std::vector<int> order(static_cast<size_t>(dim()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return parity[size_t(a)] < parity[size_t(b)]; });
    std::vector<int> rank(order.size());
    for (size_t k = 0; k < order.size(); ++k)
        rank[size_t(order[k])] = int(k);
    return rank;
}

SuperSpace tensor(const SuperSpace& u, const SuperSpace& v)
{
    SuperSpace s;
    const bool graded = u.is_graded() || v.is_graded();
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) {
            s.labels.push_back(u.labels[size_t(i)] + "*" + v.labels[size_t(j)]);
            s.parity.push_back(std::uint8_t(u.parity[size_t(i)] ^ v.parity[size_t(j)]));
            if (graded)
                s.degree.push_back(u.degree_of(i) + v.degree_of(j));
        }
    s.twist = std::max(u.twist, v.twist);
    return s;
}

SuperSpace dual(const SuperSpace& v)
{
    SuperSpace s = v;
    for (auto& l : s.labels)
        l += "^";
    return s;
}

SuperSpace twist_space(const SuperSpace& v, int r)
{
    if (r < 0)
        throw std::invalid_argument("negative twist");
    SuperSpace s = v;
    s.twist += r;
    return s;
}

SuperSpace even_part(const SuperSpace& v)
{
    SuperSpace s;
    s.twist = v.twist;
    for (int i = 0; i < v.dim(); ++i)
        if (v.parity[size_t(i)] == 0) {
            s.labels.push_back(v.labels[size_t(i)]);
            s.parity.push_back(0);
            if (!v.degree.empty())
                s.degree.push_back(v.degree[size_t(i)]);
        }
    return s;
}

const char* to_string(PowerKind k)
{
    switch (k) {
    case PowerKind::gamma:
        return "gamma";
    case PowerKind::sym:
        return "sym";
    case PowerKind::ext:
        return "lambda";
    case PowerKind::tensor:
        return "tensor";
    }
    return "?";
}

int koszul_sort(std::vector<int>& letters, const SuperSpace& v)
{
    const auto rank = v.canonical_rank();
    int sign = 1;
    // insertion sort; each adjacent swap contributes the Koszul sign
    for (size_t i = 1; i < letters.size(); ++i)
        for (size_t j = i; j > 0 && rank[size_t(letters[j - 1])] > rank[size_t(letters[j])]; --j) {
            sign *= swap_sign(v.parity[size_t(letters[j - 1])], v.parity[size_t(letters[j])]);
            std::swap(letters[j - 1], letters[j]);
        }
    return sign;
}

int permutation_sort_sign(std::vector<int> letters, const std::vector<int>& rank)
{
    int sign = 1;
    for (size_t i = 1; i < letters.size(); ++i)
        for (size_t j = i; j > 0 && rank[size_t(letters[j - 1])] > rank[size_t(letters[j])]; --j) {
            sign = -sign;
            std::swap(letters[j - 1], letters[j]);
        }
    return sign;
}

Index MonomialBasis::index_of(const std::vector<int>& letters) const
{
    auto it = lookup.find(letters);
    return it == lookup.end() ? -1 : it->second;
}

namespace {

void extend(const SuperSpace& v, PowerKind kind, const std::vector<int>& order, int d, size_t start,
            std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (int(cur.size()) == d) {
        out.push_back(cur);
        return;
    }
    for (size_t k = start; k < order.size(); ++k) {
        const int x = order[k];
        cur.push_back(x);
        const bool again = may_repeat(kind, v.parity[size_t(x)]);
        extend(v, kind, order, d, again ? k : k + 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

MonomialBasis build_power(PowerKind kind, const SuperSpace& v, int d)
{
    if (d < 0)
        throw std::invalid_argument("negative degree");
    MonomialBasis b;
    b.kind = kind;
    b.degree = d;
    b.space = v;
    const auto rank = v.canonical_rank();
    std::vector<int> order(static_cast<size_t>(v.dim()));
    for (int i = 0; i < v.dim(); ++i)
        order[size_t(rank[size_t(i)])] = i;
    std::vector<int> cur;
    if (kind == PowerKind::tensor) {
        long long total = 1;
        for (int k = 0; k < d; ++k)
            total *= v.dim();
        std::vector<int> word(size_t(d), 0);
        for (long long w = 0; w < total; ++w) {
            long long x = w;
            for (int k = d - 1; k >= 0; --k) {
                word[size_t(k)] = int(x % v.dim());
                x /= v.dim();
            }
            b.monomials.push_back(word);
        }
    } else {
        extend(v, kind, order, d, 0, cur, b.monomials);
    }
    for (size_t i = 0; i < b.monomials.size(); ++i) {
        std::uint8_t par = 0;
        int deg = 0;
        for (int x : b.monomials[i]) {
            par ^= v.parity[size_t(x)];
            deg += v.degree_of(x);
        }
        b.parity.push_back(par);
        b.grading.push_back(deg);
        b.lookup.emplace(b.monomials[i], Index(i));
    }
    return b;
}

long long power_dim(PowerKind kind, int m, int n, int d)
{
    long long total = 0;
    for (int a = 0; a <= d; ++a) {
        const int b = d - a;
        switch (kind) {
        case PowerKind::gamma:
        case PowerKind::sym:
            total += binomial(m + a - 1, a) * binomial(n, b);
            break;
        case PowerKind::ext:
            total += binomial(m, a) * binomial(n + b - 1, b);
            break;
        case PowerKind::tensor:
            total = 1;
            for (int k = 0; k < d; ++k)
                total *= (m + n);
            return total;
        }
    }
    return total;
}

} // namespace twb
