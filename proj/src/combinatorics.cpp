#include "twb/combinatorics.hpp"

#include "twb/field.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace twb {

long long binomial(long long n, long long k)
{
    if (k == 0)
        return 1;
    if (n < 0 || k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

long long ipow(long long base, int exp)
{
    long long r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

int Composition::degree() const
{
    return std::accumulate(parts.begin(), parts.end(), 0);
}

Composition Composition::trimmed() const
{
    Composition c = *this;
    while (!c.parts.empty() && c.parts.back() == 0)
        c.parts.pop_back();
    return c;
}

std::string Composition::str() const
{
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i)
        s += (i ? "," : "") + std::to_string(parts[i]);
    return s + ")";
}

namespace {

void fill(int n, int d, std::vector<int>& cur, std::vector<Composition>& out)
{
    if (int(cur.size()) == n - 1) {
        cur.push_back(d);
        out.emplace_back(cur);
        cur.pop_back();
        return;
    }
    for (int a = d; a >= 0; --a) {
        cur.push_back(a);
        fill(n, d - a, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Composition> enumerate(int n, int d)
{
    if (n < 1 || d < 0)
        throw std::invalid_argument("enumerate: need n >= 1 and d >= 0");
    std::vector<Composition> out;
    std::vector<int> cur;
    fill(n, d, cur, out);
    return out;
}

long long weight(const Composition& lambda)
{
    long long w = 0;
    for (size_t i = 0; i < lambda.parts.size(); ++i)
        w += 2LL * static_cast<long long>(i) * lambda.parts[i];
    return w;
}

long long scaled_weight(const Composition& lambda, int p, int r)
{
    if (r < 1)
        throw std::invalid_argument("scaled_weight: r >= 1 expected");
    return ipow(p, 2 * (r - 1)) * weight(lambda);
}

bool is_bounded(const Composition& lambda, int n)
{
    for (size_t i = size_t(std::max(n, 0)); i < lambda.parts.size(); ++i)
        if (lambda.parts[i] != 0)
            return false;
    return true;
}

namespace {

void fill_bounded(int d, long long budget, size_t index, size_t support, std::vector<int>& cur,
                  std::vector<Composition>& out)
{
    if (index + 1 == support) {
        // all remaining mass on index 0 is handled by the caller ordering; here place rest at `index`
        const long long w = 2LL * static_cast<long long>(index) * d;
        if (w <= budget) {
            cur.push_back(d);
            out.emplace_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int a = d; a >= 0; --a) {
        const long long w = 2LL * static_cast<long long>(index) * a;
        if (w > budget)
            continue;
        cur.push_back(a);
        fill_bounded(d - a, budget - w, index + 1, support, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Composition> enumerate_infinite(int d, long long max_weight)
{
    if (d < 0 || max_weight < 0)
        throw std::invalid_argument("enumerate_infinite: negative argument");
    const size_t support = size_t(max_weight / 2) + 1;
    std::vector<Composition> raw;
    std::vector<int> cur;
    fill_bounded(d, max_weight, 0, support, cur, raw);
    std::vector<Composition> out;
    out.reserve(raw.size());
    for (auto& c : raw)
        out.push_back(c.trimmed());
    return out;
}

const char* to_string(Provenance p)
{
    return p == Provenance::computed ? "computed" : "assumed";
}

long long GradedDims::at(int t) const
{
    auto it = dims.find(t);
    return it == dims.end() ? 0 : it->second;
}

Provenance GradedDims::provenance_at(int t) const
{
    auto it = provenance.find(t);
    return it == provenance.end() ? Provenance::computed : it->second;
}

bool GradedDims::any_assumed(int up_to) const
{
    for (int t = 0; t <= up_to; ++t)
        if (provenance_at(t) == Provenance::assumed)
            return true;
    return false;
}

void GradedDims::set(int t, long long dim, Provenance p)
{
    dims[t] = dim;
    provenance[t] = p;
    max_degree = std::max(max_degree, t);
}

std::vector<long long> GradedDims::as_vector(int up_to) const
{
    std::vector<long long> v;
    for (int t = 0; t <= up_to; ++t)
        v.push_back(at(t));
    return v;
}

long long GradedDims::total(int up_to) const
{
    long long s = 0;
    for (int t = 0; t <= up_to; ++t)
        s += at(t);
    return s;
}

bool yoneda_entry_computed(int p, int r, int t)
{
    return p == 3 && r == 1 && t <= 7;
}

GradedDims yoneda_dims(int p, int r, bool super, int max_degree)
{
    if (p < 3 || !is_prime(std::uint32_t(p)))
        throw std::invalid_argument("yoneda_dims: odd prime expected");
    if (r < 1)
        throw std::invalid_argument("yoneda_dims: r >= 1 expected");
    GradedDims g;
    const long long top = 2 * ipow(p, r) - 2;
    for (int t = 0; t <= max_degree; ++t) {
        long long d = (t % 2 == 0) ? 1 : 0;
        if (!super && t > top)
            d = 0;
        g.set(t, d, yoneda_entry_computed(p, r, t) ? Provenance::computed : Provenance::assumed);
    }
    g.max_degree = max_degree;
    return g;
}

} // namespace twb
