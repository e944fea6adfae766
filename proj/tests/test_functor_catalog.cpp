#include "twb/functor_catalog.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace twb;

namespace {

long long choose(long long n, long long k)
{
    if (k < 0 || k > n)
        return 0;
    long long c = 1;
    for (long long i = 1; i <= k; ++i)
        c = c * (n - k + i) / i;
    return c;
}

// multisets of size k from n things
long long multichoose(long long n, long long k)
{
    return k == 0 ? 1 : choose(n + k - 1, k);
}

long long gamma_dim(int m, int n, int d)
{
    long long s = 0;
    for (int a = 0; a <= d; ++a)
        s += multichoose(m, a) * choose(n, d - a);
    return s;
}

long long ext_dim(int m, int n, int d)
{
    long long s = 0;
    for (int a = 0; a <= d; ++a)
        s += choose(m, a) * multichoose(n, d - a);
    return s;
}

template <class S>
std::map<int, long long> graded_dims(const Module<S>& m)
{
    std::map<int, long long> g;
    for (Index i = 0; i < m.dim(); ++i)
        ++g[m.degree(i)];
    return g;
}

ExprPtr P(const char* s) { return parse_functor(s); }

} // namespace

TEST_CASE("parse and print")
{
    CHECK(to_string(P("S^2")) == "sym^2");
    CHECK(to_string(P("Gamma^3")) == "gamma^3");
    CHECK(to_string(P("twist0{1}(S^2)")) == "twist0{1}(sym^2)");
    CHECK(to_string(P("param{Ebold,1}(I)")) == "param{Ebold,1,8}(I)");
    for (const char* s : {"I", "k", "gamma^2 * lambda^1", "dual(weyl{2,1})", "param{Ebold,1,4;k^2}(sym^2)",
                          "twist{2}(I)", "param{k^1|1}(tensor^2)", "schur{1,1,1}"}) {
        const auto e = P(s);
        CHECK(to_string(P(to_string(e).c_str())) == to_string(e));
    }
    CHECK_THROWS_AS(P("gamma^"), ParseError);
    CHECK_THROWS_AS(P("foo"), ParseError);
    CHECK_THROWS_AS(P("twist0{1}(I"), ParseError);
    CHECK_THROWS_AS(P("weyl{4}"), UnsupportedExpr);
}

TEST_CASE("degrees")
{
    CHECK(degree(P("k"), 3) == 0);
    CHECK(degree(P("gamma^2 * I"), 3) == 3);
    CHECK(degree(P("twist0{1}(sym^2)"), 3) == 6);
    CHECK(degree(P("twist0{2}(I)"), 5) == 25);
    CHECK(degree(P("param{Ebold,1}(sym^2)"), 3) == 2);
}

TEST_CASE("normal form")
{
    CHECK(to_string(normalize(P("dual(gamma^2)"))) == "sym^2");
    CHECK(to_string(normalize(P("I * k * I"))) == "I * I");
    CHECK(to_string(normalize(P("twist{1}(twist{2}(I))"))) == "twist{3}(I)");
    CHECK(to_string(normalize(P("twist0{0}(I)"))) == "I");
    CHECK(to_string(normalize(P("dual(weyl{2,1})"))) == "schur{2,1}");
}

TEST_CASE("kuhn duality on expressions")
{
    CHECK(to_string(kuhn_dual(P("gamma^2"))) == "sym^2");
    CHECK(to_string(kuhn_dual(P("weyl{2,1}"))) == "schur{2,1}");
    for (int d = 1; d <= 3; ++d)
        for (const auto& f : catalog(d))
            CHECK(same_expr(kuhn_dual(kuhn_dual(f)), normalize(f)));
}

TEST_CASE("evaluation dimensions")
{
    CHECK(evaluate<F3>(P("I"), 3, 3)->dim() == 6);
    CHECK(evaluate<F3>(P("twist0{1}(I)"), 3, 3)->dim() == 3);
    CHECK(evaluate<F3>(P("sym^2"), 1, 1)->dim() == 2);
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 0}, {3, 0}, {1, 1}, {2, 1}, {1, 2}})
        for (int d = 1; d <= 3; ++d) {
            CHECK(evaluate<F3>(power_functor(PowerKind::gamma, d), m, n)->dim() == gamma_dim(m, n, d));
            CHECK(evaluate<F3>(power_functor(PowerKind::sym, d), m, n)->dim() == gamma_dim(m, n, d));
            CHECK(evaluate<F3>(power_functor(PowerKind::ext, d), m, n)->dim() == ext_dim(m, n, d));
        }
    for (int d = 1; d <= 3; ++d)
        for (const auto& f : catalog(d))
            for (auto [m, n] : std::vector<std::pair<int, int>>{{d, 0}, {2, 1}, {1, 1}}) {
                const long long e = expected_dim(f, m, n, 3);
                if (e >= 0)
                    CHECK(evaluate<F3>(f, m, n)->dim() == e);
            }
}

TEST_CASE("weyl and schur functors")
{
    // hook-content dimensions at k^3 and Kuhn duality at k^{2|1}
    CHECK(evaluate<F5>(P("weyl{2,1}"), 3, 0)->dim() == 8);
    CHECK(evaluate<F5>(P("schur{2,1}"), 3, 0)->dim() == 8);
    CHECK(evaluate<F3>(P("weyl{1,1,1}"), 3, 0)->dim() == 1);
    CHECK(evaluate<F3>(P("schur{1,1,1}"), 2, 1)->dim() == evaluate<F3>(P("weyl{1,1,1}"), 2, 1)->dim());
    CHECK(evaluate<F3>(P("schur{2,1}"), 2, 1)->dim() == evaluate<F3>(P("weyl{2,1}"), 2, 1)->dim());
}

TEST_CASE("evaluated modules satisfy the algebra relations")
{
    std::mt19937_64 rng(9);
    for (const char* s : {"gamma^2", "lambda^2 * I", "twist0{1}(I)", "weyl{2,1}", "param{k^1|1}(sym^2)"}) {
        CAPTURE(s);
        CHECK(check_module_relations(*evaluate<F3>(P(s), 2, 1), 40, rng));
    }
}

TEST_CASE("kuhn duality on dimensions")
{
    for (int d = 1; d <= 3; ++d)
        for (const auto& f : catalog(d))
            for (auto [m, n] : std::vector<std::pair<int, int>>{{d, 0}, {1, 1}, {2, 1}})
                CHECK(evaluate<F3>(f, m, n)->dim() == evaluate<F3>(kuhn_dual(f), m, n)->dim());
}

TEST_CASE("parametrized functors carry a grading")
{
    // I(E ⊗ k) has the graded dims of E itself
    auto m = evaluate<F3>(P("param{Ebold,1,6}(I)"), 1, 0);
    const auto g = graded_dims(*m);
    CHECK(g == std::map<int, long long>{{0, 1}, {2, 1}, {4, 1}, {6, 1}});

    // S^2(U ⊗ k) for U with one vector in degrees 0 and 2: monomials of degree 0, 2, 4
    auto s2 = evaluate<F3>(parametrize(P("sym^2"), ParamSpec::yoneda(true, 1, 2)), 1, 0);
    CHECK(graded_dims(*s2) == std::map<int, long long>{{0, 1}, {2, 1}, {4, 1}});
    CHECK(graded_piece(s2, 2)->dim() == 1);

    // graded pieces exhaust the module
    auto big = evaluate<F3>(P("param{Ebold,1,4}(sym^2)"), 2, 0);
    long long total = 0;
    for (auto [t, k] : graded_dims(*big))
        total += k;
    CHECK(total == big->dim());

    // raising the truncation leaves low degrees alone
    auto lo = graded_dims(*evaluate<F3>(P("param{Ebold,1,4}(sym^2)"), 2, 0));
    auto hi = graded_dims(*evaluate<F3>(P("param{Ebold,1,6}(sym^2)"), 2, 0));
    for (int t = 0; t <= 4; ++t)
        CHECK(lo[t] == hi[t]);

    CHECK_THROWS_AS(graded_piece(big, 5), TruncationTooSmall);
}

TEST_CASE("restriction to even spaces")
{
    CHECK(to_string(res0(P("twist0{1}(I)"))) == "twist{1}(I)");
    CHECK(to_string(res0(P("gamma^2 * I"))) == "gamma^2 * I");
    CHECK(evaluate<F3>(res0(P("twist0{1}(I)")), 3, 0)->dim() == 3);
    CHECK(evaluate<F3>(res0(P("gamma^2 * lambda^1")), 3, 0)->dim() ==
          evaluate<F3>(P("gamma^2"), 3, 0)->dim() * evaluate<F3>(P("lambda^1"), 3, 0)->dim());
    CHECK_THROWS_AS(res0(P("param{k^0|1}(I)")), UnsupportedExpr);
    // res0(I_0^(2))(k^3) = I^(2)(k^3)
    CHECK(expected_dim(res0(P("twist0{2}(I)")), 3, 0, 3) == 3);
    CHECK(expected_dim(P("twist0{2}(I)"), 3, 3, 3) == 3);
}

TEST_CASE("exponential property of divided powers")
{
    for (int v = 1; v <= 3; ++v)
        for (int d = 1; d <= 3; ++d)
            for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {2, 1}}) {
                long long sum = 0;
                for (const auto& lambda : enumerate(v, d)) {
                    long long prod = 1;
                    for (int part : lambda.parts)
                        prod *= gamma_dim(m, n, part);
                    sum += prod;
                }
                const auto gv = parametrize(power_functor(PowerKind::gamma, d), ParamSpec::space(v, 0));
                CHECK(evaluate<F3>(gv, m, n)->dim() == sum);
            }
}

TEST_CASE("twist on super spaces is rejected")
{
    CHECK_THROWS_AS(evaluate<F3>(P("twist{1}(I)"), 3, 3), UnsupportedExpr);
    CHECK(evaluate<F3>(P("twist{1}(I)"), 3, 0)->dim() == 3);
}
