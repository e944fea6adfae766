#include "twb/functor_catalog.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace twb {

ParamSpec ParamSpec::yoneda(bool super, int r, int truncation)
{
    ParamComponent c;
    c.kind = ParamComponent::Kind::yoneda;
    c.super = super;
    c.r = r;
    c.truncation = truncation;
    return ParamSpec{{c}};
}

ParamSpec ParamSpec::space(int m, int n)
{
    ParamComponent c;
    c.kind = ParamComponent::Kind::space;
    c.m = m;
    c.n = n;
    return ParamSpec{{c}};
}

SuperSpace ParamSpec::to_space(int p) const
{
    SuperSpace u = SuperSpace::standard(1, 0, "1");
    for (const auto& c : components) {
        SuperSpace x;
        if (c.kind == ParamComponent::Kind::yoneda) {
            GradedDims g = yoneda_dims(p, c.r, c.super, c.truncation);
            x = SuperSpace::graded(g.as_vector(c.truncation), c.super ? "Eb" : "E");
            if (c.dualized)
                for (auto& t : x.degree)
                    t = -t;
        } else {
            x = SuperSpace::standard(c.m, c.n, c.dualized ? "u^" : "u");
        }
        u = tensor(u, x);
    }
    return u;
}

int ParamSpec::truncation() const
{
    int t = -1;
    for (const auto& c : components)
        if (c.kind == ParamComponent::Kind::yoneda)
            t = t < 0 ? c.truncation : std::min(t, c.truncation);
    return t;
}

bool ParamSpec::has_odd() const
{
    for (const auto& c : components)
        if (c.kind == ParamComponent::Kind::space && c.n > 0)
            return true;
    return false;
}

ParamSpec ParamSpec::dual() const
{
    ParamSpec d = *this;
    for (auto& c : d.components)
        c.dualized = !c.dualized;
    return d;
}

std::string ParamSpec::str() const
{
    std::string s;
    for (size_t i = 0; i < components.size(); ++i) {
        const auto& c = components[i];
        if (i)
            s += ";";
        if (c.kind == ParamComponent::Kind::yoneda)
            s += std::string(c.super ? "Ebold," : "E,") + std::to_string(c.r) + "," + std::to_string(c.truncation);
        else
            s += "k^" + std::to_string(c.m) + (c.n ? "|" + std::to_string(c.n) : "");
        if (c.dualized)
            s += "#";
    }
    return s;
}

namespace {

std::shared_ptr<FunctorExpr> node(ExprKind k)
{
    auto e = std::make_shared<FunctorExpr>();
    e->kind = k;
    return e;
}

void check_partition(const std::vector<int>& lambda)
{
    if (lambda.empty())
        throw UnsupportedExpr("empty partition");
    for (size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] <= 0 || (i && lambda[i] > lambda[i - 1]))
            throw UnsupportedExpr("not a partition");
    if (std::accumulate(lambda.begin(), lambda.end(), 0) > 3)
        throw UnsupportedExpr("weyl/schur functors are implemented for partitions of d <= 3");
}

} // namespace

ExprPtr power_functor(PowerKind kind, int d)
{
    if (d < 0)
        throw std::invalid_argument("negative degree");
    auto e = node(ExprKind::power);
    e->power = d <= 1 ? PowerKind::tensor : kind;
    e->a = d;
    return e;
}

ExprPtr identity_functor() { return power_functor(PowerKind::tensor, 1); }
ExprPtr constant_functor() { return power_functor(PowerKind::tensor, 0); }

ExprPtr tensor_of(std::vector<ExprPtr> factors)
{
    if (factors.size() == 1)
        return factors.front();
    auto e = node(ExprKind::tensor);
    e->children = std::move(factors);
    return e;
}

ExprPtr dual_of(ExprPtr f)
{
    auto e = node(ExprKind::dual);
    e->children = {std::move(f)};
    return e;
}

ExprPtr parametrize(ExprPtr f, ParamSpec u)
{
    auto e = node(ExprKind::param);
    e->children = {std::move(f)};
    e->param = std::move(u);
    return e;
}

ExprPtr twist0_of(int r, ExprPtr f)
{
    if (r < 0)
        throw std::invalid_argument("negative twist");
    auto e = node(ExprKind::twist0);
    e->r = r;
    e->children = {std::move(f)};
    return e;
}

ExprPtr twist_of(int r, ExprPtr f)
{
    if (r < 0)
        throw std::invalid_argument("negative twist");
    auto e = node(ExprKind::twist);
    e->r = r;
    e->children = {std::move(f)};
    return e;
}

ExprPtr weyl_functor(std::vector<int> partition)
{
    check_partition(partition);
    auto e = node(ExprKind::weyl);
    e->partition = std::move(partition);
    return e;
}

ExprPtr schur_functor(std::vector<int> partition)
{
    check_partition(partition);
    auto e = node(ExprKind::schur);
    e->partition = std::move(partition);
    return e;
}

namespace {

std::string partition_str(const std::vector<int>& l)
{
    std::string s;
    for (size_t i = 0; i < l.size(); ++i)
        s += (i ? "," : "") + std::to_string(l[i]);
    return s;
}

std::string render(const ExprPtr& f, bool in_tensor)
{
    switch (f->kind) {
    case ExprKind::power:
        if (f->a == 0)
            return "k";
        if (f->a == 1)
            return "I";
        return std::string(to_string(f->power)) + "^" + std::to_string(f->a);
    case ExprKind::tensor: {
        std::string s;
        for (size_t i = 0; i < f->children.size(); ++i)
            s += (i ? " * " : "") + render(f->children[i], true);
        return in_tensor ? "(" + s + ")" : s;
    }
    case ExprKind::dual:
        return "dual(" + render(f->children[0], false) + ")";
    case ExprKind::param:
        return "param{" + f->param.str() + "}(" + render(f->children[0], false) + ")";
    case ExprKind::twist0:
        return "twist0{" + std::to_string(f->r) + "}(" + render(f->children[0], false) + ")";
    case ExprKind::twist:
        return "twist{" + std::to_string(f->r) + "}(" + render(f->children[0], false) + ")";
    case ExprKind::weyl:
        return "weyl{" + partition_str(f->partition) + "}";
    case ExprKind::schur:
        return "schur{" + partition_str(f->partition) + "}";
    }
    return "?";
}

class Parser
{
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse()
    {
        ExprPtr e = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    std::string ident()
    {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }
    int integer()
    {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }
    std::vector<int> int_list()
    {
        std::vector<int> v{integer()};
        while (accept(','))
            v.push_back(integer());
        return v;
    }

    ExprPtr expr()
    {
        std::vector<ExprPtr> f{factor()};
        while (accept('*'))
            f.push_back(factor());
        return tensor_of(std::move(f));
    }

    ExprPtr wrapped()
    {
        expect('(');
        ExprPtr e = expr();
        expect(')');
        return e;
    }

    ParamComponent component()
    {
        std::string id = ident();
        ParamComponent c;
        if (id == "Ebold" || id == "E") {
            c.kind = ParamComponent::Kind::yoneda;
            c.super = id == "Ebold";
            expect(',');
            c.r = integer();
            if (accept(','))
                c.truncation = integer();
        } else if (id == "k") {
            c.kind = ParamComponent::Kind::space;
            expect('^');
            c.m = integer();
            if (accept('|'))
                c.n = integer();
        } else {
            fail("unknown parameter space '" + id + "'");
        }
        if (accept('#'))
            c.dualized = true;
        return c;
    }

    ExprPtr factor()
    {
        if (accept('('))
            {
                ExprPtr e = expr();
                expect(')');
                return e;
            }
        const std::string id = ident();
        if (id.empty())
            fail("expected a functor");
        if (id == "I")
            return identity_functor();
        if (id == "k")
            return constant_functor();
        if (id == "gamma" || id == "Gamma" || id == "sym" || id == "S" || id == "lambda" || id == "Lambda" ||
            id == "tensor") {
            expect('^');
            const int d = integer();
            PowerKind k = PowerKind::tensor;
            if (id == "gamma" || id == "Gamma")
                k = PowerKind::gamma;
            else if (id == "sym" || id == "S")
                k = PowerKind::sym;
            else if (id == "lambda" || id == "Lambda")
                k = PowerKind::ext;
            return power_functor(k, d);
        }
        if (id == "dual")
            return dual_of(wrapped());
        if (id == "twist0" || id == "twist") {
            expect('{');
            const int r = integer();
            expect('}');
            ExprPtr inner = wrapped();
            return id == "twist0" ? twist0_of(r, inner) : twist_of(r, inner);
        }
        if (id == "param") {
            expect('{');
            ParamSpec spec;
            spec.components.push_back(component());
            while (accept(';'))
                spec.components.push_back(component());
            expect('}');
            return parametrize(wrapped(), spec);
        }
        if (id == "weyl" || id == "schur") {
            expect('{');
            auto l = int_list();
            expect('}');
            return id == "weyl" ? weyl_functor(l) : schur_functor(l);
        }
        fail("unknown functor '" + id + "'");
    }

    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace

ExprPtr parse_functor(const std::string& text)
{
    return Parser(text).parse();
}

std::string to_string(const ExprPtr& f)
{
    return render(f, false);
}

int degree(const ExprPtr& f, int p)
{
    switch (f->kind) {
    case ExprKind::power:
        return f->a;
    case ExprKind::tensor: {
        int d = 0;
        for (const auto& c : f->children)
            d += degree(c, p);
        return d;
    }
    case ExprKind::dual:
    case ExprKind::param:
        return degree(f->children[0], p);
    case ExprKind::twist0:
    case ExprKind::twist:
        return int(ipow(p, f->r)) * degree(f->children[0], p);
    case ExprKind::weyl:
    case ExprKind::schur:
        return std::accumulate(f->partition.begin(), f->partition.end(), 0);
    }
    return 0;
}

bool is_super_only(const ExprPtr& f)
{
    if (f->kind == ExprKind::twist0)
        return true;
    for (const auto& c : f->children)
        if (is_super_only(c))
            return true;
    return false;
}

bool contains_twist(const ExprPtr& f)
{
    if (f->kind == ExprKind::twist0 || f->kind == ExprKind::twist)
        return true;
    for (const auto& c : f->children)
        if (contains_twist(c))
            return true;
    return false;
}

namespace {

ParamSpec compose(const ParamSpec& inner, const ParamSpec& outer)
{
    // param(outer, param(inner, F)) = F(inner ⊗ outer ⊗ -)
    ParamSpec s = inner;
    s.components.insert(s.components.end(), outer.components.begin(), outer.components.end());
    return s;
}

ExprPtr push_param(const ParamSpec& u, const ExprPtr& f)
{
    switch (f->kind) {
    case ExprKind::tensor: {
        std::vector<ExprPtr> c;
        for (const auto& x : f->children)
            c.push_back(push_param(u, x));
        return tensor_of(std::move(c));
    }
    case ExprKind::param:
        return parametrize(f->children[0], compose(f->param, u));
    case ExprKind::twist:
        return twist_of(f->r, push_param(u, f->children[0]));
    case ExprKind::twist0:
        if (u.has_odd())
            throw UnsupportedExpr("parametrizing an even twist by a space with odd part");
        return twist0_of(f->r, push_param(u, f->children[0]));
    case ExprKind::power:
        if (f->a == 0)
            return f;
        return parametrize(f, u);
    default:
        return parametrize(f, u);
    }
}

ExprPtr dual_normal(const ExprPtr& f)
{
    switch (f->kind) {
    case ExprKind::power: {
        PowerKind k = f->power;
        if (k == PowerKind::gamma)
            k = PowerKind::sym;
        else if (k == PowerKind::sym)
            k = PowerKind::gamma;
        return power_functor(k, f->a);
    }
    case ExprKind::tensor: {
        std::vector<ExprPtr> c;
        for (const auto& x : f->children)
            c.push_back(dual_normal(x));
        return tensor_of(std::move(c));
    }
    case ExprKind::param:
        return parametrize(dual_normal(f->children[0]), f->param.dual());
    case ExprKind::twist0:
        return twist0_of(f->r, dual_normal(f->children[0]));
    case ExprKind::twist:
        return twist_of(f->r, dual_normal(f->children[0]));
    case ExprKind::weyl:
        return schur_functor(f->partition);
    case ExprKind::schur:
        return weyl_functor(f->partition);
    case ExprKind::dual:
        break;
    }
    throw std::logic_error("dual_normal on a non-normal expression");
}

} // namespace

ExprPtr normalize(const ExprPtr& f)
{
    switch (f->kind) {
    case ExprKind::power:
    case ExprKind::weyl:
    case ExprKind::schur:
        return f;
    case ExprKind::tensor: {
        std::vector<ExprPtr> flat;
        for (const auto& c : f->children) {
            ExprPtr n = normalize(c);
            if (n->kind == ExprKind::tensor)
                flat.insert(flat.end(), n->children.begin(), n->children.end());
            else if (!(n->kind == ExprKind::power && n->a == 0))
                flat.push_back(n);
        }
        if (flat.empty())
            return constant_functor();
        return tensor_of(std::move(flat));
    }
    case ExprKind::dual:
        return normalize(dual_normal(normalize(f->children[0])));
    case ExprKind::param:
        return push_param(f->param, normalize(f->children[0]));
    case ExprKind::twist0:
    case ExprKind::twist: {
        ExprPtr c = normalize(f->children[0]);
        if (f->r == 0)
            return c;
        if (c->kind == ExprKind::power && c->a == 0)
            return c;
        if (is_super_only(c))
            throw UnsupportedExpr("twists apply to classical functors only");
        if (c->kind == ExprKind::twist)
            return f->kind == ExprKind::twist0 ? twist0_of(f->r + c->r, c->children[0]) : twist_of(f->r + c->r, c->children[0]);
        return f->kind == ExprKind::twist0 ? twist0_of(f->r, c) : twist_of(f->r, c);
    }
    }
    return f;
}

ExprPtr kuhn_dual(const ExprPtr& f)
{
    return normalize(dual_normal(normalize(f)));
}

namespace {

ExprPtr res0_normal(const ExprPtr& f)
{
    switch (f->kind) {
    case ExprKind::twist0:
        return twist_of(f->r, f->children[0]);
    case ExprKind::param:
        if (f->param.has_odd())
            throw UnsupportedExpr("res0 of a functor parametrized by a space with odd part");
        return parametrize(res0_normal(f->children[0]), f->param);
    case ExprKind::tensor: {
        std::vector<ExprPtr> c;
        for (const auto& x : f->children)
            c.push_back(res0_normal(x));
        return tensor_of(std::move(c));
    }
    case ExprKind::twist:
        return twist_of(f->r, res0_normal(f->children[0]));
    default:
        return f;
    }
}

long long hook_content_dim(const std::vector<int>& lambda, long long m)
{
    // Π (m + c) / h over the cells of λ
    std::vector<int> conj;
    for (int j = 0; j < lambda.front(); ++j) {
        int c = 0;
        for (int x : lambda)
            c += x > j;
        conj.push_back(c);
    }
    long long num = 1, den = 1;
    for (size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) {
            num *= m + j - static_cast<long long>(i);
            den *= (lambda[i] - j - 1) + (conj[size_t(j)] - static_cast<long long>(i) - 1) + 1;
        }
    return num / den;
}

} // namespace

ExprPtr res0(const ExprPtr& f)
{
    return normalize(res0_normal(normalize(f)));
}

long long expected_dim(const ExprPtr& f0, int m, int n, int p)
{
    const ExprPtr f = normalize(f0);
    auto param_dims = [&](const ParamSpec& u) {
        const SuperSpace s = u.to_space(p);
        return std::make_pair(s.even_dim(), s.odd_dim());
    };
    switch (f->kind) {
    case ExprKind::power:
        return power_dim(f->power, m, n, f->a);
    case ExprKind::tensor: {
        long long d = 1;
        for (const auto& c : f->children) {
            const long long x = expected_dim(c, m, n, p);
            if (x < 0)
                return -1;
            d *= x;
        }
        return d;
    }
    case ExprKind::param: {
        auto [u0, u1] = param_dims(f->param);
        return expected_dim(f->children[0], u0 * m + u1 * n, u0 * n + u1 * m, p);
    }
    case ExprKind::twist0:
    case ExprKind::twist:
        return expected_dim(f->children[0], m, 0, p);
    case ExprKind::weyl:
    case ExprKind::schur:
        if (n != 0)
            return -1;
        return hook_content_dim(f->partition, m);
    case ExprKind::dual:
        break;
    }
    return -1;
}

std::vector<ExprPtr> catalog(int d)
{
    std::vector<std::string> names;
    switch (d) {
    case 1:
        names = {"I"};
        break;
    case 2:
        names = {"gamma^2", "sym^2", "lambda^2", "I * I", "weyl{2}", "weyl{1,1}", "schur{2}", "schur{1,1}"};
        break;
    case 3:
        names = {"gamma^3",     "sym^3",        "lambda^3",      "I * I * I",    "gamma^2 * I",
                 "sym^2 * I",   "lambda^2 * I", "weyl{1,1,1}", "weyl{2,1}", "schur{2,1}",
                 "weyl{3}",     "schur{1,1,1}"};
        break;
    default:
        throw std::invalid_argument("catalog: degree 1..3 expected");
    }
    std::vector<ExprPtr> out;
    for (const auto& s : names)
        out.push_back(parse_functor(s));
    return out;
}

} // namespace twb
