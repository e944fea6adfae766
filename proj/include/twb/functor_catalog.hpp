#pragma once

// Functor expressions and their evaluation to modules over Schur (super)algebras.
//
// Text syntax (version 1):
//   expr   := factor ('*' factor)*
//   factor := 'I' | 'k' | kind '^' INT | 'dual(' expr ')'
//           | 'twist0{' INT '}(' expr ')' | 'twist{' INT '}(' expr ')'
//           | 'param{' pspec '}(' expr ')'
//           | 'weyl{' INT (',' INT)* '}' | 'schur{' INT (',' INT)* '}'
//           | '(' expr ')'
//   kind   := gamma | sym | S | lambda | tensor
//   pspec  := comp (';' comp)*
//   comp   := ('Ebold' | 'E') ',' INT [',' INT]     Yoneda algebra, r, truncation
//           | 'k^' INT ['|' INT]                   plain space k^{m|n}

#include "twb/module.hpp"

#include <memory>
#include <string>
#include <vector>

namespace twb {

inline constexpr int functor_syntax_version = 1;
inline constexpr int default_param_truncation = 8;

struct ParamComponent
{
    enum class Kind : std::uint8_t { yoneda, space };
    Kind kind = Kind::space;
    bool super = true; // Ebold (true) or E (false)
    int r = 1;
    int truncation = default_param_truncation;
    int m = 0, n = 0;
    bool dualized = false;

    friend bool operator==(const ParamComponent&, const ParamComponent&) = default;
};

struct ParamSpec
{
    std::vector<ParamComponent> components;

    static ParamSpec yoneda(bool super, int r, int truncation = default_param_truncation);
    static ParamSpec space(int m, int n = 0);

    SuperSpace to_space(int p) const;
    /// Smallest truncation among graded components; -1 if none.
    int truncation() const;
    bool has_odd() const;
    ParamSpec dual() const;
    std::string str() const;

    friend bool operator==(const ParamSpec&, const ParamSpec&) = default;
};

enum class ExprKind : std::uint8_t { power, tensor, dual, param, twist0, twist, weyl, schur };

struct FunctorExpr;
using ExprPtr = std::shared_ptr<const FunctorExpr>;

struct FunctorExpr
{
    ExprKind kind = ExprKind::power;
    PowerKind power = PowerKind::tensor;
    int a = 0;
    std::vector<ExprPtr> children;
    ParamSpec param;
    int r = 0;
    std::vector<int> partition;
};

ExprPtr identity_functor();
ExprPtr constant_functor();
ExprPtr power_functor(PowerKind kind, int d);
ExprPtr tensor_of(std::vector<ExprPtr> factors);
ExprPtr dual_of(ExprPtr f);
ExprPtr parametrize(ExprPtr f, ParamSpec u);
ExprPtr twist0_of(int r, ExprPtr f);
ExprPtr twist_of(int r, ExprPtr f);
ExprPtr weyl_functor(std::vector<int> partition);
ExprPtr schur_functor(std::vector<int> partition);

ExprPtr parse_functor(const std::string& text);
std::string to_string(const ExprPtr& f);
inline bool same_expr(const ExprPtr& a, const ExprPtr& b) { return to_string(a) == to_string(b); }

int degree(const ExprPtr& f, int p);
/// Contains an even twist, i.e. lives only in the super category.
bool is_super_only(const ExprPtr& f);
bool contains_twist(const ExprPtr& f);

/// Duals pushed to the leaves, parameters pushed through tensors and twists, tensors flattened.
ExprPtr normalize(const ExprPtr& f);
/// F^#, returned in normal form.
ExprPtr kuhn_dual(const ExprPtr& f);
/// Restriction to purely even spaces, as an expression. UnsupportedExpr for odd parameter spaces.
ExprPtr res0(const ExprPtr& f);

/// Dimension of F(k^{m|n}) from closed forms; -1 when no closed form is implemented.
long long expected_dim(const ExprPtr& f, int m, int n, int p);

/// Evaluate at k^{m|n}; the result is a module over S(m|n, deg F).
template <class S>
ModulePtr<S> evaluate(const ExprPtr& f, int m, int n, long long cap = default_tensor_cap);

/// Catalog functors of exactly the given degree (1..3).
std::vector<ExprPtr> catalog(int degree);

} // namespace twb
