#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace twb {

constexpr bool is_prime(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Element of the prime field F_P, stored as one byte.
///
/// The implicit constructor from integers is intentional: Eigen builds
/// literals such as `Scalar(0)` and `Scalar(1)` through it.
template <std::uint32_t P>
class Fp
{
    static_assert(P >= 3 && P < 128 && is_prime(P), "odd prime below 128 expected");

public:
    using rep_type = std::uint8_t;
    static constexpr std::uint32_t modulus = P;

    constexpr Fp() = default;
    constexpr Fp(long long x) : v_(reduce(x)) {}

    static constexpr Fp from_rep(rep_type r)
    {
        Fp f;
        f.v_ = r;
        return f;
    }

    constexpr rep_type value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }

    /// Representative in (-P/2, P/2]; handy for signs.
    constexpr int centered() const { return v_ > P / 2 ? int(v_) - int(P) : int(v_); }

    constexpr Fp operator-() const { return from_rep(v_ == 0 ? 0 : rep_type(P - v_)); }

    friend constexpr Fp operator+(Fp a, Fp b)
    {
        unsigned s = unsigned(a.v_) + b.v_;
        return from_rep(rep_type(s >= P ? s - P : s));
    }
    friend constexpr Fp operator-(Fp a, Fp b)
    {
        unsigned s = unsigned(a.v_) + P - b.v_;
        return from_rep(rep_type(s >= P ? s - P : s));
    }
    friend constexpr Fp operator*(Fp a, Fp b) { return from_rep(rep_type((unsigned(a.v_) * b.v_) % P)); }
    friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

    constexpr Fp& operator+=(Fp b) { return *this = *this + b; }
    constexpr Fp& operator-=(Fp b) { return *this = *this - b; }
    constexpr Fp& operator*=(Fp b) { return *this = *this * b; }
    Fp& operator/=(Fp b) { return *this = *this / b; }

    friend constexpr bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

    constexpr Fp pow(unsigned long long e) const
    {
        Fp base = *this, acc = Fp(1);
        while (e) {
            if (e & 1u)
                acc *= base;
            base *= base;
            e >>= 1u;
        }
        return acc;
    }

    Fp inverse() const
    {
        if (v_ == 0)
            throw std::domain_error("inverse of zero in F_p");
        return pow(P - 2);
    }

    friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << int(a.v_); }

private:
    static constexpr rep_type reduce(long long x)
    {
        long long r = x % static_cast<long long>(P);
        return rep_type(r < 0 ? r + P : r);
    }

    rep_type v_ = 0;
};

using F3 = Fp<3>;
using F5 = Fp<5>;
using F7 = Fp<7>;

template <class S>
inline constexpr std::uint32_t characteristic_v = S::modulus;

/// Sign (+1 / -1) as a field element.
template <class S>
constexpr S sign_scalar(int sign)
{
    return sign >= 0 ? S(1) : -S(1);
}

} // namespace twb

namespace Eigen {

template <std::uint32_t P>
struct NumTraits<twb::Fp<P>> : GenericNumTraits<twb::Fp<P>>
{
    using Real = twb::Fp<P>;
    using NonInteger = twb::Fp<P>;
    using Literal = twb::Fp<P>;
    using Nested = twb::Fp<P>;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 3
    };
};

} // namespace Eigen

/// Instantiate `MACRO(S)` for every supported field.
#define TWB_FOR_EACH_FIELD(MACRO) \
    MACRO(::twb::F3)              \
    MACRO(::twb::F5)              \
    MACRO(::twb::F7)

namespace twb {

/// Calls `f(S{})` with S the field type of characteristic p.
template <class Fn>
decltype(auto) with_field(std::uint32_t p, Fn&& f)
{
    switch (p) {
    case 3:
        return f(F3{});
    case 5:
        return f(F5{});
    case 7:
        return f(F7{});
    default:
        throw std::invalid_argument("unsupported characteristic " + std::to_string(p) + " (expected 3, 5 or 7)");
    }
}

} // namespace twb
