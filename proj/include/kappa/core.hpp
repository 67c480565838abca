#pragma once

// κ-deformed special functions and the κ-algebra.
//
// Every function here is pure. The κ=0 case is handled exactly (exp, ln,
// identity maps) rather than as a small-κ limit, and all results are even
// in κ by construction: the only κ-odd building block, arsinh(κx), is
// always divided by κ again.

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>

#include "kappa/errors.hpp"

namespace kappa {

/// Deformation parameter κ, restricted to the open interval (−1, 1).
class Kappa {
public:
    /// The classical limit κ = 0.
    constexpr Kappa() noexcept = default;

    /// Throws DomainError unless value is finite and |value| < 1.
    explicit Kappa(double value) : value_(value)
    {
        if (!std::isfinite(value) || std::abs(value) >= 1.0) {
            throw DomainError("kappa out of range: |kappa| must be < 1 (got " +
                              std::to_string(value) + ")");
        }
    }

    constexpr double value() const noexcept { return value_; }
    constexpr bool is_classical() const noexcept { return value_ == 0.0; }

    friend constexpr bool operator==(Kappa, Kappa) noexcept = default;

private:
    double value_ = 0.0;
};

inline Kappa make_kappa(double value) { return Kappa(value); }

namespace detail {

/// Below this |κ| the arsinh/sinh quotients switch to their Maclaurin series
/// when |κx| is small.
inline constexpr double small_kappa = 1e-4;
inline constexpr double small_argument = 0.5;

/// Odd, cancellation-free inverse hyperbolic sine:
/// arsinh(z) = ln(√(1+z²) + z), evaluated on |z| and signed afterwards.
template <std::floating_point T>
T arsinh(T z)
{
    const T a = std::abs(z);
    T r;
    if (a > 1 / std::sqrt(std::numeric_limits<T>::epsilon())) {
        // √(1+a²) + a = 2a to working precision
        r = std::log(a) + std::numbers::ln2_v<T>;
    } else {
        r = std::log1p(a + a * a / (1 + std::sqrt(1 + a * a)));
    }
    return std::copysign(r, z);
}

template <std::floating_point T>
T odd_sinh(T z)
{
    return std::copysign(std::sinh(std::abs(z)), z);
}

// arsinh(z)/z = Σ c_n z^{2n}, c_{n+1} = −c_n (2n+1)² / ((2n+2)(2n+3))
template <std::floating_point T>
T arsinh_ratio_series(T z)
{
    const T z2 = z * z;
    T term = 1;
    T sum = 1;
    for (int n = 0; n < 80; ++n) {
        const T m = static_cast<T>(n);
        term *= -z2 * (2 * m + 1) * (2 * m + 1) / ((2 * m + 2) * (2 * m + 3));
        sum += term;
        if (std::abs(term) <= std::numeric_limits<T>::epsilon() * std::abs(sum)) break;
    }
    return sum;
}

// sinh(z)/z = Σ z^{2n} / (2n+1)!
template <std::floating_point T>
T sinh_ratio_series(T z)
{
    const T z2 = z * z;
    T term = 1;
    T sum = 1;
    for (int n = 0; n < 80; ++n) {
        const T m = static_cast<T>(n);
        term *= z2 / ((2 * m + 2) * (2 * m + 3));
        sum += term;
        if (term <= std::numeric_limits<T>::epsilon() * sum) break;
    }
    return sum;
}

}  // namespace detail

/// κ-number x_{κ} = arsinh(κx)/κ; the identity at κ=0.
template <std::floating_point T>
T to_kappa_number(Kappa k, T x)
{
    const T kv = static_cast<T>(k.value());
    if (kv == 0) return x;
    const T z = kv * x;
    if (std::abs(kv) < detail::small_kappa && std::abs(z) < detail::small_argument) {
        return x * detail::arsinh_ratio_series(z);
    }
    return detail::arsinh(z) / kv;
}

/// Dual κ-number x^{κ} = sinh(κu)/κ, the inverse map of to_kappa_number.
template <std::floating_point T>
T from_kappa_number(Kappa k, T u)
{
    const T kv = static_cast<T>(k.value());
    if (kv == 0) return u;
    const T z = kv * u;
    if (std::abs(kv) < detail::small_kappa && std::abs(z) < detail::small_argument) {
        return u * detail::sinh_ratio_series(z);
    }
    return detail::odd_sinh(z) / kv;
}

/// Both κ-number coordinates of a point.
struct KappaNumber {
    double deformed = 0.0;  ///< x_{κ} = arsinh(κx)/κ
    double dual = 0.0;      ///< x^{κ} = sinh(κx)/κ
};

inline KappaNumber kappa_number(Kappa k, double x)
{
    return {to_kappa_number(k, x), from_kappa_number(k, x)};
}

/// κ-exponential exp_κ(x) = (√(1+κ²x²) + κx)^{1/κ}, evaluated as exp(x_{κ}).
///
/// Strictly positive and increasing. Overflows to +inf for extreme positive x
/// (x > ~709 at κ=0); for κ≠0 the growth is only a power law |2κx|^{1/|κ|}.
template <std::floating_point T>
T kappa_exp(Kappa k, T x)
{
    if (std::isnan(x)) throw DomainError("kappa_exp requires a finite argument");
    if (k.is_classical()) return std::exp(x);
    return std::exp(to_kappa_number(k, x));
}

/// κ-logarithm ln_κ(x) = (x^κ − x^{−κ})/(2κ) = sinh(κ ln x)/κ, for x > 0.
template <std::floating_point T>
T kappa_ln(Kappa k, T x)
{
    if (!(x > 0)) throw DomainError("kappa_ln requires x > 0");
    if (k.is_classical()) return std::log(x);
    return from_kappa_number(k, std::log(x));
}

/// κ-sum x ⊕ y = x√(1+κ²y²) + y√(1+κ²x²). Identity 0, inverse −x.
template <std::floating_point T>
T kappa_sum(Kappa k, T x, T y)
{
    const T kv = static_cast<T>(k.value());
    return x * std::hypot(T{1}, kv * y) + y * std::hypot(T{1}, kv * x);
}

/// What kappa_product does at κ=0, where its sinh form degenerates to 0/0.
enum class ProductLimit { reject, classical };

/// κ-product x ⊗ y = sinh(arsinh(κx)·arsinh(κy)/κ)/κ.
///
/// In κ-number coordinates this is the ordinary product, so the identity
/// element is sinh(κ)/κ and the κ→0 limit is x·y. At κ=0 the product throws
/// DomainError unless ProductLimit::classical is passed.
template <std::floating_point T>
T kappa_product(Kappa k, T x, T y, ProductLimit limit = ProductLimit::reject)
{
    if (k.is_classical()) {
        if (limit == ProductLimit::classical) return x * y;
        throw DomainError("kappa_product is undefined at kappa = 0 without the classical-limit flag");
    }
    return from_kappa_number(k, to_kappa_number(k, x) * to_kappa_number(k, y));
}

/// Identity element of ⊗: sinh(κ)/κ (1 at κ=0).
template <std::floating_point T = double>
T kappa_product_identity(Kappa k)
{
    return from_kappa_number(k, T{1});
}

/// Inverse under ⊗; x = 0 has none. For |x| very close to 0 the inverse
/// exceeds the double range and the result is ±inf.
template <std::floating_point T>
T kappa_product_inverse(Kappa k, T x)
{
    if (x == 0) throw DomainError("kappa_product_inverse: 0 has no inverse");
    return from_kappa_number(k, 1 / to_kappa_number(k, x));
}

/// κ-differential weight dx_{κ}/dx = 1/√(1+κ²x²), in (0, 1].
template <std::floating_point T>
T differential_weight(Kappa k, T x)
{
    return 1 / std::hypot(T{1}, static_cast<T>(k.value()) * x);
}

}  // namespace kappa
