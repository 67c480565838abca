#pragma once

// Truncated power series with double coefficients, plus the series that the
// κ-deformed decay problem produces: Taylor expansions of exp_κ and ln_κ,
// the binomial expansion of the weight √(1+κ²x²), the power-series-method
// recurrence and Picard iterates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kappa/core.hpp"
#include "kappa/errors.hpp"

namespace kappa {

inline constexpr int max_series_order = 64;
inline constexpr int max_picard_iterations = 20;

/// Expansion variable of a series: x itself, or the κ-number u = arsinh(κx)/κ.
enum class SeriesVariable { x, u };

inline const char* to_string(SeriesVariable v) { return v == SeriesVariable::x ? "x" : "u"; }

/// c₀ + c₁t + … + c_N t^N, truncated at order N.
class PowerSeries {
public:
    PowerSeries(SeriesVariable variable, std::vector<double> coefficients)
        : variable_(variable), coefficients_(std::move(coefficients))
    {
        if (coefficients_.empty()) throw DomainError("PowerSeries needs at least one coefficient");
        for (double c : coefficients_) {
            if (!std::isfinite(c)) throw DomainError("PowerSeries coefficients must be finite");
        }
    }

    static PowerSeries zero(SeriesVariable variable, int order)
    {
        return PowerSeries(variable, std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
    }

    SeriesVariable variable() const noexcept { return variable_; }
    int order() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }

    /// Coefficient of t^i; zero beyond the truncation order.
    double operator[](int i) const noexcept
    {
        return i >= 0 && i <= order() ? coefficients_[static_cast<std::size_t>(i)] : 0.0;
    }

    /// Horner evaluation in the series' own variable.
    double evaluate(double t) const noexcept
    {
        double acc = 0.0;
        for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

private:
    SeriesVariable variable_;
    std::vector<double> coefficients_;
};

namespace detail {

inline void check_order(int order, int max, const char* what)
{
    if (order < 0 || order > max) {
        throw DomainError(std::string(what) + ": order must be in [0, " + std::to_string(max) +
                          "] (got " + std::to_string(order) + ")");
    }
}

inline void check_same_variable(const PowerSeries& a, const PowerSeries& b, const char* what)
{
    if (a.variable() != b.variable()) {
        throw DomainError(std::string(what) + ": series are in different variables");
    }
}

}  // namespace detail

inline PowerSeries series_truncate(const PowerSeries& s, int order)
{
    detail::check_order(order, max_series_order, "series_truncate");
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    for (int i = 0; i <= order; ++i) c[static_cast<std::size_t>(i)] = s[i];
    return PowerSeries(s.variable(), std::move(c));
}

inline PowerSeries series_add(const PowerSeries& a, const PowerSeries& b, int order)
{
    detail::check_same_variable(a, b, "series_add");
    detail::check_order(order, max_series_order, "series_add");
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    for (int i = 0; i <= order; ++i) c[static_cast<std::size_t>(i)] = a[i] + b[i];
    return PowerSeries(a.variable(), std::move(c));
}

/// Cauchy product truncated at order.
inline PowerSeries series_multiply(const PowerSeries& a, const PowerSeries& b, int order)
{
    detail::check_same_variable(a, b, "series_multiply");
    detail::check_order(order, max_series_order, "series_multiply");
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    for (int i = 0; i <= std::min(order, a.order()); ++i) {
        if (a[i] == 0.0) continue;
        for (int j = 0; j <= std::min(order - i, b.order()); ++j) {
            c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
        }
    }
    return PowerSeries(a.variable(), std::move(c));
}

/// outer(inner(t)) truncated at order; inner must have a zero constant term.
/// The result is expressed in inner's variable.
inline PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner, int order)
{
    detail::check_order(order, max_series_order, "series_compose");
    if (inner[0] != 0.0) {
        throw DomainError("series_compose: inner series must have a zero constant term");
    }
    // Horner in series arithmetic: (((c_N)·g + c_{N-1})·g + …)·g + c₀
    PowerSeries acc = PowerSeries::zero(inner.variable(), order);
    for (int i = outer.order(); i >= 0; --i) {
        acc = series_multiply(acc, inner, order);
        std::vector<double> c(acc.coefficients().begin(), acc.coefficients().end());
        c[0] += outer[i];
        acc = PowerSeries(inner.variable(), std::move(c));
    }
    return acc;
}

// --- elementary series ------------------------------------------------------

/// exp(t) = Σ tⁿ/n!
inline PowerSeries exp_series(int order, SeriesVariable variable = SeriesVariable::x)
{
    detail::check_order(order, max_series_order, "exp_series");
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    double term = 1.0;
    for (int n = 0; n <= order; ++n) {
        c[static_cast<std::size_t>(n)] = term;
        term /= n + 1;
    }
    return PowerSeries(variable, std::move(c));
}

/// ln(1+x) = Σ (−1)^{n+1} xⁿ/n
inline PowerSeries ln1p_series(int order)
{
    detail::check_order(order, max_series_order, "ln1p_series");
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    for (int n = 1; n <= order; ++n) c[static_cast<std::size_t>(n)] = (n % 2 ? 1.0 : -1.0) / n;
    return PowerSeries(SeriesVariable::x, std::move(c));
}

/// Maclaurin series of the κ-number map u(x) = arsinh(κx)/κ:
/// Σ (−1)ⁿ (2n)!/(4ⁿ (n!)² (2n+1)) κ^{2n} x^{2n+1}.
inline PowerSeries kappa_number_series(Kappa k, int order)
{
    detail::check_order(order, max_series_order, "kappa_number_series");
    const double k2 = k.value() * k.value();
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    double a = 1.0;  // (−1)ⁿ (2n)!/(4ⁿ (n!)²) κ^{2n}
    for (int n = 0; 2 * n + 1 <= order; ++n) {
        c[static_cast<std::size_t>(2 * n + 1)] = a / (2 * n + 1);
        a *= -k2 * (2.0 * n + 1) / (2.0 * n + 2);
    }
    return PowerSeries(SeriesVariable::x, std::move(c));
}

/// Maclaurin series of the dual map sinh(κt)/κ = Σ κ^{2m} t^{2m+1}/(2m+1)!.
inline PowerSeries kappa_dual_series(Kappa k, int order)
{
    detail::check_order(order, max_series_order, "kappa_dual_series");
    const double k2 = k.value() * k.value();
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    double a = 1.0;
    for (int m = 0; 2 * m + 1 <= order; ++m) {
        c[static_cast<std::size_t>(2 * m + 1)] = a;
        a *= k2 / ((2.0 * m + 2) * (2.0 * m + 3));
    }
    return PowerSeries(SeriesVariable::x, std::move(c));
}

/// Generalized binomial coefficient C(1/2, m).
inline double half_binomial(int m)
{
    double c = 1.0;
    for (int i = 0; i < m; ++i) c *= (0.5 - i) / (i + 1);
    return c;
}

// --- κ-deformed expansions ---------------------------------------------------

/// Taylor coefficients of exp_κ(x) about 0, built as exp(u(x)).
/// Leading terms: 1, 1, 1/2, (1−κ²)/3!, (1−4κ²)/4!, (1−κ²)(1−9κ²)/5!.
inline PowerSeries exp_kappa_taylor(Kappa k, int order)
{
    detail::check_order(order, max_series_order, "exp_kappa_taylor");
    return series_compose(exp_series(order), kappa_number_series(k, order), order);
}

/// Taylor coefficients of ln_κ(1+x) about 0, built as sinh(κ ln(1+x))/κ.
inline PowerSeries ln_kappa_shifted_taylor(Kappa k, int order)
{
    detail::check_order(order, max_series_order, "ln_kappa_shifted_taylor");
    return series_compose(kappa_dual_series(k, order), ln1p_series(order), order);
}

/// Binomial series √(1+κ²x²) = Σ C(1/2,m) κ^{2m} x^{2m}.
inline PowerSeries sqrt_weight_series(Kappa k, int order)
{
    detail::check_order(order, max_series_order, "sqrt_weight_series");
    const double k2 = k.value() * k.value();
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    double k2m = 1.0;
    for (int m = 0; 2 * m <= order; ++m) {
        c[static_cast<std::size_t>(2 * m)] = half_binomial(m) * k2m;
        k2m *= k2;
    }
    return PowerSeries(SeriesVariable::x, std::move(c));
}

/// Power-series solution of √(1+κ²x²) f′ + f = 0, f(0) = 1.
///
/// Matching the coefficient of x^p after expanding the weight gives
///   (p+1) a_{p+1} = −a_p − Σ_{m≥1} C(1/2,m) κ^{2m} (p−2m+1) a_{p−2m+1}.
inline PowerSeries decay_series_solution(Kappa k, int order)
{
    detail::check_order(order, max_series_order, "decay_series_solution");
    const PowerSeries weight = sqrt_weight_series(k, order);
    std::vector<double> a(static_cast<std::size_t>(order) + 1, 0.0);
    a[0] = 1.0;
    for (int p = 0; p < order; ++p) {
        double rhs = -a[static_cast<std::size_t>(p)];
        for (int m = 1; p - 2 * m + 1 >= 0; ++m) {
            const int j = p - 2 * m + 1;
            rhs -= weight[2 * m] * j * a[static_cast<std::size_t>(j)];
        }
        a[static_cast<std::size_t>(p + 1)] = rhs / (p + 1);
    }
    return PowerSeries(SeriesVariable::x, std::move(a));
}

// --- Picard iteration ---------------------------------------------------------

/// n-th Picard iterate of the decay problem, as a polynomial in u = arsinh(κx)/κ.
struct PicardIterate {
    int n = 0;
    std::vector<double> coefficients{1.0};  ///< coefficient of u^j
};

/// Runs n Picard sweeps f_{m} = 1 + ∫₀ˣ G(t, f_{m−1}(t)) dt with G = −f/√(1+κ²t²).
/// Since du = dt/√(1+κ²t²), each sweep is f_{m}(u) = 1 − ∫₀ᵘ f_{m−1}, which keeps
/// the iterates polynomial in u.
///
/// Coefficients are carried as integer numerator/denominator pairs, exact in
/// double up to the iteration cap, so each is divided out exactly once.
inline PicardIterate picard_iterate(Kappa /*k*/, int n)
{
    detail::check_order(n, max_picard_iterations, "picard_iterate");
    std::vector<double> num{1.0}, den{1.0};
    for (int m = 0; m < n; ++m) {
        std::vector<double> next_num(num.size() + 1, 0.0), next_den(den.size() + 1, 1.0);
        next_num[0] = 1.0;
        for (std::size_t j = 0; j < num.size(); ++j) {
            next_num[j + 1] = -num[j];
            next_den[j + 1] = den[j] * static_cast<double>(j + 1);
        }
        num = std::move(next_num);
        den = std::move(next_den);
    }
    std::vector<double> f(num.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = num[j] / den[j];
    return PicardIterate{n, std::move(f)};
}

inline PowerSeries to_series(const PicardIterate& it)
{
    return PowerSeries(SeriesVariable::u, it.coefficients);
}

/// Taylor expansion in x of a Picard iterate, through the given order.
inline PowerSeries picard_taylor(Kappa k, const PicardIterate& it, int order)
{
    return series_compose(to_series(it), kappa_number_series(k, order), order);
}

/// Value of a truncated series at x; u-series are evaluated at u = x_{κ}.
inline double evaluate_series(const PowerSeries& s, Kappa k, double x)
{
    return s.evaluate(s.variable() == SeriesVariable::u ? to_kappa_number(k, x) : x);
}

inline double evaluate_series(const PicardIterate& it, Kappa k, double x)
{
    return evaluate_series(to_series(it), k, x);
}

}  // namespace kappa
