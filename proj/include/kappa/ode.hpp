#pragma once

// The κ-deformed decay and logistic problems: analytic solutions, residual
// checks, slope fields and fixed-step integrators (Euler, Adams-Bashforth 2,
// classical RK4).

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kappa/core.hpp"
#include "kappa/errors.hpp"
#include "kappa/quadrature.hpp"

namespace kappa {

inline constexpr double default_step = 0.01;
inline constexpr double default_x_max = 5.0;

/// √(1+κ²β²x²) f′ + β f = 0, f(0) = f0, on [0, x_max]. Solution f0·exp_κ(−βx).
/// For β = 1 the weight reduces to √(1+κ²x²).
struct DecayProblem {
    Kappa k;
    double beta = 1.0;
    double f0 = 1.0;
    double x_max = default_x_max;

    void validate() const
    {
        if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("decay problem requires beta > 0");
        if (!std::isfinite(f0)) throw DomainError("decay problem requires a finite f0");
        if (!(x_max > 0.0) || !std::isfinite(x_max)) throw DomainError("decay problem requires x_max > 0");
    }

    double x_start() const noexcept { return 0.0; }
    double x_end() const noexcept { return x_max; }
    double initial_value() const noexcept { return f0; }

    /// 1/√(1+κ²β²x²)
    double weight(double x) const noexcept { return 1.0 / std::hypot(1.0, k.value() * beta * x); }
    double rhs(double x, double f) const noexcept { return -beta * f * weight(x); }
    double exact(double x) const { return f0 * kappa_exp(k, -beta * x); }
};

inline DecayProblem make_decay_problem(Kappa k, double beta = 1.0, double f0 = 1.0,
                                       double x_max = default_x_max)
{
    DecayProblem p{k, beta, f0, x_max};
    p.validate();
    return p;
}

/// √(1+κ²x²) f′ = f(1−f) on [−x_max, x_max] with f(0) = f0.
/// Solution 1/(1 + c·exp_κ(−x)), c = (1−f0)/f0; c = 1 for the default f0 = ½.
struct LogisticProblem {
    Kappa k;
    double f0 = 0.5;
    double x_max = default_x_max;

    void validate() const
    {
        if (!(f0 > 0.0 && f0 < 1.0)) throw DomainError("logistic problem requires f0 in (0, 1)");
        if (!(x_max > 0.0) || !std::isfinite(x_max)) throw DomainError("logistic problem requires x_max > 0");
    }

    double x_start() const noexcept { return -x_max; }
    double x_end() const noexcept { return x_max; }
    /// Numerical traces start on the analytic curve at −x_max.
    double initial_value() const { return exact(-x_max); }

    double weight(double x) const noexcept { return 1.0 / std::hypot(1.0, k.value() * x); }
    double rhs(double x, double f) const noexcept { return f * (1.0 - f) * weight(x); }
    double exact(double x) const { return 1.0 / (1.0 + odds() * kappa_exp(k, -x)); }
    double odds() const noexcept { return (1.0 - f0) / f0; }
};

inline LogisticProblem make_logistic_problem(Kappa k, double f0 = 0.5, double x_max = default_x_max)
{
    LogisticProblem p{k, f0, x_max};
    p.validate();
    return p;
}

/// What the integrators and the harness need from a problem.
template <class P>
concept OdeProblem = requires(const P& p, double x, double f) {
    { p.x_start() } -> std::convertible_to<double>;
    { p.x_end() } -> std::convertible_to<double>;
    { p.initial_value() } -> std::convertible_to<double>;
    { p.rhs(x, f) } -> std::convertible_to<double>;
    { p.exact(x) } -> std::convertible_to<double>;
};

enum class Method { analytic, euler, ab2, rk4 };

inline std::string_view to_string(Method m)
{
    switch (m) {
        case Method::analytic: return "analytic";
        case Method::euler: return "euler";
        case Method::ab2: return "ab2";
        case Method::rk4: return "rk4";
    }
    return "unknown";
}

inline Method parse_method(std::string_view name)
{
    if (name == "analytic") return Method::analytic;
    if (name == "euler") return Method::euler;
    if (name == "ab2") return Method::ab2;
    if (name == "rk4") return Method::rk4;
    throw DomainError("unknown method '" + std::string(name) + "' (expected analytic, euler, ab2 or rk4)");
}

struct Sample {
    double x;
    double f;
};

/// One solver run on a uniform grid x_n = x_start + n·h.
struct SolutionTrace {
    Method method = Method::analytic;
    double h = 0.0;
    std::vector<Sample> samples;
};

// --- decay: analytic routes -------------------------------------------------

namespace detail {

inline void check_decay_x(const DecayProblem& p, double x)
{
    if (!(x >= 0.0 && x <= p.x_max)) {
        throw DomainError("x must lie in [0, x_max] (got " + std::to_string(x) + ")");
    }
}

}  // namespace detail

/// f0·exp_κ(−βx)
inline double closed_form_decay(const DecayProblem& p, double x)
{
    detail::check_decay_x(p, x);
    return p.exact(x);
}

/// Separation of variables: f = f0·exp(−∫₀ˣ β dt/√(1+κ²β²t²)). With s = βt the
/// exponent is the κ-integral of 1 over [0, βx], done by adaptive quadrature.
inline double quadrature_decay(const DecayProblem& p, double x, double tol = default_quadrature_tol)
{
    detail::check_decay_x(p, x);
    const double exponent = kappa_integral(p.k, [](double) { return 1.0; }, 0.0, p.beta * x, tol);
    return p.f0 * std::exp(-exponent);
}

/// In the κ-number coordinate u the equation is the classical df/du = −f, so
/// f = f0·exp(−u) with u = x_{κ} evaluated at βx.
inline double substitution_decay(const DecayProblem& p, double x)
{
    detail::check_decay_x(p, x);
    return p.f0 * std::exp(-to_kappa_number(p.k, p.beta * x));
}

/// Left-hand side √(1+κ²β²x²)·f′ + β·f of the decay equation; zero on solutions.
inline double residual_decay(const DecayProblem& p, double f_val, double dfdx, double x)
{
    return std::hypot(1.0, p.k.value() * p.beta * x) * dfdx + p.beta * f_val;
}

/// Analytic derivative of the closed form, −β·f·w(x).
inline double decay_derivative(const DecayProblem& p, double x)
{
    return p.rhs(x, p.exact(x));
}

struct SlopeSample {
    double x;
    double f;
    double slope;
};

/// Slope of the decay field at every (x, f) node. Rows are x-major: all f
/// values for x_grid[0] first, then x_grid[1], and so on.
inline std::vector<SlopeSample> slope_field(const DecayProblem& p, std::span<const double> x_grid,
                                            std::span<const double> f_grid)
{
    if (x_grid.empty() || f_grid.empty()) throw DomainError("slope_field needs nonempty grids");
    std::vector<SlopeSample> out;
    out.reserve(x_grid.size() * f_grid.size());
    for (double x : x_grid) {
        for (double f : f_grid) {
            if (!std::isfinite(x) || !std::isfinite(f)) throw DomainError("slope_field grids must be finite");
            out.push_back({x, f, p.rhs(x, f)});
        }
    }
    return out;
}

// --- logistic ------------------------------------------------------------------

inline double logistic_closed_form(const LogisticProblem& lp, double x)
{
    if (!std::isfinite(x)) throw DomainError("logistic_closed_form requires finite x");
    return lp.exact(x);
}

/// f′ = c·E·w/(1+c·E)² with E = exp_κ(−x), by the quotient rule.
inline double logistic_derivative(const LogisticProblem& lp, double x)
{
    const double ce = lp.odds() * kappa_exp(lp.k, -x);
    const double denom = 1.0 + ce;
    return ce * lp.weight(x) / (denom * denom);
}

/// √(1+κ²x²)·f′ − f(1−f) on the closed form.
inline double logistic_residual(const LogisticProblem& lp, double x)
{
    const double f = logistic_closed_form(lp, x);
    return std::hypot(1.0, lp.k.value() * x) * logistic_derivative(lp, x) - f * (1.0 - f);
}

// --- fixed-step integrators -------------------------------------------------

namespace detail {

/// Number of steps of size h that fit in range, tolerating rounding in range/h.
inline std::size_t step_count(double range, double h)
{
    return static_cast<std::size_t>(std::floor(range / h + 1e-9));
}

inline void check_step(double h, double max_h, const char* method)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw DomainError(std::string(method) + ": step size h must be > 0");
    }
    if (h > max_h * (1.0 + 1e-12)) {
        throw DomainError(std::string(method) + ": step size h = " + std::to_string(h) +
                          " exceeds the admissible maximum " + std::to_string(max_h));
    }
}

inline void check_finite(double f, double x, Method m)
{
    if (!std::isfinite(f)) {
        throw ConvergenceError(std::string(to_string(m)) + ": non-finite value at x = " + std::to_string(x));
    }
}

template <OdeProblem P>
double rk4_step(const P& p, double x, double f, double h)
{
    const double k1 = p.rhs(x, f);
    const double k2 = p.rhs(x + 0.5 * h, f + 0.5 * h * k1);
    const double k3 = p.rhs(x + 0.5 * h, f + 0.5 * h * k2);
    const double k4 = p.rhs(x + h, f + h * k3);
    return f + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
}

template <OdeProblem P>
SolutionTrace start_trace(const P& p, Method m, double h, std::size_t& steps)
{
    const double range = p.x_end() - p.x_start();
    steps = step_count(range, h);
    SolutionTrace t{m, h, {}};
    t.samples.reserve(steps + 1);
    t.samples.push_back({p.x_start(), p.initial_value()});
    return t;
}

}  // namespace detail

/// Forward Euler: f_{n+1} = f_n + h·G(x_n, f_n).
template <OdeProblem P>
SolutionTrace euler_solve(const P& p, double h)
{
    detail::check_step(h, p.x_end() - p.x_start(), "euler");
    std::size_t steps = 0;
    SolutionTrace t = detail::start_trace(p, Method::euler, h, steps);
    double f = p.initial_value();
    for (std::size_t n = 0; n < steps; ++n) {
        const double x = p.x_start() + static_cast<double>(n) * h;
        f += h * p.rhs(x, f);
        const double x_next = p.x_start() + static_cast<double>(n + 1) * h;
        detail::check_finite(f, x_next, Method::euler);
        t.samples.push_back({x_next, f});
    }
    return t;
}

/// Two-step Adams-Bashforth, f_{n+1} = f_n + h(3G_n − G_{n−1})/2, with the
/// first step taken by RK4.
template <OdeProblem P>
SolutionTrace ab2_solve(const P& p, double h)
{
    detail::check_step(h, 0.5 * (p.x_end() - p.x_start()), "ab2");
    std::size_t steps = 0;
    SolutionTrace t = detail::start_trace(p, Method::ab2, h, steps);
    const double x0 = p.x_start();
    double f_prev = p.initial_value();
    double f = detail::rk4_step(p, x0, f_prev, h);
    detail::check_finite(f, x0 + h, Method::ab2);
    t.samples.push_back({x0 + h, f});
    double g_prev = p.rhs(x0, f_prev);
    for (std::size_t n = 1; n < steps; ++n) {
        const double x = x0 + static_cast<double>(n) * h;
        const double g = p.rhs(x, f);
        f += 0.5 * h * (3.0 * g - g_prev);
        g_prev = g;
        const double x_next = x0 + static_cast<double>(n + 1) * h;
        detail::check_finite(f, x_next, Method::ab2);
        t.samples.push_back({x_next, f});
    }
    return t;
}

/// Classical four-stage Runge-Kutta.
template <OdeProblem P>
SolutionTrace rk4_solve(const P& p, double h)
{
    detail::check_step(h, p.x_end() - p.x_start(), "rk4");
    std::size_t steps = 0;
    SolutionTrace t = detail::start_trace(p, Method::rk4, h, steps);
    double f = p.initial_value();
    for (std::size_t n = 0; n < steps; ++n) {
        const double x = p.x_start() + static_cast<double>(n) * h;
        f = detail::rk4_step(p, x, f, h);
        const double x_next = p.x_start() + static_cast<double>(n + 1) * h;
        detail::check_finite(f, x_next, Method::rk4);
        t.samples.push_back({x_next, f});
    }
    return t;
}

/// The closed-form solution sampled on the same grid the integrators use.
template <OdeProblem P>
SolutionTrace analytic_trace(const P& p, double h)
{
    detail::check_step(h, p.x_end() - p.x_start(), "analytic");
    std::size_t steps = 0;
    SolutionTrace t = detail::start_trace(p, Method::analytic, h, steps);
    t.samples.front().f = p.exact(p.x_start());
    for (std::size_t n = 1; n <= steps; ++n) {
        const double x = p.x_start() + static_cast<double>(n) * h;
        t.samples.push_back({x, p.exact(x)});
    }
    return t;
}

template <OdeProblem P>
SolutionTrace solve(const P& p, Method m, double h)
{
    switch (m) {
        case Method::analytic: return analytic_trace(p, h);
        case Method::euler: return euler_solve(p, h);
        case Method::ab2: return ab2_solve(p, h);
        case Method::rk4: return rk4_solve(p, h);
    }
    throw DomainError("unknown method");
}

}  // namespace kappa
