#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>

#include "kappa/core.hpp"
#include "kappa/errors.hpp"

namespace kappa {

inline constexpr double default_quadrature_tol = 1e-12;
inline constexpr std::size_t default_quadrature_budget = 1'000'000;

namespace detail {

template <class F>
class AdaptiveSimpson {
public:
    AdaptiveSimpson(F& f, std::size_t budget) : f_(f), budget_(budget) {}

    double run(double a, double b, double tol)
    {
        const double m = 0.5 * (a + b);
        const double fa = eval(a), fm = eval(m), fb = eval(b);
        return refine(a, fa, m, fm, b, fb, simpson(a, fa, fm, b, fb), tol, 0);
    }

    std::size_t evaluations() const noexcept { return evals_; }

private:
    static constexpr int min_depth = 3;

    static double simpson(double a, double fa, double fm, double b, double fb)
    {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double eval(double x)
    {
        ++evals_;
        return f_(x);
    }

    double refine(double a, double fa, double m, double fm, double b, double fb, double whole,
                  double tol, int depth)
    {
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        if (!(lm > a && lm < m && rm > m && rm < b)) {
            throw ConvergenceError("adaptive quadrature: interval cannot be split further at x = " +
                                   std::to_string(m));
        }
        if (evals_ + 2 > budget_) {
            throw ConvergenceError("adaptive quadrature: evaluation budget of " +
                                   std::to_string(budget_) + " exhausted before tolerance was met");
        }
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = simpson(a, fa, flm, m, fm);
        const double right = simpson(m, fm, frm, b, fb);
        const double delta = left + right - whole;
        if (depth >= min_depth && std::abs(delta) <= 15.0 * tol) {
            return left + right + delta / 15.0;  // Richardson correction
        }
        return refine(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
               refine(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
    }

    F& f_;
    std::size_t budget_;
    std::size_t evals_ = 0;
};

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
///
/// Throws DomainError on a > b or a nonpositive tolerance, and ConvergenceError
/// when more than max_evals integrand evaluations would be needed.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = default_quadrature_tol,
                        std::size_t max_evals = default_quadrature_budget)
{
    if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
        throw DomainError("adaptive_simpson requires finite a <= b");
    }
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw DomainError("adaptive_simpson requires tol > 0");
    }
    if (a == b) return 0.0;
    detail::AdaptiveSimpson<std::remove_reference_t<F>> engine(f, max_evals);
    return engine.run(a, b, tol);
}

/// κ-integral ∫ₐᵇ f(x) dx_{κ} = ∫ₐᵇ f(x)/√(1+κ²x²) dx.
template <class F>
double kappa_integral(Kappa k, F&& f, double a, double b, double tol = default_quadrature_tol,
                      std::size_t max_evals = default_quadrature_budget)
{
    auto weighted = [&](double x) { return f(x) * differential_weight(k, x); };
    return adaptive_simpson(weighted, a, b, tol, max_evals);
}

}  // namespace kappa
