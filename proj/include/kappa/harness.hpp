#pragma once

// Figure data and accuracy bookkeeping: error tables of the integrators
// against the closed form, empirical convergence orders, truncation error of
// the series solutions, the power-law tail check, and Picard vs power series.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kappa/core.hpp"
#include "kappa/errors.hpp"
#include "kappa/ode.hpp"
#include "kappa/series.hpp"

namespace kappa {

/// Errors at or below this are round-off, not truncation error.
inline constexpr double roundoff_floor = 1e-13;
inline constexpr int max_convergence_levels = 8;

struct ErrorReport {
    Method method = Method::euler;
    double h = 0.0;
    std::vector<double> x;
    std::vector<double> abs_error;  ///< |f_num − f_exact| at each x
    double max_error = 0.0;
    double rms_error = 0.0;
};

/// Pointwise comparison of a trace with the problem's closed form.
template <OdeProblem P>
ErrorReport error_report(const P& p, const SolutionTrace& trace)
{
    ErrorReport r{trace.method, trace.h, {}, {}, 0.0, 0.0};
    r.x.reserve(trace.samples.size());
    r.abs_error.reserve(trace.samples.size());
    double sum_sq = 0.0;
    for (const Sample& s : trace.samples) {
        const double e = std::abs(s.f - p.exact(s.x));
        r.x.push_back(s.x);
        r.abs_error.push_back(e);
        r.max_error = std::max(r.max_error, e);
        sum_sq += e * e;
    }
    if (!trace.samples.empty()) r.rms_error = std::sqrt(sum_sq / static_cast<double>(trace.samples.size()));
    return r;
}

/// One ErrorReport per method at step h, sorted by (method, h).
template <OdeProblem P>
std::vector<ErrorReport> error_table(const P& p, std::span<const Method> methods, double h)
{
    if (methods.empty()) throw DomainError("error_table needs at least one method");
    std::vector<ErrorReport> out;
    out.reserve(methods.size());
    for (Method m : methods) out.push_back(error_report(p, solve(p, m, h)));
    std::stable_sort(out.begin(), out.end(), [](const ErrorReport& a, const ErrorReport& b) {
        return a.method != b.method ? a.method < b.method : a.h > b.h;
    });
    return out;
}

struct ConvergenceReport {
    Method method = Method::euler;
    std::vector<double> h;          ///< strictly decreasing ladder
    std::vector<double> max_error;  ///< one per ladder level
    std::vector<double> order;      ///< one per adjacent pair of levels
};

/// Empirical order between adjacent levels: ln(e_i/e_{i+1}) / ln(h_i/h_{i+1}).
/// On a halving ladder this is log₂ of the error ratio.
inline std::vector<double> fitted_orders(std::span<const double> h, std::span<const double> err)
{
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < std::min(h.size(), err.size()); ++i) {
        out.push_back(std::log(err[i] / err[i + 1]) / std::log(h[i] / h[i + 1]));
    }
    return out;
}

/// Raised when the error reaches the round-off floor before the ladder is
/// complete; carries the levels computed so far.
class FloorError : public ConvergenceError {
public:
    explicit FloorError(ConvergenceReport partial)
        : ConvergenceError("convergence ladder hit the round-off floor after " +
                           std::to_string(partial.h.size()) + " level(s)"),
          partial_(std::move(partial))
    {
    }

    const ConvergenceReport& partial() const noexcept { return partial_; }

private:
    ConvergenceReport partial_;
};

/// Max error of `method` on the halving ladder h0, h0/2, …, h0/2^{levels−1}
/// and the fitted order between adjacent levels.
template <OdeProblem P>
ConvergenceReport convergence_order(const P& p, Method method, double h0, int levels)
{
    if (levels < 3 || levels > max_convergence_levels) {
        throw DomainError("convergence_order: levels must be in [3, " +
                          std::to_string(max_convergence_levels) + "]");
    }
    if (method == Method::analytic) throw DomainError("convergence_order needs a numerical method");
    ConvergenceReport r{method, {}, {}, {}};
    double h = h0;
    for (int level = 0; level < levels; ++level, h *= 0.5) {
        const double err = error_report(p, solve(p, method, h)).max_error;
        if (err <= roundoff_floor) {
            r.order = fitted_orders(r.h, r.max_error);
            throw FloorError(std::move(r));
        }
        r.h.push_back(h);
        r.max_error.push_back(err);
    }
    r.order = fitted_orders(r.h, r.max_error);
    return r;
}

// --- series ---------------------------------------------------------------------

enum class SeriesSource { power_series, picard };

struct SeriesErrorCurve {
    int order = 0;
    std::vector<double> x;
    std::vector<double> series;
    std::vector<double> exact;
    std::vector<double> abs_error;
};

/// |truncated series − exp_κ(−x)| on x_grid, one curve per requested order.
/// For the Picard source, `order` is the iteration count.
inline std::vector<SeriesErrorCurve> series_error_curve(Kappa k, std::span<const int> orders,
                                                        std::span<const double> x_grid,
                                                        SeriesSource source = SeriesSource::power_series)
{
    if (orders.empty()) throw DomainError("series_error_curve needs at least one order");
    std::vector<SeriesErrorCurve> out;
    for (int order : orders) {
        SeriesErrorCurve c;
        c.order = order;
        if (source == SeriesSource::power_series) {
            const PowerSeries s = decay_series_solution(k, order);
            for (double x : x_grid) c.series.push_back(evaluate_series(s, k, x));
        } else {
            const PicardIterate it = picard_iterate(k, order);
            for (double x : x_grid) c.series.push_back(evaluate_series(it, k, x));
        }
        for (std::size_t i = 0; i < x_grid.size(); ++i) {
            c.x.push_back(x_grid[i]);
            c.exact.push_back(kappa_exp(k, -x_grid[i]));
            c.abs_error.push_back(std::abs(c.series[i] - c.exact[i]));
        }
        out.push_back(std::move(c));
    }
    return out;
}

/// exp_κ(−x)·(2|κ|x)^{1/|κ|}, which tends to 1 as x → ∞. Evaluated in log space.
inline double asymptote_check(Kappa k, double x)
{
    if (k.is_classical()) throw DomainError("asymptote_check requires kappa != 0");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("asymptote_check requires x > 0");
    const double ak = std::abs(k.value());
    return std::exp(-to_kappa_number(k, x) + std::log(2.0 * ak * x) / ak);
}

struct PicardSeriesReport {
    int n = 0;
    std::vector<double> x;
    std::vector<double> picard;
    std::vector<double> series;
    std::vector<double> difference;              ///< picard − series at each x
    std::vector<double> coefficient_difference;  ///< x-Taylor coefficients 0..n
    double max_coefficient_difference = 0.0;
};

/// Picard iterate n against the order-n power-series solution, pointwise and
/// coefficientwise in x.
inline PicardSeriesReport picard_vs_series(Kappa k, int n, std::span<const double> x_grid)
{
    const PicardIterate it = picard_iterate(k, n);
    const PowerSeries series = decay_series_solution(k, n);
    const PowerSeries picard_x = picard_taylor(k, it, n);

    PicardSeriesReport r;
    r.n = n;
    for (double x : x_grid) {
        const double a = evaluate_series(it, k, x);
        const double b = evaluate_series(series, k, x);
        r.x.push_back(x);
        r.picard.push_back(a);
        r.series.push_back(b);
        r.difference.push_back(a - b);
    }
    for (int j = 0; j <= n; ++j) {
        const double d = picard_x[j] - series[j];
        r.coefficient_difference.push_back(d);
        r.max_coefficient_difference = std::max(r.max_coefficient_difference, std::abs(d));
    }
    return r;
}

}  // namespace kappa
