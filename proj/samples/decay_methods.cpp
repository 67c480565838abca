// Solves the κ-deformed decay equation every available way and prints how far
// each route lands from the closed form at a few points. The truncated series
// is only useful inside its radius of convergence, 1/|κ|.

#include <array>
#include <cstdio>

#include "kappa/kappa.hpp"

int main()
{
    using namespace kappa;

    const DecayProblem p = make_decay_problem(Kappa(0.9));
    std::printf("%-6s %-14s %-14s %-14s %-14s\n", "x", "closed form", "quadrature", "substitution", "series(8)");
    const PowerSeries series = decay_series_solution(p.k, 8);
    for (double x : {0.0, 0.1, 0.5, 1.0, 2.0}) {
        std::printf("%-6.2f %-14.10f %-14.10f %-14.10f %-14.10f\n", x, closed_form_decay(p, x),
                    quadrature_decay(p, x), substitution_decay(p, x), evaluate_series(series, p.k, x));
    }

    std::printf("\nmax |error| on [0, 5], h = 0.01\n");
    const std::array methods{Method::euler, Method::ab2, Method::rk4};
    for (const ErrorReport& r : error_table(p, methods, 0.01)) {
        std::printf("  %-6s %.3e\n", std::string(to_string(r.method)).c_str(), r.max_error);
    }
    return 0;
}
