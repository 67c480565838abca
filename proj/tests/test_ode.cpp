#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "kappa/ode.hpp"
#include "oracles.hpp"

using namespace kappa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using kappa::test::rel_err;

namespace ref {
// mpmath, 40 significant digits
constexpr double decay_09_at_01 = 0.90495913616047530902;  // exp(−arsinh(0.09)/0.9)
constexpr double decay_09_at_1 = 0.40708183717417998691;   // exp(−arsinh(0.9)/0.9)
constexpr double logistic_09_at_1 = 0.71069071718549366804;
constexpr double exp_m2 = 0.13533528323661269189;
constexpr double classical_logistic_at_1 = 0.73105857863000487925;
}  // namespace ref

TEST_CASE("problem validation", "[ode]")
{
    CHECK_THROWS_AS(make_decay_problem(Kappa(0.5), 0.0), DomainError);
    CHECK_THROWS_AS(make_decay_problem(Kappa(0.5), -1.0), DomainError);
    CHECK_THROWS_AS(make_decay_problem(Kappa(0.5), 1.0, std::nan("")), DomainError);
    CHECK_THROWS_AS(make_decay_problem(Kappa(0.5), 1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_logistic_problem(Kappa(0.5), 1.0), DomainError);
    CHECK_THROWS_AS(make_logistic_problem(Kappa(0.5), 0.0), DomainError);
    CHECK_THROWS_AS(make_logistic_problem(Kappa(0.5), 0.5, -2.0), DomainError);
    CHECK(parse_method("rk4") == Method::rk4);
    CHECK_THROWS_AS(parse_method("heun"), DomainError);
    for (Method m : {Method::analytic, Method::euler, Method::ab2, Method::rk4}) {
        CHECK(parse_method(to_string(m)) == m);
    }
}

TEST_CASE("closed_form_decay reference values", "[ode][analytic]")
{
    const DecayProblem p = make_decay_problem(Kappa(0.9));
    CHECK(closed_form_decay(p, 0.0) == 1.0);
    CHECK_THAT(closed_form_decay(p, 0.1), WithinRel(ref::decay_09_at_01, 1e-15));
    CHECK_THAT(closed_form_decay(make_decay_problem(Kappa()), 1.0), WithinRel(std::exp(-1.0), 1e-16));
    CHECK_THROWS_AS(closed_form_decay(p, -0.1), DomainError);
    CHECK_THROWS_AS(closed_form_decay(p, 5.1), DomainError);
}

TEST_CASE("quadrature_decay reference values", "[ode][analytic]")
{
    const DecayProblem p = make_decay_problem(Kappa(0.9), 1.0, 2.5);
    CHECK_THAT(quadrature_decay(make_decay_problem(Kappa(0.9)), 1.0, 1e-12), WithinAbs(ref::decay_09_at_1, 1e-11));
    CHECK(quadrature_decay(p, 0.0) == 2.5);
    CHECK_THAT(quadrature_decay(make_decay_problem(Kappa()), 2.0), WithinAbs(ref::exp_m2, 1e-12));
}

TEST_CASE("substitution_decay reference values", "[ode][analytic]")
{
    CHECK_THAT(substitution_decay(make_decay_problem(Kappa(0.9)), 1.0), WithinRel(ref::decay_09_at_1, 1e-15));
    CHECK(substitution_decay(make_decay_problem(Kappa(0.4), 1.0, -3.0), 0.0) == -3.0);
    CHECK_THAT(substitution_decay(make_decay_problem(Kappa()), 1.0), WithinRel(std::exp(-1.0), 1e-16));
}

TEST_CASE("the analytic routes agree", "[ode][analytic][property]")
{
    for (double kv : {0.0, 0.3, 0.75, 0.9}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const DecayProblem p = make_decay_problem(Kappa(kv), beta, 1.0, 10.0);
            for (double x : test::uniform_grid(0.0, 10.0, 41)) {
                const double c = closed_form_decay(p, x);
                const double q = quadrature_decay(p, x, 1e-12);
                const double s = substitution_decay(p, x);
                CHECK(rel_err(c, q) < 1e-10);
                CHECK(rel_err(c, s) < 1e-13);
                CHECK(rel_err(q, s) < 1e-10);
            }
        }
    }
}

TEST_CASE("residual_decay reference values", "[ode][residual]")
{
    const DecayProblem p = make_decay_problem(Kappa(0.9));
    const double f = closed_form_decay(p, 0.5);
    CHECK(std::abs(residual_decay(p, f, decay_derivative(p, 0.5), 0.5)) < 1e-12);
    CHECK(residual_decay(p, 1.0, 0.0, 0.0) == 1.0);
    const DecayProblem c = make_decay_problem(Kappa());
    for (double x : {0.0, 0.7, 3.0}) CHECK(residual_decay(c, std::exp(-x), -std::exp(-x), x) == 0.0);
}

TEST_CASE("closed form satisfies the equation on a sweep", "[ode][residual][property]")
{
    for (double kv : {0.0, 0.3, 0.75, 0.9}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const DecayProblem p = make_decay_problem(Kappa(kv), beta, 1.0, 10.0);
            for (double x : test::uniform_grid(0.0, 10.0, 100)) {
                CHECK(std::abs(residual_decay(p, closed_form_decay(p, x), decay_derivative(p, x), x)) < 1e-11);
            }
        }
    }
}

TEST_CASE("decay derivative matches finite differences", "[ode][residual]")
{
    const DecayProblem p = make_decay_problem(Kappa(0.75), 2.0);
    const double h = 1e-5;
    for (double x = 0.1; x < 4.9; x += 0.3) {
        const double fd = (closed_form_decay(p, x + h) - closed_form_decay(p, x - h)) / (2 * h);
        CHECK_THAT(decay_derivative(p, x), WithinAbs(fd, 1e-9));
    }
}

TEST_CASE("slope_field reference values", "[ode][slope]")
{
    const std::array<double, 2> xs{0.0, 1.0};
    const std::array<double, 1> fs{1.0};
    const auto s09 = slope_field(make_decay_problem(Kappa(0.9)), xs, fs);
    CHECK(s09[0].slope == -1.0);
    const auto s0 = slope_field(make_decay_problem(Kappa()), xs, fs);
    CHECK(s0[1].slope == -1.0);
    const auto s75 = slope_field(make_decay_problem(Kappa(0.75)), xs, fs);
    CHECK_THAT(s75[1].slope, WithinRel(-0.8, 1e-15));
    CHECK_THROWS_AS(slope_field(make_decay_problem(Kappa()), std::span<const double>{}, fs), DomainError);
}

TEST_CASE("slope field is x-major and classical at kappa 0", "[ode][slope][property]")
{
    const auto xs = test::uniform_grid(0.0, 5.0, 21);
    const auto fs = test::uniform_grid(0.0, 1.0, 21);
    const auto field = slope_field(make_decay_problem(Kappa()), xs, fs);
    REQUIRE(field.size() == 441);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < fs.size(); ++j) {
            const SlopeSample& s = field[i * fs.size() + j];
            CHECK(s.x == xs[i]);
            CHECK(s.f == fs[j]);
            CHECK(s.slope == -fs[j]);
        }
    }
}

TEST_CASE("euler_solve reference values", "[ode][euler]")
{
    const SolutionTrace c = euler_solve(make_decay_problem(Kappa()), 0.5);
    CHECK(c.samples[1].x == 0.5);
    CHECK(c.samples[1].f == 0.5);
    const DecayProblem p = make_decay_problem(Kappa(0.9));
    CHECK(euler_solve(p, 0.1).samples[1].f == 0.9);

    const double end = closed_form_decay(p, 5.0);
    const double e1 = std::abs(euler_solve(p, 0.01).samples.back().f - end);
    const double e2 = std::abs(euler_solve(p, 0.005).samples.back().f - end);
    CHECK(e1 < 0.02 * end);
    CHECK_THAT(e1 / e2, WithinAbs(2.0, 0.2));
}

TEST_CASE("ab2_solve reference values", "[ode][ab2]")
{
    const SolutionTrace c = ab2_solve(make_decay_problem(Kappa(), 1.0, 1.0, 1.0), 0.1);
    CHECK_THAT(c.samples.back().f, WithinAbs(std::exp(-1.0), 3e-3));

    const DecayProblem p = make_decay_problem(Kappa(0.9));
    CHECK(ab2_solve(p, 0.1).samples[1].f == rk4_solve(p, 0.1).samples[1].f);

    const auto max_err = [&](double h) {
        double m = 0.0;
        for (const Sample& s : ab2_solve(p, h).samples) m = std::max(m, std::abs(s.f - p.exact(s.x)));
        return m;
    };
    CHECK_THAT(max_err(0.02) / max_err(0.01), WithinAbs(4.0, 0.8));
    CHECK_THROWS_AS(ab2_solve(p, 2.6), DomainError);
    CHECK_NOTHROW(ab2_solve(p, 2.5));
}

TEST_CASE("rk4_solve reference values", "[ode][rk4]")
{
    const DecayProblem p = make_decay_problem(Kappa(0.9));
    CHECK_THAT(rk4_solve(p, 0.1).samples[1].f, WithinAbs(ref::decay_09_at_01, 1e-6));
    const SolutionTrace c = rk4_solve(make_decay_problem(Kappa(), 1.0, 1.0, 1.0), 0.1);
    CHECK_THAT(c.samples.back().f, WithinAbs(std::exp(-1.0), 1e-6));

    const auto max_err = [&](double h) {
        double m = 0.0;
        for (const Sample& s : rk4_solve(p, h).samples) m = std::max(m, std::abs(s.f - p.exact(s.x)));
        return m;
    };
    CHECK_THAT(max_err(0.1) / max_err(0.05), WithinAbs(16.0, 4.0));
}

TEST_CASE("step size validation", "[ode]")
{
    const DecayProblem p = make_decay_problem(Kappa(0.9));
    for (double h : {0.0, -1.0, std::nan(""), 5.5}) {
        CHECK_THROWS_AS(euler_solve(p, h), DomainError);
        CHECK_THROWS_AS(rk4_solve(p, h), DomainError);
        CHECK_THROWS_AS(ab2_solve(p, h), DomainError);
        CHECK_THROWS_AS(analytic_trace(p, h), DomainError);
    }
    CHECK_NOTHROW(euler_solve(p, 5.0));
}

TEST_CASE("traces are uniform grids of the expected length", "[ode][property]")
{
    const DecayProblem p = make_decay_problem(Kappa(0.9));
    const LogisticProblem lp = make_logistic_problem(Kappa(0.9));
    for (Method m : {Method::analytic, Method::euler, Method::ab2, Method::rk4}) {
        for (double h : {0.1, 0.01, 0.03}) {
            const SolutionTrace t = solve(p, m, h);
            CHECK(t.method == m);
            CHECK(t.h == h);
            CHECK(t.samples.size() == static_cast<std::size_t>(std::floor(5.0 / h + 1e-9)) + 1);
            CHECK(t.samples.front().x == 0.0);
            CHECK(t.samples.front().f == 1.0);
            for (std::size_t i = 1; i < t.samples.size(); ++i) {
                CHECK_THAT(t.samples[i].x - t.samples[i - 1].x, WithinAbs(h, 1e-12));
                CHECK(std::isfinite(t.samples[i].f));
            }
            const SolutionTrace l = solve(lp, m, h);
            CHECK(l.samples.front().x == -5.0);
            CHECK(l.samples.size() == static_cast<std::size_t>(std::floor(10.0 / h + 1e-9)) + 1);
        }
    }
    CHECK(solve(p, Method::rk4, 0.01).samples.size() == 501);
}

TEST_CASE("decay traces decrease and stay positive, logistic traces increase", "[ode][property]")
{
    for (double kv : {0.0, 0.5, 0.9}) {
        const DecayProblem p = make_decay_problem(Kappa(kv));
        const LogisticProblem lp = make_logistic_problem(Kappa(kv));
        for (Method m : {Method::analytic, Method::euler, Method::ab2, Method::rk4}) {
            for (double h : {0.1, 0.01}) {
                const auto t = solve(p, m, h).samples;
                for (std::size_t i = 1; i < t.size(); ++i) {
                    CHECK(t[i].f < t[i - 1].f);
                    CHECK(t[i].f > 0.0);
                }
                const auto l = solve(lp, m, h).samples;
                for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i].f > l[i - 1].f);
            }
        }
    }
}

TEST_CASE("integrators against the closed form at h = 0.01", "[ode][property]")
{
    const DecayProblem p = make_decay_problem(Kappa(0.9));
    const auto max_err = [&](Method m) {
        double e = 0.0;
        for (const Sample& s : solve(p, m, 0.01).samples) e = std::max(e, std::abs(s.f - p.exact(s.x)));
        return e;
    };
    CHECK(max_err(Method::euler) < 5e-3);
    CHECK(max_err(Method::ab2) < 5e-5);
    CHECK(max_err(Method::rk4) < 1e-9);
    CHECK(max_err(Method::analytic) == 0.0);
}

TEST_CASE("beta scales the decay rate", "[ode]")
{
    // With κ=0 the β-problem is plain exponential decay at rate β.
    const DecayProblem p = make_decay_problem(Kappa(), 2.0, 3.0);
    CHECK_THAT(closed_form_decay(p, 1.0), WithinRel(3.0 * std::exp(-2.0), 1e-15));
    CHECK_THAT(rk4_solve(p, 0.01).samples[100].f, WithinRel(3.0 * std::exp(-2.0), 1e-8));
    // For κ≠0, f(x; β) = f(βx; 1) because the weight carries κβx.
    const DecayProblem q = make_decay_problem(Kappa(0.9), 2.0);
    const DecayProblem r = make_decay_problem(Kappa(0.9), 1.0, 1.0, 10.0);
    CHECK_THAT(closed_form_decay(q, 1.5), WithinRel(closed_form_decay(r, 3.0), 1e-15));
}

TEST_CASE("logistic_closed_form reference values", "[ode][logistic]")
{
    for (double kv : {0.0, 0.5, 0.9}) CHECK(logistic_closed_form(make_logistic_problem(Kappa(kv)), 0.0) == 0.5);
    CHECK_THAT(logistic_closed_form(make_logistic_problem(Kappa()), 1.0), WithinRel(ref::classical_logistic_at_1, 1e-15));
    CHECK_THAT(logistic_closed_form(make_logistic_problem(Kappa(0.9)), 1.0), WithinRel(ref::logistic_09_at_1, 1e-15));
    const LogisticProblem g = make_logistic_problem(Kappa(0.5), 0.2);
    CHECK_THAT(logistic_closed_form(g, 0.0), WithinRel(0.2, 1e-15));
    for (double x = -50.0; x <= 50.0; x += 0.5) {
        const double f = logistic_closed_form(make_logistic_problem(Kappa(0.9)), x);
        CHECK((f > 0.0 && f < 1.0));
    }
}

TEST_CASE("logistic_residual reference values", "[ode][logistic]")
{
    CHECK(std::abs(logistic_residual(make_logistic_problem(Kappa(0.9)), 0.0)) < 1e-14);
    CHECK(std::abs(logistic_residual(make_logistic_problem(Kappa()), 2.0)) < 1e-13);
    CHECK(std::abs(logistic_residual(make_logistic_problem(Kappa(0.5)), -3.0)) < 1e-12);
}

TEST_CASE("logistic derivative matches finite differences", "[ode][logistic]")
{
    const LogisticProblem lp = make_logistic_problem(Kappa(0.75), 0.3);
    const double h = 1e-5;
    for (double x = -4.9; x < 4.9; x += 0.35) {
        const double fd = (logistic_closed_form(lp, x + h) - logistic_closed_form(lp, x - h)) / (2 * h);
        CHECK_THAT(logistic_derivative(lp, x), WithinAbs(fd, 1e-9));
        CHECK(std::abs(logistic_residual(lp, x)) < 1e-12);
    }
}

TEST_CASE("logistic rk4 tracks the closed form", "[ode][logistic]")
{
    for (double kv : {0.0, 0.5, 0.9}) {
        const LogisticProblem lp = make_logistic_problem(Kappa(kv));
        double e = 0.0;
        for (const Sample& s : rk4_solve(lp, 0.01).samples) e = std::max(e, std::abs(s.f - lp.exact(s.x)));
        CHECK(e < 1e-8);
    }
}
