// kappa: command-line front end for the κ-deformed numerics library.
//
// Exit codes: 0 success, 2 usage or domain error, 3 numerical failure,
// 1 I/O failure.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kappa/io.hpp"
#include "kappa/kappa.hpp"

namespace {

using namespace kappa;
namespace fs = std::filesystem;

constexpr int exit_ok = 0;
constexpr int exit_io = 1;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

/// Flag values for every subcommand; each subcommand reads the fields it owns.
struct CliConfig {
    std::string fn = "exp";
    double kappa = 0.9;
    double beta = 1.0;
    double f0 = 1.0;
    double logistic_f0 = 0.5;
    double x = 0.0;
    double y = 0.0;
    bool classical_limit = false;
    double h = default_step;
    double x_min = 0.0;
    double x_max = default_x_max;
    double f_min = 0.0;
    double f_max = 1.0;
    int nx = 21;
    int nf = 21;
    int order = 8;
    double tol = default_quadrature_tol;
    std::string problem = "decay";
    std::string method = "rk4";
    std::string target = "decay";
    std::string source = "series";
    std::vector<std::string> methods{"euler", "ab2", "rk4"};
    std::vector<double> h_ladder{default_step};
    std::vector<int> orders{2, 4, 6, 8};
    std::string format = "csv";
    std::string out;
    std::string out_dir = ".";
};

fs::path output_dir(const CliConfig& cfg)
{
    if (const char* env = std::getenv("KAPPA_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return cfg.out_dir;
}

/// Writes to --out (resolved against the output directory) or to stdout.
void emit(const CliConfig& cfg, const std::string& content)
{
    if (cfg.out.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    fs::path path = cfg.out;
    if (path.is_relative()) path = output_dir(cfg) / path;
    io::write_atomic(path, content);
}

std::vector<double> linspace(double a, double b, int n)
{
    if (n < 1) throw DomainError("grid size must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

void check_format(const CliConfig& cfg)
{
    if (cfg.format != "csv" && cfg.format != "json") throw DomainError("format must be csv or json");
}

// --- subcommands --------------------------------------------------------------

void run_eval(const CliConfig& cfg)
{
    const Kappa k(cfg.kappa);
    double v = 0.0;
    if (cfg.fn == "exp") {
        v = kappa_exp(k, cfg.x);
    } else if (cfg.fn == "ln") {
        v = kappa_ln(k, cfg.x);
    } else if (cfg.fn == "sum") {
        v = kappa_sum(k, cfg.x, cfg.y);
    } else if (cfg.fn == "product") {
        v = kappa_product(k, cfg.x, cfg.y, cfg.classical_limit ? ProductLimit::classical : ProductLimit::reject);
    } else if (cfg.fn == "weight") {
        v = differential_weight(k, cfg.x);
    } else if (cfg.fn == "knum") {
        v = to_kappa_number(k, cfg.x);
    } else if (cfg.fn == "dual") {
        v = from_kappa_number(k, cfg.x);
    } else {
        throw DomainError("unknown function '" + cfg.fn + "'");
    }
    std::cout << io::format_real(v) << "\n";
}

SolutionTrace decay_route_trace(const DecayProblem& p, double h, bool quadrature, double tol)
{
    SolutionTrace t = analytic_trace(p, h);
    for (Sample& s : t.samples) {
        const double x = std::min(s.x, p.x_max);
        s.f = quadrature ? quadrature_decay(p, x, tol) : substitution_decay(p, x);
    }
    return t;
}

void run_solve(const CliConfig& cfg)
{
    check_format(cfg);
    const Kappa k(cfg.kappa);
    SolutionTrace trace;
    std::string label;
    if (cfg.problem == "decay") {
        const DecayProblem p = make_decay_problem(k, cfg.beta, cfg.f0, cfg.x_max);
        if (cfg.method == "quadrature" || cfg.method == "substitution") {
            trace = decay_route_trace(p, cfg.h, cfg.method == "quadrature", cfg.tol);
            label = cfg.method;
        } else {
            trace = solve(p, parse_method(cfg.method), cfg.h);
        }
    } else if (cfg.problem == "logistic") {
        const LogisticProblem p = make_logistic_problem(k, cfg.logistic_f0, cfg.x_max);
        trace = solve(p, parse_method(cfg.method), cfg.h);
    } else {
        throw DomainError("problem must be decay or logistic");
    }
    emit(cfg, cfg.format == "csv" ? io::trace_csv(trace, k, label) : io::dump(io::trace_json(trace, k, label)));
}

void run_series(const CliConfig& cfg)
{
    const Kappa k(cfg.kappa);
    if (cfg.target == "exp") {
        emit(cfg, io::dump(io::series_json(exp_kappa_taylor(k, cfg.order), k)));
    } else if (cfg.target == "ln1p") {
        emit(cfg, io::dump(io::series_json(ln_kappa_shifted_taylor(k, cfg.order), k)));
    } else if (cfg.target == "decay") {
        emit(cfg, io::dump(io::series_json(decay_series_solution(k, cfg.order), k)));
    } else if (cfg.target == "sqrt") {
        emit(cfg, io::dump(io::series_json(sqrt_weight_series(k, cfg.order), k)));
    } else if (cfg.target == "picard") {
        emit(cfg, io::dump(io::series_json(to_series(picard_iterate(k, cfg.order)), k)));
    } else {
        throw DomainError("unknown series target '" + cfg.target + "'");
    }
}

template <OdeProblem P>
io::Json compare_problem(const P& p, const CliConfig& cfg, const std::vector<Method>& methods)
{
    const fs::path dir = output_dir(cfg);
    io::Json per_method = io::Json::array();
    for (Method m : methods) {
        std::vector<double> hs, max_errors;
        io::Json levels = io::Json::array();
        for (std::size_t i = 0; i < cfg.h_ladder.size(); ++i) {
            const double h = cfg.h_ladder[i];
            const ErrorReport r = error_report(p, solve(p, m, h));
            const std::string file = "errors_" + std::string(to_string(m)) + "_" + std::to_string(i) + ".csv";
            io::write_atomic(dir / file, io::error_report_csv(r));
            levels.push_back({{"h", h}, {"max_error", r.max_error}, {"rms_error", r.rms_error}, {"file", file}});
            // levels at the round-off floor carry no order information
            if (r.max_error > roundoff_floor && hs.size() == i) {
                hs.push_back(h);
                max_errors.push_back(r.max_error);
            }
        }
        per_method.push_back({{"method", to_string(m)}, {"levels", levels},
                              {"fitted_orders", fitted_orders(hs, max_errors)}});
    }
    return per_method;
}

void run_compare(const CliConfig& cfg)
{
    const Kappa k(cfg.kappa);
    std::vector<Method> methods;
    for (const std::string& name : cfg.methods) {
        if (name.empty()) continue;
        const Method m = parse_method(name);
        if (m == Method::analytic) throw DomainError("compare needs numerical methods");
        methods.push_back(m);
    }
    if (methods.empty()) throw DomainError("compare needs at least one method");
    if (cfg.h_ladder.empty()) throw DomainError("compare needs at least one step size");
    for (std::size_t i = 1; i < cfg.h_ladder.size(); ++i) {
        if (!(cfg.h_ladder[i] < cfg.h_ladder[i - 1])) throw DomainError("h ladder must be strictly decreasing");
    }
    std::sort(methods.begin(), methods.end());
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

    io::Json per_method;
    if (cfg.problem == "decay") {
        per_method = compare_problem(make_decay_problem(k, cfg.beta, cfg.f0, cfg.x_max), cfg, methods);
    } else if (cfg.problem == "logistic") {
        per_method = compare_problem(make_logistic_problem(k, cfg.logistic_f0, cfg.x_max), cfg, methods);
    } else {
        throw DomainError("problem must be decay or logistic");
    }
    const io::Json summary = {{"problem", cfg.problem}, {"kappa", k.value()}, {"beta", cfg.beta},
                              {"x_max", cfg.x_max}, {"methods", per_method}};
    const std::string text = io::dump(summary);
    io::write_atomic(output_dir(cfg) / "summary.json", text);
    std::cout << text;
}

void run_slope_field(const CliConfig& cfg)
{
    // the grid, not the problem's x_max, bounds the field
    const DecayProblem p = make_decay_problem(Kappa(cfg.kappa), cfg.beta);
    const auto xs = linspace(cfg.x_min, cfg.x_max, cfg.nx);
    const auto fs_ = linspace(cfg.f_min, cfg.f_max, cfg.nf);
    emit(cfg, io::slope_field_csv(slope_field(p, xs, fs_)));
}

void run_logistic(const CliConfig& cfg)
{
    const Kappa k(cfg.kappa);
    const LogisticProblem p = make_logistic_problem(k, cfg.logistic_f0, cfg.x_max);
    const Method m = parse_method(cfg.method);
    emit(cfg, io::logistic_csv(analytic_trace(p, cfg.h), solve(p, m, cfg.h)));
}

void run_series_error(const CliConfig& cfg)
{
    const Kappa k(cfg.kappa);
    SeriesSource source;
    if (cfg.source == "series") {
        source = SeriesSource::power_series;
    } else if (cfg.source == "picard") {
        source = SeriesSource::picard;
    } else {
        throw DomainError("source must be series or picard");
    }
    const auto xs = linspace(0.0, cfg.x_max, cfg.nx);
    emit(cfg, io::series_error_csv(series_error_curve(k, cfg.orders, xs, source)));
}

}  // namespace

int main(int argc, char** argv)
{
    CliConfig cfg;
    CLI::App app{"kappa: kappa-deformed exponential, decay equation solvers and figure data"};
    app.require_subcommand(1);
    // -h would collide with the --h step-size option
    app.set_help_flag("--help", "print help and exit");

    auto add_kappa = [&](CLI::App* sub) { sub->add_option("--kappa", cfg.kappa, "deformation parameter, |kappa| < 1"); };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "output file (default: standard output)");
        sub->add_option("--out-dir", cfg.out_dir, "directory for relative output paths (KAPPA_OUT_DIR overrides)");
    };

    auto* eval = app.add_subcommand("eval", "evaluate a kappa-deformed function");
    eval->add_option("--fn", cfg.fn, "exp | ln | sum | product | weight | knum | dual")->required();
    add_kappa(eval);
    eval->add_option("--x", cfg.x, "argument");
    eval->add_option("--y", cfg.y, "second argument of sum/product");
    eval->add_flag("--classical-limit", cfg.classical_limit, "product: return x*y at kappa = 0");

    auto* solve_cmd = app.add_subcommand("solve", "solve the decay or logistic problem on a uniform grid");
    add_kappa(solve_cmd);
    solve_cmd->add_option("--problem", cfg.problem, "decay | logistic");
    solve_cmd->add_option("--beta", cfg.beta, "decay rate");
    solve_cmd->add_option("--f0", cfg.f0, "decay initial value f(0)");
    solve_cmd->add_option("--logistic-f0", cfg.logistic_f0, "logistic value at x = 0");
    solve_cmd->add_option("--method", cfg.method, "analytic | euler | ab2 | rk4 | quadrature | substitution");
    solve_cmd->add_option("--h", cfg.h, "step size");
    solve_cmd->add_option("--x-max", cfg.x_max, "domain end");
    solve_cmd->add_option("--tol", cfg.tol, "quadrature tolerance");
    solve_cmd->add_option("--format", cfg.format, "csv | json");
    add_out(solve_cmd);

    auto* series = app.add_subcommand("series", "emit truncated series coefficients as JSON");
    add_kappa(series);
    series->add_option("--target", cfg.target, "exp | ln1p | decay | sqrt | picard");
    series->add_option("--order", cfg.order, "truncation order (picard: iteration count)");
    add_out(series);

    auto* compare = app.add_subcommand("compare", "error tables and fitted convergence orders");
    add_kappa(compare);
    compare->add_option("--problem", cfg.problem, "decay | logistic");
    compare->add_option("--beta", cfg.beta, "decay rate");
    compare->add_option("--f0", cfg.f0, "decay initial value f(0)");
    compare->add_option("--logistic-f0", cfg.logistic_f0, "logistic value at x = 0");
    compare->add_option("--x-max", cfg.x_max, "domain end");
    compare->add_option("--methods", cfg.methods, "comma-separated numerical methods")->delimiter(',');
    compare->add_option("--h-ladder", cfg.h_ladder, "comma-separated decreasing step sizes")->delimiter(',');
    compare->add_option("--out-dir", cfg.out_dir, "output directory (KAPPA_OUT_DIR overrides)");

    auto* slope = app.add_subcommand("slope-field", "slope field of the decay equation as CSV");
    add_kappa(slope);
    slope->add_option("--beta", cfg.beta, "decay rate");
    slope->add_option("--x-min", cfg.x_min);
    slope->add_option("--x-max", cfg.x_max);
    slope->add_option("--f-min", cfg.f_min);
    slope->add_option("--f-max", cfg.f_max);
    slope->add_option("--nx", cfg.nx, "grid points along x");
    slope->add_option("--nf", cfg.nf, "grid points along f");
    add_out(slope);

    auto* logistic = app.add_subcommand("logistic", "logistic solution vs a numerical method as CSV");
    add_kappa(logistic);
    logistic->add_option("--logistic-f0", cfg.logistic_f0, "value at x = 0");
    logistic->add_option("--method", cfg.method, "analytic | euler | ab2 | rk4");
    logistic->add_option("--h", cfg.h, "step size");
    logistic->add_option("--x-max", cfg.x_max, "half-width of [-x_max, x_max]");
    add_out(logistic);

    auto* series_error = app.add_subcommand("series-error", "truncation error of series solutions as CSV");
    add_kappa(series_error);
    series_error->add_option("--orders", cfg.orders, "comma-separated orders")->delimiter(',');
    series_error->add_option("--source", cfg.source, "series | picard");
    series_error->add_option("--x-max", cfg.x_max, "grid end");
    series_error->add_option("--nx", cfg.nx, "grid points");
    add_out(series_error);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*eval) run_eval(cfg);
        else if (*solve_cmd) run_solve(cfg);
        else if (*series) run_series(cfg);
        else if (*compare) run_compare(cfg);
        else if (*slope) run_slope_field(cfg);
        else if (*logistic) run_logistic(cfg);
        else if (*series_error) run_series_error(cfg);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "i/o failure: " << e.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}
