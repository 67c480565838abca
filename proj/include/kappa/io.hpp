#pragma once

// On-disk formats shared by the CLI and the tests.
//
// CSV: one header row, comma delimiter, '.' decimal point, '\n' line ends,
// reals printed with 17 significant digits (exact double round-trip).
// JSON: UTF-8 objects with snake_case keys, two-space indentation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "kappa/harness.hpp"
#include "kappa/ode.hpp"
#include "kappa/series.hpp"

namespace kappa::io {

using Json = nlohmann::ordered_json;

inline std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// `x,f,method,kappa,h`; `label` replaces the method name in the method column when nonempty.
inline std::string trace_csv(const SolutionTrace& t, Kappa k, std::string_view label = {})
{
    std::string out = "x,f,method,kappa,h\n";
    const std::string_view name = label.empty() ? to_string(t.method) : label;
    const std::string tail = "," + std::string(name) + "," + format_real(k.value()) + "," +
                             format_real(t.h) + "\n";
    for (const Sample& s : t.samples) out += format_real(s.x) + "," + format_real(s.f) + tail;
    return out;
}

inline Json trace_json(const SolutionTrace& t, Kappa k, std::string_view label = {})
{
    Json rows = Json::array();
    for (const Sample& s : t.samples) rows.push_back({{"x", s.x}, {"f", s.f}});
    const std::string_view name = label.empty() ? to_string(t.method) : label;
    return {{"method", name}, {"kappa", k.value()}, {"h", t.h}, {"samples", rows}};
}

/// `x,f,slope`
inline std::string slope_field_csv(std::span<const SlopeSample> field)
{
    std::string out = "x,f,slope\n";
    for (const SlopeSample& s : field) {
        out += format_real(s.x) + "," + format_real(s.f) + "," + format_real(s.slope) + "\n";
    }
    return out;
}

/// `x,f_analytic,f_method,abs_error`; both traces must share a grid.
inline std::string logistic_csv(const SolutionTrace& analytic, const SolutionTrace& numeric)
{
    if (analytic.samples.size() != numeric.samples.size()) {
        throw DomainError("logistic_csv: traces have different lengths");
    }
    std::string out = "x,f_analytic,f_method,abs_error\n";
    for (std::size_t i = 0; i < analytic.samples.size(); ++i) {
        const double a = analytic.samples[i].f;
        const double n = numeric.samples[i].f;
        out += format_real(analytic.samples[i].x) + "," + format_real(a) + "," + format_real(n) + "," +
               format_real(std::abs(n - a)) + "\n";
    }
    return out;
}

/// `method,h,x,abs_error`
inline std::string error_report_csv(const ErrorReport& r)
{
    std::string out = "method,h,x,abs_error\n";
    const std::string head = std::string(to_string(r.method)) + "," + format_real(r.h) + ",";
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        out += head + format_real(r.x[i]) + "," + format_real(r.abs_error[i]) + "\n";
    }
    return out;
}

/// `order,x,series,exact,abs_error`
inline std::string series_error_csv(std::span<const SeriesErrorCurve> curves)
{
    std::string out = "order,x,series,exact,abs_error\n";
    for (const SeriesErrorCurve& c : curves) {
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            out += std::to_string(c.order) + "," + format_real(c.x[i]) + "," + format_real(c.series[i]) + "," +
                   format_real(c.exact[i]) + "," + format_real(c.abs_error[i]) + "\n";
        }
    }
    return out;
}

/// `{variable, kappa, order, coefficients}`
inline Json series_json(const PowerSeries& s, Kappa k)
{
    Json coeffs = Json::array();
    for (double c : s.coefficients()) coeffs.push_back(c);
    return {{"variable", to_string(s.variable())}, {"kappa", k.value()}, {"order", s.order()},
            {"coefficients", coeffs}};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Writes through a sibling temporary and renames it into place, so readers
/// never observe a partially written file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::filesystem::filesystem_error("cannot open for writing", tmp, std::error_code());
        out << content;
        out.flush();
        if (!out) throw std::filesystem::filesystem_error("write failed", tmp, std::error_code());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace kappa::io
