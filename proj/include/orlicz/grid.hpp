#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kLn10 = 2.302585092994045684;

/// Grid and search settings shared by the numerical routines.
struct Config {
    double t_min = 1e-12;
    double t_max = 1e12;
    int points_per_decade = 24;
    double c_max = 1e6;

    [[nodiscard]] std::vector<double> log_grid() const;
    [[nodiscard]] double du() const { return kLn10 / points_per_decade; }
    [[nodiscard]] double u_min() const { return std::log(t_min); }
    [[nodiscard]] double u_max() const { return std::log(t_max); }
};

/// Error carrying a stable machine-readable code.
struct OrliczError : std::runtime_error {
    std::string code;
    OrliczError(std::string c, const std::string& what)
        : std::runtime_error(what), code(std::move(c)) {}
};

// log-domain helpers; -inf encodes 0 and +inf encodes infinity
[[nodiscard]] double log_add(double a, double b);
[[nodiscard]] double log_sub(double a, double b);
/// log of the integral over [0, w] of exp(h0 + (h1 - h0) x / w)
[[nodiscard]] double log_segment(double h0, double h1, double w);
/// log(e^b - e^a) for b > a, i.e. the log of the length of [e^a, e^b]
[[nodiscard]] double log_span(double a, double b);

enum class Interp { LogLinear, StepRight };

struct TailFit {
    enum class Kind { Power, PlateauZero, PlateauInfinity };
    Kind kind = Kind::Power;
    double exponent = 0.0;
    double log_coef = 0.0;
    /// power of (1 + |u|) relative to its value at the anchor abscissa
    double log_pow = 0.0;
    double anchor = 0.0;

    [[nodiscard]] double log_eval(double u) const;
    /// log_eval(u) - shift * u, treating exponents within fit resolution of shift as equal
    [[nodiscard]] double log_eval_shifted(double u, double shift) const;
};

/// Sampled nonnegative function on (0, inf) stored in log-log coordinates.
///
/// StepRight: value i holds on [t_{i-1}, t_i) with t_{-1} = 0 and the function
/// vanishes from the last abscissa on. When log_d (d log v / d log t) is filled,
/// LogLinear segments with finite data use cubic Hermite interpolation.
struct GridFn {
    std::vector<double> log_t;
    std::vector<double> log_v;
    std::vector<double> log_d;
    Interp interp = Interp::LogLinear;
    TailFit tail_zero;
    TailFit tail_infinity;

    static GridFn from_log(std::vector<double> lt, std::vector<double> lv,
                           Interp interp = Interp::LogLinear);

    void fit_tails();
    /// Refits one tail with a known power exponent, keeping the log-power correction.
    void pin_tail(bool zero_end, double exponent);
    [[nodiscard]] double log_eval(double u) const;
    /// log(f(t) / t^shift) without cancellation in the extrapolated tails
    [[nodiscard]] double log_eval_shifted(double u, double shift) const;
    [[nodiscard]] double eval(double t) const;
    [[nodiscard]] bool empty() const { return log_t.empty(); }
    [[nodiscard]] std::size_t size() const { return log_t.size(); }
};

/// Geometric grid helper: log-spaced abscissae between two logs with a given density.
[[nodiscard]] std::vector<double> log_range(double lo, double hi, int per_decade);

/// Ordinary least squares for small dense systems (normal equations, pivoted elimination).
[[nodiscard]] std::vector<double> least_squares(const std::vector<std::vector<double>>& rows,
                                                const std::vector<double>& rhs);

}  // namespace orlicz
