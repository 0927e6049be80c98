#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/asymptotics.hpp"
#include "orlicz/grid.hpp"

namespace orlicz {

/// Local power exponents of a Young function at the two ends (inf for
/// exponential growth, plateaus or jumps to infinity).
struct EndExponents {
    double zero = std::nan("");
    double infinity = std::nan("");
};

/// Linear-in-t replacement of A on (t0, t1), stored in log coordinates.
struct Chord {
    double u0 = 0, u1 = 0;
    double lv0 = 0, lv1 = 0;
};

/// A Young function: symbolic pieces and/or a log-log table.
///
/// log_zero_end and log_finite_sup are the logs of sup{A = 0} and sup{A < inf}.
/// Evaluation order: chords, then symbolic pieces, then the table. With
/// ratio_table the table holds log(A(t)/t), which keeps fast-growing tails exact.
struct YoungFn {
    std::optional<AsymptoticFamily> symbolic;
    GridFn table;
    bool ratio_table = false;
    double log_zero_end = -kInf;
    double log_finite_sup = kInf;
    std::optional<EndExponents> exponents;
    std::vector<Chord> chords;
    std::vector<double> extra_nodes;
    std::string label;

    [[nodiscard]] double log_eval(double u) const;
    /// log(A(t)/t) at u = log t
    [[nodiscard]] double log_ratio(double u) const { return log_eval_shifted(u, 1.0); }
    /// log(A(t) / t^shift) at u = log t, without cancellation for symbolic pieces
    [[nodiscard]] double log_eval_shifted(double u, double shift) const;
    [[nodiscard]] double eval(double t) const;
    [[nodiscard]] double zero_plateau_end() const { return std::exp(log_zero_end); }
    [[nodiscard]] double finite_sup() const { return std::exp(log_finite_sup); }
    [[nodiscard]] bool pure_symbolic() const { return symbolic.has_value() && chords.empty(); }
    /// Range of log t where values are computed rather than extrapolated.
    [[nodiscard]] double trusted_lo() const { return symbolic || table.empty() ? -kInf : table.log_t.front(); }
    [[nodiscard]] double trusted_hi() const { return symbolic || table.empty() ? kInf : table.log_t.back(); }
    /// Abscissae (log t) where this function carries information beyond the shared grid.
    [[nodiscard]] std::vector<double> nodes() const;
};

struct EvalResult {
    double value = 0.0;
    bool saturated = false;
};

[[nodiscard]] EvalResult eval_checked(const YoungFn& a, double t);

/// Builds a Young function from closed-form pieces; where the sampled pieces fail
/// monotonicity or convexity (near the join) they are replaced by chords of the
/// greatest convex minorant of the running max.
[[nodiscard]] YoungFn from_family(const AsymptoticFamily& fam, const Config& cfg = {});
/// Builds a tabulated Young function from log samples (monotone and convex repair applied).
[[nodiscard]] YoungFn from_samples(std::vector<double> log_t, std::vector<double> log_v,
                                   double log_zero_end = -kInf, double log_finite_sup = kInf);

namespace families {
[[nodiscard]] AsymPiece power_piece(double p, double log_pow = 0.0, double coef = 1.0);
[[nodiscard]] YoungFn power(double p, double coef = 1.0, const Config& cfg = {});
[[nodiscard]] YoungFn zygmund(double p0, double a0, double pinf, double ainf, const Config& cfg = {});
[[nodiscard]] YoungFn exp_type(double b0, double binf, const Config& cfg = {});
[[nodiscard]] YoungFn linf(const Config& cfg = {});
[[nodiscard]] YoungFn l1(const Config& cfg = {});
[[nodiscard]] YoungFn pow_modifier(double p0, double c0, double pinf, double cinf, const Config& cfg = {});
}  // namespace families

[[nodiscard]] double eval(const YoungFn& a, double t);
/// sup{t >= 0 : A(t) <= s}
[[nodiscard]] double inverse(const YoungFn& a, double s);
[[nodiscard]] double log_inverse(const YoungFn& a, double log_s);
[[nodiscard]] YoungFn conjugate(const YoungFn& a, const Config& cfg = {});

struct Relation {
    bool holds = false;
    double constant = kInf;
    double constant_back = kInf;
    double worst_t = 0.0;
    std::vector<std::string> flags;
};

/// B(t) <= A(c t) on the grid, least c in [1, c_max], plus an asymptotic tail check.
[[nodiscard]] Relation dominates(const YoungFn& a, const YoungFn& b, const Config& cfg = {});
[[nodiscard]] Relation equivalent(const YoungFn& a, const YoungFn& b, const Config& cfg = {});
[[nodiscard]] Relation essentially_dominates(const YoungFn& a, const YoungFn& b, const Config& cfg = {});

/// Sup of f/g and g/f over log-spaced s in [s_lo, s_hi] for two log-domain functions.
struct RatioBounds {
    double up = 0.0;
    double down = 0.0;
    double worst_s = 0.0;
};
[[nodiscard]] RatioBounds ratio_bounds(const std::function<double(double)>& log_f,
                                       const std::function<double(double)>& log_g,
                                       double s_lo, double s_hi, int per_decade = 24);
/// Compares A^{-1} and B^{-1} on [s_lo, s_hi].
[[nodiscard]] RatioBounds inverse_ratio_bounds(const YoungFn& a, const YoungFn& b, double s_lo,
                                               double s_hi, int per_decade = 24);

struct NormResult {
    double value = 0.0;
    std::vector<std::string> flags;
};

/// log of the modular  int_0^inf A(g(t) / lambda) dt
[[nodiscard]] double log_modular(const YoungFn& a, const GridFn& g, double log_lambda,
                                 const Config& cfg = {});
[[nodiscard]] NormResult luxemburg_norm(const YoungFn& a, const GridFn& g, const Config& cfg = {});

struct Cell {
    double value = 0.0;
    double measure = 0.0;
};

[[nodiscard]] GridFn rearrangement(std::vector<Cell> cells);
[[nodiscard]] NormResult luxemburg_norm_cells(const YoungFn& a, const std::vector<Cell>& cells);
[[nodiscard]] NormResult norm_by_bisection(const std::function<double(double)>& log_mod);

/// Checks monotonicity, sampled convexity and k A(t) <= A(k t); returns violations.
[[nodiscard]] std::vector<std::string> validate(const YoungFn& a, const Config& cfg = {});

/// Tail trend of u -> f(u) toward both ends of the grid.
struct TailTrends {
    Trend zero = Trend::Flat;
    Trend infinity = Trend::Flat;
};
/// Compares the increments of f over |u| in [x/4, x/2] and [x/2, x] with x = |u_end|:
/// a trend needs a last increment above 0.05 that has not shrunk below 3/4 of the previous one.
[[nodiscard]] Trend increment_trend(const std::function<double(double)>& f, double u_end);
/// Trends at the grid ends, or at lo_end / hi_end when given.
[[nodiscard]] TailTrends tail_trends(const std::function<double(double)>& f, const Config& cfg,
                                     double lo_end = std::nan(""), double hi_end = std::nan(""));

/// log lim A(s)/s at an end.
[[nodiscard]] double log_slope_limit(const YoungFn& a, End end);

}  // namespace orlicz
