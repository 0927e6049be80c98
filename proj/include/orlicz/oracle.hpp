#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/transforms.hpp"

namespace orlicz {

/// Nonnegative nonincreasing function on (0, inf) used to probe the Hardy-type operator.
struct TestFunction {
    enum class Kind { Indicator, PowerLog, Steps };
    Kind kind = Kind::Indicator;
    /// Indicator: support (0, r)
    double r = 1.0;
    /// PowerLog: s^{-p} (1 + |log s|)^beta on (a, b)
    double p = 0.0;
    double beta = 0.0;
    double a = 0.0;
    double b = 1.0;
    /// Steps: value[i] on [ends[i-1], ends[i]) with ends[-1] = 0
    std::vector<double> values;
    std::vector<double> ends;

    [[nodiscard]] static TestFunction indicator(double r);
    [[nodiscard]] static TestFunction power_log(double p, double beta, double a, double b);
    [[nodiscard]] static TestFunction steps(std::vector<double> values, std::vector<double> ends);

    /// s -> g(s / scale) sampled on the grid
    [[nodiscard]] GridFn sample(double scale, const Config& cfg = {}) const;
    [[nodiscard]] std::string name() const;
};

/// H'g(t) = t^{gamma/n - 1} int_0^t g(s) ds
[[nodiscard]] GridFn hardy_dual_apply(const GridFn& g, const GammaContext& ctx, const Config& cfg = {});

enum class ProbeTrend { Bounded, Diverging, Inconclusive };
[[nodiscard]] const char* trend_name(ProbeTrend t);

/// One probe evaluation ||H'g||_B / ||g||_A at a dilation scale.
struct ProbeEntry {
    std::string function;
    double scale = 1.0;
    double ratio = 0.0;
    std::vector<std::string> flags;
};

struct ProbeReport {
    std::vector<ProbeEntry> ratios;
    double max_ratio = 0.0;
    ProbeTrend trend = ProbeTrend::Inconclusive;
    /// trend of each family member, in family order
    std::vector<ProbeTrend> member_trends;
};

[[nodiscard]] std::vector<double> default_probe_scales();
[[nodiscard]] std::vector<TestFunction> default_probe_family();

/// Diverging needs monotone growth by at least divergence_factor across the sweep.
[[nodiscard]] ProbeReport norm_probe(const YoungFn& a, const YoungFn& b, const GammaContext& ctx,
                                     const std::vector<TestFunction>& family, const std::vector<double>& scales,
                                     const Config& cfg = {}, double divergence_factor = 10.0);

/// Square N x N grid of cell values on the unit square, row-major.
struct ValueGrid {
    int n = 0;
    std::vector<double> v;

    ValueGrid() = default;
    explicit ValueGrid(int n_, double fill = 0.0);
    [[nodiscard]] double& at(int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; }
    [[nodiscard]] double at(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
    [[nodiscard]] double cell_area() const { return 1.0 / (static_cast<double>(n) * n); }
};

inline constexpr int kMaxGrid = 256;

/// M_gamma f on cell centres over grid-aligned squares.
[[nodiscard]] ValueGrid maximal_2d(const ValueGrid& f, double gamma);

/// Modular inequality with the integrals restricted to the unit square.
[[nodiscard]] bool modular_probe(const YoungFn& a, const YoungFn& b, const GammaContext& ctx, const ValueGrid& f,
                                 double c2);

struct RearrangementReport {
    /// max over t of (M_gamma f)^*(t) / sup_{s >= t} s^{gamma/n} f^{**}(s)
    double c1 = 0.0;
    double worst_t = 0.0;
    std::vector<std::pair<double, double>> samples;
};
[[nodiscard]] RearrangementReport rearrangement_bound_check(const ValueGrid& f, const GammaContext& ctx);

/// CSV with header "N,gamma" followed by N rows of N values.
void write_grid_csv(std::ostream& os, const ValueGrid& g, double gamma);
[[nodiscard]] std::pair<ValueGrid, double> read_grid_csv(std::istream& is);
[[nodiscard]] std::string probe_report_json(const ProbeReport& r);

}  // namespace orlicz
