#pragma once

#include <vector>

#include "orlicz/young.hpp"

namespace orlicz {

/// Dimension n and order gamma of the fractional maximal operator, 0 < gamma < n.
struct GammaContext {
    int n = 3;
    double gamma = 1.0;

    GammaContext() = default;
    GammaContext(int n_, double gamma_);

    [[nodiscard]] double q_star() const { return n / (n - gamma); }
    [[nodiscard]] double r_star() const { return n / gamma; }
    [[nodiscard]] double s_star() const { return gamma / n; }
};

/// Nondecreasing curve y(x) in log-log coordinates, continued linearly past its
/// samples with the given slopes; slope 0 means the curve stays flat.
struct MonoCurve {
    std::vector<double> x;
    std::vector<double> y;
    double left_slope = 0.0;
    double right_slope = 0.0;

    [[nodiscard]] double eval(double at) const;
    /// sup{x : y(x) <= v}, or sup{x : y(x) < v} when strict
    [[nodiscard]] double inverse(double v, bool strict = false) const;
    [[nodiscard]] GridFn grid() const;
};

/// inf over (0,1) of A(t) t^{-n/gamma} > 0
[[nodiscard]] bool check_acond(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {});
/// int_0^1 B(s) s^{-q*-1} ds < inf
[[nodiscard]] bool check_bconv(const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});

/// G(s) = sup_{0<r<=s} A^{-1}(r) r^{-gamma/n} as a curve over log s.
[[nodiscard]] MonoCurve g_curve(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {});
[[nodiscard]] GridFn g_transform(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {});
/// A_gamma(t) = int_0^t G^{-1}(s) / s ds
[[nodiscard]] YoungFn a_gamma(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {});
/// A^{-1}(t) t^{-gamma/n}; requires I_A < n/gamma
[[nodiscard]] GridFn supout_inverse(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {});

/// F(t) = t^{q*} int_0^t B(s) s^{-q*-1} ds
[[nodiscard]] GridFn f_transform(const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});
/// E(t) = t^{gamma/n} F^{-1}(t) as a curve over log t.
[[nodiscard]] MonoCurve e_curve(const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});
/// B_gamma(t) = int_0^t E^{-1}(s) / s ds
[[nodiscard]] YoungFn b_gamma(const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});
/// t^{gamma/n} B^{-1}(t); requires i_B > q*
[[nodiscard]] GridFn intout_inverse(const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});

/// G_sup(s) = s^{gamma/n} G(s) as a curve over log s.
[[nodiscard]] MonoCurve g_sup_curve(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {});
/// A_sup(t) = int_0^t G_sup^{-1}(s) / s ds
[[nodiscard]] YoungFn a_sup(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {});

/// A(e^x) = int_{-inf}^x exp(c^{-1}(x')) dx' tabulated on the extended grid.
[[nodiscard]] YoungFn integral_young(const MonoCurve& c, const Config& cfg);

/// Wraps a tabulated nondecreasing function as a Young function for comparisons.
[[nodiscard]] YoungFn as_young(const GridFn& g, const std::string& label = {});

}  // namespace orlicz
