#include "orlicz/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/boyd.hpp"

namespace orlicz {

namespace {

constexpr double kCap = 1e290;
constexpr double kNegligible = 60.0;

double margin(const Config& cfg) { return std::log(cfg.c_max) + 2 * kLn10; }

double step_at(double u, double du) {
    const double a = std::abs(u);
    return std::max(du, (a < 1e4 ? 0.02 : 0.05) * a);
}

std::vector<double> core_axis(const Config& cfg, const YoungFn& f) {
    const double m = margin(cfg);
    const double lo = cfg.u_min() - m;
    const double hi = cfg.u_max() + m;
    std::vector<double> us = log_range(lo, hi, cfg.points_per_decade);
    for (double v : f.nodes())
        if (v > lo && v < hi) us.push_back(v);
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    return us;
}

double segment_slope(const std::vector<double>& x, const std::vector<double>& y, bool left) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    const std::size_t i = left ? 0 : n - 2;
    const double s = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    return s > 0 && std::isfinite(s) ? s : 0.0;
}

void push_strict(MonoCurve& c, double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return;
    if (!c.x.empty() && x <= c.x.back()) return;
    c.x.push_back(x);
    c.y.push_back(c.y.empty() ? y : std::max(y, c.y.back()));
}

/// samples of u -> (log A(u), log A^{-1}(s) s^{-gamma/n} at s = A(u)) with running max
struct GSamples {
    std::vector<double> w;
    std::vector<double> lg;
    bool left_flat = false;
    bool right_flat = false;
};

GSamples g_samples(const YoungFn& a, const GammaContext& ctx, const Config& cfg, bool sup) {
    if (!check_acond(a, ctx, cfg)) throw OrliczError("acond-violated", "A(t) t^{-n/gamma} is not bounded below near zero");
    const double s = ctx.s_star();
    const double r = ctx.r_star();
    const double m = margin(cfg);
    const double x_lo = cfg.u_min() - m - 1;
    const double x_hi = cfg.u_max() + m + 1;
    const double du = cfg.du();
    auto g_at = [&](double u) { return -s * a.log_eval_shifted(u, r); };
    auto level = [&](double w, double g) { return sup ? s * w + g : g; };

    std::vector<double> core = core_axis(cfg, a);
    GSamples out;
    std::vector<double> us;
    // leftward extension
    {
        std::vector<double> left;
        double u = core.front();
        double prev = g_at(u);
        bool hit = false;
        while (true) {
            u -= step_at(u, du);
            if (u < -kCap) {
                hit = true;
                break;
            }
            const double w = a.log_eval(u);
            if (w == -kInf) {
                hit = true;
                break;
            }
            const double g = g_at(u);
            left.push_back(u);
            if (g < prev && level(w, g) < x_lo) break;
            prev = g;
        }
        out.left_flat = hit;
        us.assign(left.rbegin(), left.rend());
    }
    us.insert(us.end(), core.begin(), core.end());
    double run = -kInf;
    auto take = [&](double u) {
        const double w = a.log_eval(u);
        if (w == -kInf) return true;
        if (w == kInf) return false;
        run = std::max(run, g_at(u));
        if (!out.w.empty() && w <= out.w.back()) return true;
        out.w.push_back(w);
        out.lg.push_back(run);
        return true;
    };
    bool stopped = false;
    for (double u : us) {
        if (!take(u)) {
            stopped = true;
            break;
        }
    }
    if (!stopped) {
        double u = us.back();
        while (true) {
            if (!out.w.empty() && level(out.w.back(), out.lg.back()) >= x_hi) break;
            u += step_at(u, du);
            if (u > kCap || !take(u)) {
                stopped = true;
                break;
            }
        }
    }
    out.right_flat = stopped || std::isfinite(a.log_finite_sup);
    if (out.w.empty()) throw OrliczError("acond-violated", "no finite values of A");
    return out;
}

MonoCurve curve_from(const GSamples& g, const GammaContext& ctx, bool sup) {
    MonoCurve c;
    const double s = ctx.s_star();
    for (std::size_t i = 0; i < g.w.size(); ++i) push_strict(c, g.w[i], sup ? s * g.w[i] + g.lg[i] : g.lg[i]);
    c.left_slope = g.left_flat ? (sup ? s : 0.0) : segment_slope(c.x, c.y, true);
    c.right_slope = g.right_flat ? (sup ? s : 0.0) : segment_slope(c.x, c.y, false);
    return c;
}

/// log of int_{-inf}^{u} B(s) s^{-q*} ds/s on an extended axis
struct FSamples {
    std::vector<double> u;
    std::vector<double> lf;
};

FSamples f_samples(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    if (!check_bconv(b, ctx, cfg)) throw OrliczError("bconv-violated", "int_0^1 B(s) s^{-q*-1} ds diverges");
    const double q = ctx.q_star();
    const double s = ctx.s_star();
    const double m = margin(cfg);
    const double x_lo = cfg.u_min() - m - 1;
    const double x_hi = cfg.u_max() + m + 1;
    const double du = cfg.du();
    auto h_at = [&](double u) { return b.log_eval_shifted(u, q); };

    std::vector<double> core = core_axis(cfg, b);
    std::vector<double> us;
    {
        std::vector<double> left;
        double u = core.front();
        double prev = h_at(u);
        double top = prev;
        for (double v : core) top = std::max(top, h_at(v));
        while (true) {
            u -= step_at(u, du);
            if (u < -kCap) break;
            const double h = h_at(u);
            left.push_back(u);
            if (h == -kInf) break;
            if (h < prev && h < top - kNegligible && s * (q * u + h) + u < x_lo) break;
            prev = h;
        }
        us.assign(left.rbegin(), left.rend());
    }
    us.insert(us.end(), core.begin(), core.end());

    FSamples out;
    double cum = -kInf;
    double hp = -kInf;
    double up = 0.0;
    auto advance = [&](double u) {
        const double h = h_at(u);
        if (h == kInf) return false;
        if (out.u.empty()) {
            if (h != -kInf) {
                const double next = h_at(u + du);
                const double sigma = (next - h) / du;
                if (!(sigma > 0)) throw OrliczError("bconv-violated", "lower tail of the F integral diverges");
                cum = h - std::log(sigma);
            }
        } else {
            cum = log_add(cum, log_segment(hp, h, u - up));
        }
        hp = h;
        up = u;
        out.u.push_back(u);
        out.lf.push_back(cum == -kInf ? -kInf : q * u + cum);
        return true;
    };
    bool stopped = false;
    for (double u : us) {
        if (!advance(u)) {
            stopped = true;
            break;
        }
    }
    if (!stopped) {
        double u = us.back();
        while (true) {
            const double lf = out.lf.back();
            if (std::isfinite(lf) && s * lf + u >= x_hi) break;
            u += step_at(u, du);
            if (u > kCap || !advance(u)) break;
        }
    }
    return out;
}

}  // namespace

GammaContext::GammaContext(int n_, double gamma_) : n(n_), gamma(gamma_) {
    if (n < 1 || !(gamma > 0) || !(gamma < n))
        throw OrliczError("invalid-context", "need n >= 1 and 0 < gamma < n");
}

double MonoCurve::eval(double at) const {
    const std::size_t n = x.size();
    if (n == 0) return std::nan("");
    if (at <= x.front()) return left_slope > 0 ? y.front() - left_slope * (x.front() - at) : y.front();
    if (at >= x.back()) return right_slope > 0 ? y.back() + right_slope * (at - x.back()) : y.back();
    const auto i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), at) - x.begin()) - 1;
    return y[i] + (y[i + 1] - y[i]) * (at - x[i]) / (x[i + 1] - x[i]);
}

double MonoCurve::inverse(double v, bool strict) const {
    const std::size_t n = x.size();
    if (n == 0) return std::nan("");
    const auto k = static_cast<std::size_t>(
        (strict ? std::lower_bound(y.begin(), y.end(), v) : std::upper_bound(y.begin(), y.end(), v)) - y.begin());
    if (k == 0) return left_slope > 0 ? x.front() - (y.front() - v) / left_slope : -kInf;
    const std::size_t i = k - 1;
    if (i == n - 1) return right_slope > 0 ? x.back() + (v - y.back()) / right_slope : kInf;
    return x[i] + (v - y[i]) / (y[i + 1] - y[i]) * (x[i + 1] - x[i]);
}

GridFn MonoCurve::grid() const {
    GridFn g = GridFn::from_log(x, y);
    g.tail_zero = {TailFit::Kind::Power, left_slope, y.empty() ? 0.0 : y.front() - left_slope * x.front()};
    g.tail_infinity = {TailFit::Kind::Power, right_slope, y.empty() ? 0.0 : y.back() - right_slope * x.back()};
    return g;
}

bool check_acond(const YoungFn& a, const GammaContext& ctx, const Config& cfg) {
    if (std::isfinite(a.log_zero_end)) return false;
    const double r = ctx.r_star();
    if (a.symbolic && a.symbolic->near_zero.constant == AsymPiece::Const::None) {
        Signature sig = signature(a.symbolic->near_zero, End::Zero);
        if (sig.exact) {
            sig.add(1, 1.0, r);
            sig.normalize();
            if (leading_sign(sig) < 0) return false;
            for (double u : cfg.log_grid())
                if (u < 0 && !std::isfinite(a.log_eval_shifted(u, r))) return false;
            return true;
        }
    }
    auto f = [&](double u) { return a.log_eval_shifted(u, r); };
    for (double u : cfg.log_grid())
        if (u < 0 && !std::isfinite(f(u))) return false;
    return classify(fit_end(f, cfg.u_min(), End::Zero)) != Trend::Down;
}

bool check_bconv(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    if (std::isfinite(b.log_zero_end)) return true;
    const double q = ctx.q_star();
    if (b.symbolic && b.symbolic->near_zero.constant == AsymPiece::Const::None) {
        Signature sig = signature(b.symbolic->near_zero, End::Zero);
        if (sig.exact) {
            sig.add(1, 1.0, q);
            sig.normalize();
            return integrable(sig);
        }
    }
    const double lo = cfg.u_min();
    const double e = (b.log_eval(lo + kLn10) - b.log_eval(lo)) / kLn10;
    if (!std::isfinite(e)) return b.log_eval(lo) == -kInf;
    if (std::abs(e - q) > 1e-3) return e > q;
    auto f = [&](double u) { return b.log_eval_shifted(u, q); };
    const EndModel model = fit_end(f, lo, End::Zero);
    return model.c < -1.0;
}

MonoCurve g_curve(const YoungFn& a, const GammaContext& ctx, const Config& cfg) {
    return curve_from(g_samples(a, ctx, cfg, false), ctx, false);
}

GridFn g_transform(const YoungFn& a, const GammaContext& ctx, const Config& cfg) {
    return g_curve(a, ctx, cfg).grid();
}

MonoCurve g_sup_curve(const YoungFn& a, const GammaContext& ctx, const Config& cfg) {
    return curve_from(g_samples(a, ctx, cfg, true), ctx, true);
}

YoungFn integral_young(const MonoCurve& c, const Config& cfg) {
    if (c.x.empty()) throw OrliczError("empty-curve", "curve has no samples");
    const double x0 = c.left_slope > 0 ? -kInf : c.y.front();
    const double x1 = c.right_slope > 0 ? kInf : c.y.back();
    const double m = margin(cfg);
    const double lo = cfg.u_min() - m;
    const double hi = cfg.u_max() + m;
    const double du = cfg.du();

    std::vector<double> xs;
    for (double v : log_range(lo, hi, cfg.points_per_decade))
        if (v > x0 && v < x1) xs.push_back(v);
    if (x1 > lo && x1 <= hi) xs.push_back(x1);
    std::vector<double> left;
    if (std::isfinite(x0) && x0 < hi) {
        double v = xs.empty() ? std::min(x1, hi) : xs.front();
        while (v > x0) {
            v -= step_at(v, du);
            left.push_back(std::max(v, x0));
        }
    } else if (!std::isfinite(x0)) {
        double v = xs.empty() ? std::min(x1, hi) : xs.front();
        const double ref = c.inverse(v, true);
        while (v > -kCap) {
            v -= step_at(v, du);
            left.push_back(v);
            if (c.inverse(v, true) < ref - kNegligible) break;
        }
    }
    xs.insert(xs.begin(), left.rbegin(), left.rend());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    YoungFn out;
    out.log_zero_end = x0;
    out.log_finite_sup = x1;
    if (xs.empty()) {
        out.label = "integral";
        return out;
    }
    std::vector<double> hs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) hs[i] = xs[i] == x0 ? c.inverse(x0) : c.inverse(xs[i], true);
    std::vector<double> cum(xs.size(), -kInf);
    if (xs.front() != x0) {
        const double sigma = xs.size() > 1 ? (hs[1] - hs[0]) / (xs[1] - xs[0]) : c.left_slope;
        cum[0] = sigma > 0 ? hs[0] - std::log(sigma) : kInf;
    }
    for (std::size_t i = 1; i < xs.size(); ++i)
        cum[i] = log_add(cum[i - 1], log_segment(hs[i - 1], hs[i], xs[i] - xs[i - 1]));
    std::vector<double> lt;
    std::vector<double> lv;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (cum[i] == -kInf || xs[i] < lo) continue;
        lt.push_back(xs[i]);
        lv.push_back(cum[i]);
    }
    if (lt.empty()) return out;
    YoungFn y = from_samples(std::move(lt), std::move(lv), x0, x1);
    y.label = "integral";
    return y;
}

static void pin_tails(YoungFn& y) {
    if (!y.exponents) return;
    const double off = y.ratio_table ? 1.0 : 0.0;
    if (std::isfinite(y.exponents->zero)) y.table.pin_tail(true, y.exponents->zero - off);
    if (std::isfinite(y.exponents->infinity)) y.table.pin_tail(false, y.exponents->infinity - off);
}

YoungFn a_gamma(const YoungFn& a, const GammaContext& ctx, const Config& cfg) {
    YoungFn out = integral_young(g_curve(a, ctx, cfg), cfg);
    if (a.exponents) {
        const double s = ctx.s_star();
        const double r = ctx.r_star();
        auto map = [&](double p) { return p < r ? p / (1 - s * p) : kInf; };
        out.exponents = EndExponents{map(a.exponents->zero), map(a.exponents->infinity)};
    }
    pin_tails(out);
    out.label = "A_gamma";
    return out;
}

YoungFn a_sup(const YoungFn& a, const GammaContext& ctx, const Config& cfg) {
    YoungFn out = integral_young(g_sup_curve(a, ctx, cfg), cfg);
    if (a.exponents) {
        const double r = ctx.r_star();
        out.exponents = EndExponents{std::min(a.exponents->zero, r), std::min(a.exponents->infinity, r)};
    }
    pin_tails(out);
    out.label = "A_sup";
    return out;
}

GridFn f_transform(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    const FSamples f = f_samples(b, ctx, cfg);
    std::vector<double> lt;
    std::vector<double> lv;
    for (std::size_t i = 0; i < f.u.size(); ++i) {
        if (!std::isfinite(f.lf[i])) continue;
        lt.push_back(f.u[i]);
        lv.push_back(f.lf[i]);
    }
    return GridFn::from_log(std::move(lt), std::move(lv));
}

MonoCurve e_curve(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    const FSamples f = f_samples(b, ctx, cfg);
    const double s = ctx.s_star();
    MonoCurve c;
    for (std::size_t i = 0; i < f.u.size(); ++i) push_strict(c, f.lf[i], s * f.lf[i] + f.u[i]);
    if (c.x.empty()) {
        const double anchor = std::isfinite(b.log_finite_sup) ? b.log_finite_sup : b.log_zero_end;
        c.x = {0.0};
        c.y = {anchor};
        c.left_slope = c.right_slope = s;
        return c;
    }
    c.left_slope = std::isfinite(b.log_zero_end) ? s : segment_slope(c.x, c.y, true);
    c.right_slope = std::isfinite(b.log_finite_sup) ? s : segment_slope(c.x, c.y, false);
    if (c.left_slope == 0.0) c.left_slope = s;
    if (c.right_slope == 0.0) c.right_slope = s;
    return c;
}

YoungFn b_gamma(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    YoungFn out = integral_young(e_curve(b, ctx, cfg), cfg);
    if (b.exponents) {
        const double s = ctx.s_star();
        const double q = ctx.q_star();
        auto map = [&](double p) {
            if (std::isinf(p)) return ctx.r_star();
            return p >= q - 1e-12 ? p / (1 + s * p) : 1.0;
        };
        out.exponents = EndExponents{map(b.exponents->zero), map(b.exponents->infinity)};
    }
    pin_tails(out);
    out.label = "B_gamma";
    return out;
}

GridFn supout_inverse(const YoungFn& a, const GammaContext& ctx, const Config& cfg) {
    if (!(conservative_upper(boyd_indices(a)) < ctx.r_star()))
        throw OrliczError("index-gate-failed", "upper Boyd index is not below n/gamma");
    const double s = ctx.s_star();
    std::vector<double> us = cfg.log_grid();
    std::vector<double> lv(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) lv[i] = log_inverse(a, us[i]) - s * us[i];
    return GridFn::from_log(std::move(us), std::move(lv));
}

GridFn intout_inverse(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    if (!(conservative_lower(boyd_indices(b)) > ctx.q_star()))
        throw OrliczError("index-gate-failed", "lower Boyd index is not above n/(n-gamma)");
    const double s = ctx.s_star();
    std::vector<double> us = cfg.log_grid();
    std::vector<double> lv(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) lv[i] = s * us[i] + log_inverse(b, us[i]);
    return GridFn::from_log(std::move(us), std::move(lv));
}

YoungFn as_young(const GridFn& g, const std::string& label) {
    YoungFn y;
    y.table = g;
    y.label = label;
    return y;
}

}  // namespace orlicz
