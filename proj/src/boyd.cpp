#include "orlicz/boyd.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

std::vector<double> s_axis() {
    std::vector<double> ws = log_range(-100.0, 100.0, 24);
    for (double w = 100.0; w < 1e4;) {
        w *= 1.02;
        ws.push_back(w);
        ws.push_back(-w);
    }
    std::sort(ws.begin(), ws.end());
    return ws;
}

double index_from(double tau, double lh) {
    if (lh == 0.0) return kInf;
    const double e = tau / lh;
    return e < 0 ? kInf : e;
}

// log h(tau) = tau / e_inf + c log|tau| + d over the ladder
double extrapolate(const std::vector<double>& taus, const std::vector<double>& es) {
    for (double e : es)
        if (!std::isfinite(e)) return kInf;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double x = std::abs(taus[i]);
        rows.push_back({x, std::log(x), 1.0, 1.0 / x});
        rhs.push_back(x / es[i]);
    }
    const auto c = least_squares(rows, rhs);
    if (!(c[0] > 0)) return es.back();
    return 1.0 / c[0];
}

}  // namespace

bool BoydEstimate::indeterminate() const {
    return std::find(flags.begin(), flags.end(), "indeterminate") != flags.end();
}

double log_dilation(const YoungFn& a, double tau) {
    if (tau == 0.0) return 0.0;
    static const std::vector<double> ws = s_axis();
    auto ratio = [&](double w) {
        const double lo = log_inverse(a, w);
        const double hi = log_inverse(a, w + tau);
        if (!std::isfinite(lo) && !std::isfinite(hi)) return -kInf;
        const double d = hi - lo;
        return std::isnan(d) ? -kInf : d;
    };
    std::vector<double> rs(ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i) rs[i] = ratio(ws[i]);
    std::vector<std::size_t> order(ws.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t keep = std::min<std::size_t>(3, order.size());
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](std::size_t x, std::size_t y) { return rs[x] > rs[y]; });
    double best = rs[order[0]];
    if (a.exponents) {
        for (double p : {a.exponents->zero, a.exponents->infinity})
            if (p >= 1) best = std::max(best, tau / p);
    }
    for (std::size_t k = 0; k < keep; ++k) {
        const std::size_t i = order[k];
        double lo = ws[i > 0 ? i - 1 : i];
        double hi = ws[i + 1 < ws.size() ? i + 1 : i];
        for (int level = 0; level < 3; ++level) {
            const int m = 32;
            double arg = lo;
            double top = -kInf;
            for (int j = 0; j <= m; ++j) {
                const double w = lo + (hi - lo) * j / m;
                const double r = ratio(w);
                if (r > top) {
                    top = r;
                    arg = w;
                }
            }
            best = std::max(best, top);
            const double h = (hi - lo) / m;
            lo = arg - h;
            hi = arg + h;
        }
    }
    return best;
}

double dilation(const YoungFn& a, double t) {
    if (t <= 0) return 0.0;
    return std::exp(log_dilation(a, std::log(t)));
}

BoydEstimate boyd_indices(const YoungFn& a, bool force_numeric) {
    BoydEstimate b;
    if (!force_numeric && a.symbolic && a.exponents) {
        const double p0 = a.exponents->zero;
        const double pi = a.exponents->infinity;
        if (std::isfinite(p0) || std::isfinite(pi) || (std::isinf(p0) && std::isinf(pi))) {
            b.i_lower = std::min(p0, pi);
            b.I_upper = std::max(p0, pi);
            b.method = BoydEstimate::Method::SymbolicExact;
            return b;
        }
    }
    std::vector<double> up;
    std::vector<double> down;
    for (int k = 4; k <= 8; ++k) {
        const double tau = k * kLn10;
        up.push_back(tau);
        down.push_back(-tau);
        b.ladder_lower.push_back(index_from(tau, log_dilation(a, tau)));
        b.ladder_upper.push_back(index_from(-tau, log_dilation(a, -tau)));
    }
    auto spread = [](const std::vector<double>& es) {
        double lo = kInf;
        double hi = -kInf;
        for (double e : es) {
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        if (std::isinf(lo)) return 0.0;
        if (std::isinf(hi)) return kInf;
        return hi - lo;
    };
    b.i_lower = extrapolate(up, b.ladder_lower);
    b.I_upper = extrapolate(down, b.ladder_upper);
    b.spread_lower = spread(b.ladder_lower);
    b.spread_upper = spread(b.ladder_upper);
    b.ci_halfwidth = std::max(b.spread_lower, b.spread_upper);
    auto rel = [](double s, double v) { return std::isinf(v) ? (s == 0 ? 0.0 : kInf) : s / v; };
    auto jump = [](double est, double last) {
        if (std::isinf(est) || std::isinf(last)) return std::isinf(est) != std::isinf(last);
        return std::abs(est - last) > 0.5 * last;
    };
    if (rel(b.spread_lower, b.i_lower) > 0.1 || rel(b.spread_upper, b.I_upper) > 0.1 ||
        jump(b.i_lower, b.ladder_lower.back()) || jump(b.I_upper, b.ladder_upper.back()))
        b.flags.push_back("indeterminate");
    b.i_lower = std::max(1.0, b.i_lower);
    b.I_upper = std::max(b.i_lower, b.I_upper);
    return b;
}

double conservative_lower(const BoydEstimate& b) {
    if (b.method == BoydEstimate::Method::SymbolicExact) return b.i_lower;
    return b.i_lower - b.spread_lower;
}

double conservative_upper(const BoydEstimate& b) {
    if (b.method == BoydEstimate::Method::SymbolicExact) return b.I_upper;
    return b.I_upper + b.spread_upper;
}

}  // namespace orlicz
