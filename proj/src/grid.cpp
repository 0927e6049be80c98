#include "orlicz/grid.hpp"

#include <algorithm>
#include <cassert>

namespace orlicz {

std::vector<double> Config::log_grid() const {
    return log_range(u_min(), u_max(), points_per_decade);
}

std::vector<double> log_range(double lo, double hi, int per_decade) {
    std::vector<double> out;
    const double step = kLn10 / per_decade;
    const auto n = static_cast<long>(std::llround((hi - lo) / step));
    out.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    return out;
}

double log_add(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    if (a == kInf || b == kInf) return kInf;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

double log_sub(double a, double b) {
    if (b == -kInf) return a;
    if (a == kInf) return kInf;
    if (b >= a) return -kInf;
    return a + std::log1p(-std::exp(b - a));
}

double log_span(double a, double b) { return log_sub(b, a); }

double log_segment(double h0, double h1, double w) {
    if (w <= 0) return -kInf;
    if (h0 == -kInf && h1 == -kInf) return -kInf;
    if (h0 == kInf || h1 == kInf) return kInf;
    if (h0 == -kInf || h1 == -kInf) {
        // vanishing at one end: treat as a steep exponential from the finite end
        return -kInf;
    }
    const double d = h1 - h0;
    if (std::abs(d) < 1e-10) return h0 + std::log(w) + 0.5 * d;
    // integral = w * (e^{h1} - e^{h0}) / d
    const double hi = std::max(h0, h1);
    const double lo = std::min(h0, h1);
    return std::log(w) + log_sub(hi, lo) - std::log(std::abs(d));
}

double TailFit::log_eval(double u) const {
    switch (kind) {
        case Kind::PlateauZero: return -kInf;
        case Kind::PlateauInfinity: return kInf;
        case Kind::Power: break;
    }
    const double v = log_coef + exponent * u;
    if (log_pow == 0.0) return v;
    return v + log_pow * (std::log1p(std::abs(u)) - std::log1p(std::abs(anchor)));
}

double TailFit::log_eval_shifted(double u, double shift) const {
    if (kind != Kind::Power) return log_eval(u);
    double slope = exponent - shift;
    if (std::abs(slope) < 1e-9 * std::max(1.0, std::abs(shift))) slope = 0.0;
    const double v = log_coef + slope * u;
    if (log_pow == 0.0) return v;
    return v + log_pow * (std::log1p(std::abs(u)) - std::log1p(std::abs(anchor)));
}

GridFn GridFn::from_log(std::vector<double> lt, std::vector<double> lv, Interp interp) {
    GridFn g;
    g.log_t = std::move(lt);
    g.log_v = std::move(lv);
    g.interp = interp;
    g.fit_tails();
    return g;
}

void GridFn::fit_tails() {
    const std::size_t n = log_t.size();
    tail_zero = {};
    tail_infinity = {};
    if (n == 0) {
        tail_zero.kind = TailFit::Kind::PlateauZero;
        tail_infinity.kind = TailFit::Kind::PlateauZero;
        return;
    }
    if (interp == Interp::StepRight) {
        tail_zero.exponent = 0.0;
        tail_zero.log_coef = log_v.front();
        if (log_v.front() == -kInf) tail_zero.kind = TailFit::Kind::PlateauZero;
        if (log_v.front() == kInf) tail_zero.kind = TailFit::Kind::PlateauInfinity;
        tail_infinity.kind = TailFit::Kind::PlateauZero;
        return;
    }
    auto fit = [&](std::size_t a, std::size_t b, TailFit& out) {
        const double va = log_v[a];
        if (va == -kInf) { out.kind = TailFit::Kind::PlateauZero; return; }
        if (va == kInf) { out.kind = TailFit::Kind::PlateauInfinity; return; }
        // walk toward b until a finite partner at about one decade is found
        std::size_t j = b;
        while (j != a && !std::isfinite(log_v[j])) j = (j > a) ? j - 1 : j + 1;
        if (j == a || log_t[j] == log_t[a]) { out.exponent = 0.0; out.log_coef = va; return; }
        out.exponent = (log_v[j] - va) / (log_t[j] - log_t[a]);
        out.log_coef = va - out.exponent * log_t[a];
    };
    // power times log-power over a window of up to 8 decades when the table is long enough
    auto refine = [&](std::size_t end, int dir, TailFit& out) {
        if (out.kind != TailFit::Kind::Power) return;
        const double span = log_t[n - 1] - log_t[0];
        const double width = std::min(8 * kLn10, span / 3);
        if (width < 3 * kLn10 || std::abs(log_t[end]) < kLn10) return;
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        double next = log_t[end];
        for (std::size_t i = end;; i = dir > 0 ? i + 1 : i - 1) {
            const double d = std::abs(log_t[i] - log_t[end]);
            if (d > width) break;
            if (d >= std::abs(next - log_t[end])) {
                if (!std::isfinite(log_v[i])) return;
                rows.push_back({1.0, log_t[i], std::log1p(std::abs(log_t[i]))});
                rhs.push_back(log_v[i]);
                next = log_t[end] + dir * (d + kLn10 / 4);
            }
            if ((dir > 0 && i + 1 == n) || (dir < 0 && i == 0)) break;
        }
        if (rows.size() < 8) return;
        const auto c = least_squares(rows, rhs);
        if (!std::isfinite(c[1]) || !std::isfinite(c[2]) || std::abs(c[2]) < 1e-2) return;
        out.exponent = c[1];
        out.log_pow = c[2];
        out.anchor = log_t[end];
        out.log_coef = log_v[end] - c[1] * log_t[end];
    };
    std::size_t k = 0;
    while (k + 1 < n && log_t[k] < log_t[0] + kLn10) ++k;
    fit(0, k, tail_zero);
    refine(0, 1, tail_zero);
    std::size_t m = n - 1;
    while (m > 0 && log_t[m] > log_t[n - 1] - kLn10) --m;
    fit(n - 1, m, tail_infinity);
    refine(n - 1, -1, tail_infinity);
}

void GridFn::pin_tail(bool zero_end, double exponent) {
    const std::size_t n = log_t.size();
    TailFit& out = zero_end ? tail_zero : tail_infinity;
    if (n == 0 || interp != Interp::LogLinear || out.kind != TailFit::Kind::Power || !std::isfinite(exponent)) return;
    const std::size_t end = zero_end ? 0 : n - 1;
    if (!std::isfinite(log_v[end])) return;
    const double width = std::min(8 * kLn10, (log_t[n - 1] - log_t[0]) / 3);
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(log_t[i] - log_t[end]) > width || !std::isfinite(log_v[i])) continue;
        rows.push_back({1.0, std::log1p(std::abs(log_t[i]))});
        rhs.push_back(log_v[i] - exponent * log_t[i]);
    }
    out.exponent = exponent;
    out.anchor = log_t[end];
    out.log_coef = log_v[end] - exponent * log_t[end];
    out.log_pow = 0.0;
    if (rows.size() < 8 || std::abs(log_t[end]) < kLn10) return;
    const auto c = least_squares(rows, rhs);
    if (std::isfinite(c[1]) && std::abs(c[1]) >= 1e-2) out.log_pow = c[1];
}

double GridFn::log_eval_shifted(double u, double shift) const {
    if (interp == Interp::LogLinear && !log_t.empty()) {
        if (u < log_t.front()) return tail_zero.log_eval_shifted(u, shift);
        if (u > log_t.back()) return tail_infinity.log_eval_shifted(u, shift);
    }
    return log_eval(u) - shift * u;
}

double GridFn::log_eval(double u) const {
    const std::size_t n = log_t.size();
    if (n == 0) return -kInf;
    if (interp == Interp::StepRight) {
        auto it = std::upper_bound(log_t.begin(), log_t.end(), u);
        if (it == log_t.end()) return -kInf;
        return log_v[static_cast<std::size_t>(it - log_t.begin())];
    }
    if (u < log_t.front()) return tail_zero.log_eval(u);
    if (u > log_t.back()) return tail_infinity.log_eval(u);
    auto it = std::lower_bound(log_t.begin(), log_t.end(), u);
    std::size_t i = static_cast<std::size_t>(it - log_t.begin());
    if (log_t[i] == u) return log_v[i];
    const std::size_t a = i - 1;
    const double la = log_v[a];
    const double lb = log_v[i];
    if (std::isfinite(la) && std::isfinite(lb)) {
        const double h = log_t[i] - log_t[a];
        const double w = (u - log_t[a]) / h;
        if (!log_d.empty() && std::isfinite(log_d[a]) && std::isfinite(log_d[i])) {
            const double w2 = w * w;
            const double w3 = w2 * w;
            return (2 * w3 - 3 * w2 + 1) * la + (w3 - 2 * w2 + w) * h * log_d[a] +
                   (-2 * w3 + 3 * w2) * lb + (w3 - w2) * h * log_d[i];
        }
        return la + w * (lb - la);
    }
    if (la == -kInf) return -kInf;
    if (la == kInf) return kInf;
    return la;
}

double GridFn::eval(double t) const {
    if (t <= 0) return interp == Interp::StepRight && !log_v.empty() ? std::exp(log_v.front()) : 0.0;
    return std::exp(log_eval(std::log(t)));
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& rows,
                                  const std::vector<double>& rhs) {
    const std::size_t m = rows.empty() ? 0 : rows.front().size();
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) a[i][j] += rows[r][i] * rows[r][j];
            a[i][m] += rows[r][i] * rhs[r];
        }
    }
    // column scaling keeps the normal equations tame
    std::vector<double> scale(m, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
        scale[j] = std::sqrt(std::max(a[j][j], 1e-300));
        for (std::size_t i = 0; i < m; ++i) a[i][j] /= scale[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= m; ++j) a[i][j] /= scale[i];
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < m; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        std::swap(a[c], a[p]);
        if (std::abs(a[c][c]) < 1e-300) continue;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::vector<double> x(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        x[i] = (std::abs(a[i][i]) < 1e-300) ? 0.0 : a[i][m] / a[i][i] / scale[i];
    return x;
}

}  // namespace orlicz
