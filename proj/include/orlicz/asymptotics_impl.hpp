#pragma once

#include <algorithm>
#include <cmath>

namespace orlicz {

template <class F>
EndModel fit_end(const F& f, double u_end, End end, double decades, int per_decade) {
    EndModel m;
    const int n = static_cast<int>(std::lround(decades * per_decade));
    const double sgn = end == End::Infinity ? 1.0 : -1.0;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    double max_abs = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double u = u_end - sgn * kLn10 * static_cast<double>(n - k) / per_decade;
        const double v = f(u);
        if (!std::isfinite(v)) {
            if (k == n) {
                m.infinite_up = v > 0;
                m.infinite_down = v < 0;
            }
            continue;
        }
        const double x = std::abs(u);
        rows.push_back({1.0, x, std::log1p(x), 1.0 / (1.0 + x), std::log1p(x) / (1.0 + x)});
        rhs.push_back(v);
        max_abs = std::max(max_abs, std::abs(v));
    }
    if (m.infinite_up || m.infinite_down || rows.size() < 5) return m;
    const auto coef = least_squares(rows, rhs);
    m.level = rhs.back();
    m.scale = max_abs;
    m.b = coef[1];
    m.c = coef[2];
    return m;
}

}  // namespace orlicz
