#include "orlicz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace orlicz {

namespace {

double log_power_log(const TestFunction& f, double x) {
    return -f.p * x + f.beta * std::log1p(std::abs(x));
}

// max of v[lo..hi] for every output index i with window [i-k+1, i] clamped to [0, m-1]
void window_max(const std::vector<double>& v, int m, int n, int k, std::vector<double>& out) {
    std::deque<int> dq;
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int hi = std::min(i, m - 1);
        const int lo = std::max(0, i - k + 1);
        while (next <= hi) {
            while (!dq.empty() && v[dq.back()] <= v[next]) dq.pop_back();
            dq.push_back(next++);
        }
        while (!dq.empty() && dq.front() < lo) dq.pop_front();
        out[i] = dq.empty() ? 0.0 : v[dq.front()];
    }
}

ProbeTrend classify(const std::vector<double>& r, double factor) {
    for (double x : r)
        if (std::isinf(x)) return ProbeTrend::Diverging;
    double lo = kInf;
    double hi = 0.0;
    bool up = true;
    bool down = true;
    for (std::size_t i = 0; i < r.size(); ++i) {
        lo = std::min(lo, r[i]);
        hi = std::max(hi, r[i]);
        if (i > 0) {
            if (r[i] < r[i - 1] * (1 - 1e-3)) up = false;
            if (r[i] > r[i - 1] * (1 + 1e-3)) down = false;
        }
    }
    if (!(lo > 0)) return ProbeTrend::Inconclusive;
    if (hi / lo < factor) return ProbeTrend::Bounded;
    return up || down ? ProbeTrend::Diverging : ProbeTrend::Inconclusive;
}

std::vector<double> sorted_desc(const ValueGrid& g) {
    std::vector<double> v = g.v;
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

}  // namespace

TestFunction TestFunction::indicator(double r) {
    if (!(r > 0) || std::isinf(r)) throw OrliczError("invalid-test-function", "indicator radius must be positive");
    TestFunction f;
    f.kind = Kind::Indicator;
    f.r = r;
    return f;
}

TestFunction TestFunction::power_log(double p, double beta, double a, double b) {
    if (!(p >= 0) || !(a >= 0) || !(b > a))
        throw OrliczError("invalid-test-function", "power-log needs p >= 0 and 0 <= a < b");
    TestFunction f;
    f.kind = Kind::PowerLog;
    f.p = p;
    f.beta = beta;
    f.a = a;
    f.b = b;
    const double lo = a > 0 ? std::log(a) : -60.0;
    const double hi = std::isfinite(b) ? std::log(b) : 60.0;
    double prev = kInf;
    for (int i = 0; i <= 2000; ++i) {
        const double x = lo + (hi - lo) * i / 2000.0;
        const double v = log_power_log(f, x);
        if (v > prev + 1e-12) throw OrliczError("invalid-test-function", "power-log function is not nonincreasing");
        prev = v;
    }
    return f;
}

TestFunction TestFunction::steps(std::vector<double> values, std::vector<double> ends) {
    if (values.empty() || values.size() != ends.size())
        throw OrliczError("invalid-test-function", "steps need matching values and ends");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0) || !(ends[i] > 0) || std::isinf(ends[i]) ||
            (i > 0 && (values[i] > values[i - 1] || ends[i] <= ends[i - 1])))
            throw OrliczError("invalid-test-function", "steps must be nonnegative, nonincreasing, with increasing ends");
    }
    TestFunction f;
    f.kind = Kind::Steps;
    f.values = std::move(values);
    f.ends = std::move(ends);
    return f;
}

GridFn TestFunction::sample(double scale, const Config& cfg) const {
    const double ls = std::log(scale);
    switch (kind) {
        case Kind::Indicator:
            return GridFn::from_log({std::log(r) + ls}, {0.0}, Interp::StepRight);
        case Kind::Steps: {
            std::vector<double> lt;
            std::vector<double> lv;
            for (std::size_t i = 0; i < values.size(); ++i) {
                lt.push_back(std::log(ends[i]) + ls);
                lv.push_back(std::log(values[i]));
            }
            return GridFn::from_log(std::move(lt), std::move(lv), Interp::StepRight);
        }
        case Kind::PowerLog: {
            const double lo = a > 0 ? std::log(a) + ls : std::min(cfg.u_min(), ls - kLn10);
            const double hi = std::isfinite(b) ? std::log(b) + ls : std::max(cfg.u_max(), ls + kLn10);
            std::vector<double> lt = log_range(lo, hi, cfg.points_per_decade);
            if (lt.back() < hi) lt.push_back(hi);
            std::vector<double> lv(lt.size());
            for (std::size_t i = 0; i < lt.size(); ++i) lv[i] = log_power_log(*this, lt[i] - ls);
            GridFn g = GridFn::from_log(std::move(lt), std::move(lv));
            if (a > 0) g.tail_zero.kind = TailFit::Kind::PlateauZero;
            if (std::isfinite(b)) g.tail_infinity.kind = TailFit::Kind::PlateauZero;
            return g;
        }
    }
    return {};
}

std::string TestFunction::name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Indicator: os << "indicator(0," << r << ")"; break;
        case Kind::PowerLog: os << "power-log(" << p << "," << beta << ";" << a << "," << b << ")"; break;
        case Kind::Steps: os << "steps(" << values.size() << ")"; break;
    }
    return os.str();
}

GridFn hardy_dual_apply(const GridFn& g, const GammaContext& ctx, const Config& cfg) {
    const double s = ctx.s_star();
    std::vector<double> axis = cfg.log_grid();
    axis.insert(axis.end(), g.log_t.begin(), g.log_t.end());
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    std::vector<double> lv(axis.size(), -kInf);
    const std::size_t n = g.size();
    if (n == 0) return GridFn::from_log(std::move(axis), std::move(lv));

    std::vector<double> cum(n);
    if (g.interp == Interp::StepRight) {
        double acc = -kInf;
        double prev = -kInf;
        for (std::size_t i = 0; i < n; ++i) {
            acc = log_add(acc, g.log_v[i] + log_span(prev, g.log_t[i]));
            prev = g.log_t[i];
            cum[i] = acc;
        }
        for (std::size_t k = 0; k < axis.size(); ++k) {
            const double u = axis[k];
            const auto i = static_cast<std::size_t>(std::upper_bound(g.log_t.begin(), g.log_t.end(), u) - g.log_t.begin());
            double in;
            if (i == n)
                in = cum[n - 1];
            else if (i == 0)
                in = g.log_v[0] + u;
            else
                in = log_add(cum[i - 1], g.log_v[i] + log_span(g.log_t[i - 1], u));
            lv[k] = (s - 1) * u + in;
        }
        return GridFn::from_log(std::move(axis), std::move(lv));
    }

    auto h = [&](double u) { return g.log_eval(u) + u; };
    const TailFit& tz = g.tail_zero;
    auto below = [&](double u) {
        if (tz.kind == TailFit::Kind::PlateauZero) return -kInf;
        if (tz.kind == TailFit::Kind::PlateauInfinity || tz.exponent + 1 <= 0) return kInf;
        return tz.log_eval(u) + u - std::log(tz.exponent + 1);
    };
    cum[0] = below(g.log_t[0]);
    for (std::size_t i = 1; i < n; ++i) {
        const double ha = h(g.log_t[i - 1]);
        const double hb = h(g.log_t[i]);
        const double seg = (ha == -kInf || hb == -kInf) ? -kInf : log_segment(ha, hb, g.log_t[i] - g.log_t[i - 1]);
        cum[i] = log_add(cum[i - 1], seg);
    }
    const TailFit& ti = g.tail_infinity;
    for (std::size_t k = 0; k < axis.size(); ++k) {
        const double u = axis[k];
        double in;
        if (u <= g.log_t.front()) {
            in = below(u);
        } else if (u >= g.log_t.back()) {
            in = cum[n - 1];
            if (ti.kind == TailFit::Kind::PlateauInfinity)
                in = kInf;
            else if (ti.kind == TailFit::Kind::Power && u > g.log_t.back())
                in = log_add(in, log_segment(h(g.log_t.back()), h(u), u - g.log_t.back()));
        } else {
            const auto i = static_cast<std::size_t>(std::upper_bound(g.log_t.begin(), g.log_t.end(), u) - g.log_t.begin());
            const double ha = h(g.log_t[i - 1]);
            const double hu = h(u);
            in = log_add(cum[i - 1], (ha == -kInf || hu == -kInf) ? -kInf : log_segment(ha, hu, u - g.log_t[i - 1]));
        }
        lv[k] = (s - 1) * u + in;
    }
    return GridFn::from_log(std::move(axis), std::move(lv));
}

const char* trend_name(ProbeTrend t) {
    switch (t) {
        case ProbeTrend::Bounded: return "bounded";
        case ProbeTrend::Diverging: return "diverging";
        case ProbeTrend::Inconclusive: return "inconclusive";
    }
    return "";
}

std::vector<double> default_probe_scales() { return {1e-4, 1e-2, 1.0, 1e2, 1e4}; }

std::vector<TestFunction> default_probe_family() {
    return {TestFunction::indicator(1.0), TestFunction::steps({2.0, 1.0}, {0.5, 1.0}),
            TestFunction::power_log(0.25, 0.0, 0.0, 1.0)};
}

ProbeReport norm_probe(const YoungFn& a, const YoungFn& b, const GammaContext& ctx,
                       const std::vector<TestFunction>& family, const std::vector<double>& scales, const Config& cfg,
                       double divergence_factor) {
    if (family.empty() || scales.empty()) throw OrliczError("invalid-probe", "probe needs test functions and scales");
    std::vector<double> sc = scales;
    std::sort(sc.begin(), sc.end());
    ProbeReport rep;
    bool any_div = false;
    bool any_inc = false;
    for (const TestFunction& f : family) {
        std::vector<double> rs;
        for (double scale : sc) {
            ProbeEntry e;
            e.function = f.name();
            e.scale = scale;
            const GridFn g = f.sample(scale, cfg);
            const NormResult ng = luxemburg_norm(a, g, cfg);
            const NormResult nh = luxemburg_norm(b, hardy_dual_apply(g, ctx, cfg), cfg);
            for (const auto& fl : ng.flags) e.flags.push_back("domain-" + fl);
            for (const auto& fl : nh.flags) e.flags.push_back("target-" + fl);
            if (!(ng.value > 0) || std::isinf(ng.value)) {
                e.ratio = std::nan("");
                e.flags.push_back("test-function-outside-domain");
            } else if (std::isinf(nh.value)) {
                e.ratio = kInf;
                e.flags.push_back("norm-divergent");
            } else {
                e.ratio = nh.value / ng.value;
            }
            rs.push_back(e.ratio);
            if (!std::isnan(e.ratio)) rep.max_ratio = std::max(rep.max_ratio, e.ratio);
            rep.ratios.push_back(std::move(e));
        }
        std::vector<double> valid;
        for (double x : rs)
            if (!std::isnan(x)) valid.push_back(x);
        const ProbeTrend t = valid.size() < 2 ? ProbeTrend::Inconclusive : classify(valid, divergence_factor);
        rep.member_trends.push_back(t);
        any_div = any_div || t == ProbeTrend::Diverging;
        any_inc = any_inc || t == ProbeTrend::Inconclusive;
    }
    rep.trend = any_div ? ProbeTrend::Diverging : any_inc ? ProbeTrend::Inconclusive : ProbeTrend::Bounded;
    return rep;
}

ValueGrid::ValueGrid(int n_, double fill) : n(n_), v(static_cast<std::size_t>(n_) * n_, fill) {
    if (n_ < 1) throw OrliczError("invalid-grid", "grid side must be positive");
}

ValueGrid maximal_2d(const ValueGrid& f, double gamma) {
    const int n = f.n;
    if (n > kMaxGrid) throw OrliczError("grid-too-large", "brute-force maximal operator supports N <= 256");
    if (n < 1 || f.v.size() != static_cast<std::size_t>(n) * n) throw OrliczError("invalid-grid", "malformed grid");
    if (!(gamma > 0) || !(gamma < 2)) throw OrliczError("invalid-context", "need 0 < gamma < 2");
    const double h = 1.0 / n;
    std::vector<double> pre(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    auto P = [&](int i, int j) -> double& { return pre[static_cast<std::size_t>(i) * (n + 1) + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) P(i + 1, j + 1) = f.at(i, j) + P(i, j + 1) + P(i + 1, j) - P(i, j);
    ValueGrid out(n, 0.0);
    std::vector<double> val;
    std::vector<double> rowmax(static_cast<std::size_t>(n) * n);
    std::vector<double> col;
    std::vector<double> tmp(n);
    for (int k = 1; k <= n; ++k) {
        const int m = n - k + 1;
        const double w = std::pow(k * h, gamma - 2) * h * h;
        val.assign(static_cast<std::size_t>(m) * m, 0.0);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                val[static_cast<std::size_t>(a) * m + b] = w * (P(a + k, b + k) - P(a, b + k) - P(a + k, b) + P(a, b));
        // max over b for each a, then over a
        std::vector<double> line(m);
        std::vector<double> partial(static_cast<std::size_t>(m) * n);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) line[b] = val[static_cast<std::size_t>(a) * m + b];
            window_max(line, m, n, k, tmp);
            for (int j = 0; j < n; ++j) partial[static_cast<std::size_t>(a) * n + j] = tmp[j];
        }
        for (int j = 0; j < n; ++j) {
            for (int a = 0; a < m; ++a) line[a] = partial[static_cast<std::size_t>(a) * n + j];
            window_max(line, m, n, k, tmp);
            for (int i = 0; i < n; ++i) out.at(i, j) = std::max(out.at(i, j), tmp[i]);
        }
    }
    return out;
}

bool modular_probe(const YoungFn& a, const YoungFn& b, const GammaContext& ctx, const ValueGrid& f, double c2) {
    if (ctx.n != 2) throw OrliczError("dimension-mismatch", "the brute-force operator works on a 2-D grid");
    if (!(c2 > 0)) throw OrliczError("invalid-constant", "C2 must be positive");
    const double lh = std::log(f.cell_area());
    double lia = -kInf;
    for (double x : f.v)
        if (x > 0) lia = log_add(lia, a.log_eval(std::log(x)) + lh);
    if (lia == -kInf) return true;
    if (lia == kInf) return true;
    const ValueGrid m = maximal_2d(f, ctx.gamma);
    const double ld = std::log(c2) + ctx.s_star() * lia;
    double lhs = -kInf;
    for (double x : m.v)
        if (x > 0) lhs = log_add(lhs, b.log_eval(std::log(x) - ld) + lh);
    return lhs <= lia + 1e-12 * std::max(1.0, std::abs(lia));
}

RearrangementReport rearrangement_bound_check(const ValueGrid& f, const GammaContext& ctx) {
    if (ctx.n != 2) throw OrliczError("dimension-mismatch", "the brute-force operator works on a 2-D grid");
    RearrangementReport rep;
    const std::vector<double> fs = sorted_desc(f);
    const ValueGrid m = maximal_2d(f, ctx.gamma);
    const std::vector<double> ms = sorted_desc(m);
    const double h2 = f.cell_area();
    const double alpha = ctx.s_star();
    const std::size_t cells = fs.size();
    std::vector<double> pref(cells + 1, 0.0);
    for (std::size_t i = 0; i < cells; ++i) pref[i + 1] = pref[i] + fs[i] * h2;
    auto integral = [&](double s) {
        const double k = s / h2;
        if (k >= static_cast<double>(cells)) return pref[cells];
        const auto i = static_cast<std::size_t>(k);
        return pref[i] + fs[i] * (s - static_cast<double>(i) * h2);
    };
    auto g = [&](double s) { return std::pow(s, alpha - 1) * integral(s); };
    std::vector<double> suffix(cells + 1, 0.0);
    for (std::size_t i = cells; i-- > 0;) suffix[i] = std::max(suffix[i + 1], g(static_cast<double>(i + 1) * h2));
    auto rhs = [&](double t) {
        const auto i = static_cast<std::size_t>(std::ceil(t / h2 - 1e-9));
        const double tail = i >= 1 && i <= cells ? suffix[i - 1] : 0.0;
        return std::max(g(t), tail);
    };
    const std::size_t stride = std::max<std::size_t>(1, cells / 200);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (!(ms[i] > 0)) break;
        const double t = static_cast<double>(i + 1) * h2;
        const double r = rhs(t);
        const double ratio = r > 0 ? ms[i] / r : kInf;
        if (ratio > rep.c1) {
            rep.c1 = ratio;
            rep.worst_t = t;
        }
        if (i % stride == 0) rep.samples.emplace_back(t, ratio);
    }
    return rep;
}

void write_grid_csv(std::ostream& os, const ValueGrid& g, double gamma) {
    os << "N,gamma\n" << g.n << ',';
    os.precision(17);
    os << gamma << '\n';
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) os << (j ? "," : "") << g.at(i, j);
        os << '\n';
    }
}

std::pair<ValueGrid, double> read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("N,gamma", 0) != 0)
        throw OrliczError("csv-parse", "expected header N,gamma");
    int n = 0;
    double gamma = 0;
    char comma = 0;
    if (!std::getline(is, line)) throw OrliczError("csv-parse", "missing N,gamma values");
    std::istringstream hs(line);
    if (!(hs >> n >> comma >> gamma) || comma != ',' || n < 1 || n > kMaxGrid)
        throw OrliczError("csv-parse", "bad N,gamma values");
    ValueGrid g(n);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(is, line)) throw OrliczError("csv-parse", "missing grid row " + std::to_string(i));
        std::istringstream rs(line);
        for (int j = 0; j < n; ++j) {
            std::string cell;
            if (!std::getline(rs, cell, ',')) throw OrliczError("csv-parse", "short grid row " + std::to_string(i));
            try {
                std::size_t used = 0;
                g.at(i, j) = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw OrliczError("csv-parse", "bad value in row " + std::to_string(i));
            }
            if (!(g.at(i, j) >= 0)) throw OrliczError("csv-parse", "grid values must be nonnegative");
        }
    }
    return {std::move(g), gamma};
}

std::string probe_report_json(const ProbeReport& r) {
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
    nlohmann::json j;
    j["trend"] = trend_name(r.trend);
    j["max_ratio"] = num(r.max_ratio);
    j["ratios"] = nlohmann::json::array();
    for (const auto& e : r.ratios)
        j["ratios"].push_back({{"function", e.function}, {"scale", e.scale}, {"ratio", num(e.ratio)}, {"flags", e.flags}});
    j["member_trends"] = nlohmann::json::array();
    for (ProbeTrend t : r.member_trends) j["member_trends"].push_back(trend_name(t));
    return j.dump(2);
}

}  // namespace orlicz
