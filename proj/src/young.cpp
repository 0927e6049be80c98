#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orlicz {

namespace {

double chord_log(double u0, double lv0, double u1, double lv1, double u) {
    const double span = log_span(u0, u1);
    const double w0 = log_span(u, u1) - span;
    const double w1 = log_span(u0, u) - span;
    return log_add(w0 + lv0, w1 + lv1);
}

bool log_le(double x, double y, double tol = 1e-9) {
    if (x == -kInf || y == kInf) return true;
    if (x == kInf || y == -kInf) return false;
    return x <= y + tol * std::max(1.0, std::abs(x));
}

std::vector<double> merged_nodes(const Config& cfg, const YoungFn& a, const YoungFn& b) {
    std::vector<double> us = cfg.log_grid();
    const double lo = std::max(a.trusted_lo(), b.trusted_lo());
    const double hi = std::min(a.trusted_hi(), b.trusted_hi());
    for (const YoungFn* f : {&a, &b})
        for (double u : f->nodes())
            if (u >= lo && u <= hi) us.push_back(u);
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    return us;
}

}  // namespace

double YoungFn::log_eval(double u) const {
    if (std::isnan(u)) return u;
    if (u > log_finite_sup) return kInf;
    if (u <= log_zero_end) return -kInf;
    if (!chords.empty()) {
        auto it = std::upper_bound(chords.begin(), chords.end(), u,
                                   [](double x, const Chord& c) { return x < c.u0; });
        if (it != chords.begin()) {
            const Chord& c = *std::prev(it);
            if (u <= c.u1) {
                if (u == c.u0) return c.lv0;
                if (u == c.u1) return c.lv1;
                return chord_log(c.u0, c.lv0, c.u1, c.lv1, u);
            }
        }
    }
    if (symbolic) return symbolic->log_eval(u);
    return ratio_table ? u + table.log_eval(u) : table.log_eval(u);
}

double YoungFn::log_eval_shifted(double u, double shift) const {
    if (u > log_finite_sup) return kInf;
    if (u <= log_zero_end) return -kInf;
    if (!chords.empty()) {
        auto it = std::upper_bound(chords.begin(), chords.end(), u,
                                   [](double x, const Chord& c) { return x < c.u0; });
        if (it != chords.begin() && u <= std::prev(it)->u1) return log_eval(u) - shift * u;
    }
    if (symbolic) return symbolic->log_eval(u, shift);
    return ratio_table ? table.log_eval_shifted(u, shift - 1.0) : table.log_eval_shifted(u, shift);
}

double YoungFn::eval(double t) const {
    if (t <= 0) return 0.0;
    return std::exp(log_eval(std::log(t)));
}

std::vector<double> YoungFn::nodes() const {
    std::vector<double> out = table.log_t;
    for (const auto& c : chords) {
        out.push_back(c.u0);
        out.push_back(c.u1);
    }
    out.insert(out.end(), extra_nodes.begin(), extra_nodes.end());
    if (std::isfinite(log_zero_end)) out.push_back(log_zero_end);
    if (std::isfinite(log_finite_sup)) out.push_back(log_finite_sup);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

EvalResult eval_checked(const YoungFn& a, double t) {
    if (t <= 0) return {0.0, false};
    const double lv = a.log_eval(std::log(t));
    const double v = std::exp(lv);
    return {v, std::isinf(v) && std::isfinite(lv)};
}

double eval(const YoungFn& a, double t) { return a.eval(t); }

namespace {

struct Repair {
    std::vector<double> log_v;
    std::vector<std::pair<std::size_t, std::size_t>> changed;
};

// running max, then greatest convex minorant in (t, A) coordinates
Repair convex_repair(const std::vector<double>& log_t, const std::vector<double>& orig) {
    Repair r;
    r.log_v = orig;
    auto& lv = r.log_v;
    const std::size_t n = log_t.size();
    for (std::size_t i = 1; i < n; ++i) lv[i] = std::max(lv[i], lv[i - 1]);
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < n; ++i) {
        if (lv[i] == kInf) break;
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull.back();
            const double c = chord_log(log_t[a], lv[a], log_t[i], lv[i], log_t[b]);
            if (lv[b] > c + 1e-12 * std::max(1.0, std::abs(c)))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    auto differs = [&](std::size_t j) {
        const double o = orig[j];
        const double v = lv[j];
        if (o == v) return false;
        return !(std::isfinite(o) && std::isfinite(v) && std::abs(o - v) <= 1e-12 * std::max(1.0, std::abs(o)));
    };
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const std::size_t a = hull[k];
        const std::size_t b = hull[k + 1];
        for (std::size_t j = a + 1; j < b; ++j)
            lv[j] = chord_log(log_t[a], lv[a], log_t[b], lv[b], log_t[j]);
        bool any = false;
        for (std::size_t j = a; j <= b && !any; ++j) any = differs(j);
        if (any) r.changed.emplace_back(a, b);
    }
    return r;
}

void clamp_special(std::vector<double>& log_v, const std::vector<double>& log_t, double lzpe, double lfs) {
    for (std::size_t i = 0; i < log_t.size(); ++i) {
        if (log_t[i] <= lzpe) log_v[i] = -kInf;
        if (log_t[i] > lfs) log_v[i] = kInf;
        if (std::isnan(log_v[i])) log_v[i] = -kInf;
    }
}

}  // namespace

YoungFn from_samples(std::vector<double> log_t, std::vector<double> log_v, double log_zero_end,
                     double log_finite_sup) {
    YoungFn y;
    y.log_zero_end = log_zero_end;
    y.log_finite_sup = log_finite_sup;
    clamp_special(log_v, log_t, log_zero_end, log_finite_sup);
    Repair r = convex_repair(log_t, log_v);
    y.table = GridFn::from_log(std::move(log_t), std::move(r.log_v));
    return y;
}

YoungFn from_family(const AsymptoticFamily& fam, const Config& cfg) {
    YoungFn y;
    y.log_zero_end = fam.near_zero.vanishes_below_one() ? 0.0 : -kInf;
    y.log_finite_sup = fam.near_infinity.infinite_above_one() ? 0.0 : kInf;
    std::vector<double> us = cfg.log_grid();
    std::vector<double> lv(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) lv[i] = fam.log_eval(us[i]);
    clamp_special(lv, us, y.log_zero_end, y.log_finite_sup);
    Repair r = convex_repair(us, lv);
    for (const auto& [a, b] : r.changed) y.chords.push_back({us[a], us[b], r.log_v[a], r.log_v[b]});
    y.table = GridFn::from_log(std::move(us), std::move(r.log_v));
    y.symbolic = fam;
    y.exponents = EndExponents{end_exponent(fam.near_zero, End::Zero),
                               end_exponent(fam.near_infinity, End::Infinity)};
    return y;
}

namespace families {

AsymPiece power_piece(double p, double log_pow, double coef) {
    AsymPiece a;
    a.power = p;
    a.log_pow = log_pow;
    a.log_coef = std::log(coef);
    return a;
}

YoungFn power(double p, double coef, const Config& cfg) {
    if (std::isinf(p)) return linf(cfg);
    YoungFn y = from_family({power_piece(p, 0, coef), power_piece(p, 0, coef)}, cfg);
    y.label = "Lp";
    return y;
}

YoungFn zygmund(double p0, double a0, double pinf, double ainf, const Config& cfg) {
    if (p0 < 1 || pinf < 1 || (p0 == 1 && a0 > 0) || (pinf == 1 && ainf < 0))
        throw OrliczError("invalid-family", "Zygmund parameters do not give a Young function");
    YoungFn y = from_family({power_piece(p0, a0), power_piece(pinf, ainf)}, cfg);
    y.label = "Zygmund";
    return y;
}

YoungFn exp_type(double b0, double binf, const Config& cfg) {
    if (!(b0 < 0) || !(binf > 0))
        throw OrliczError("invalid-family", "exp-type needs beta0 < 0 < beta_inf");
    AsymPiece z;
    z.exps.push_back({-1.0, b0, false});
    AsymPiece i;
    i.exps.push_back({1.0, binf, false});
    YoungFn y = from_family({z, i}, cfg);
    y.label = "ExpType";
    return y;
}

YoungFn linf(const Config& cfg) {
    AsymPiece z;
    z.constant = AsymPiece::Const::Zero;
    AsymPiece i;
    i.constant = AsymPiece::Const::Infinity;
    YoungFn y = from_family({z, i}, cfg);
    y.label = "Linf";
    return y;
}

YoungFn l1(const Config& cfg) {
    YoungFn y = from_family({power_piece(1.0), power_piece(1.0)}, cfg);
    y.label = "L1";
    return y;
}

YoungFn pow_modifier(double p0, double c0, double pinf, double cinf, const Config& cfg) {
    AsymPiece z = power_piece(p0);
    if (c0 != 0) z.exps.push_back({-c0, 0.5, true});
    AsymPiece i = power_piece(pinf);
    if (cinf != 0) i.exps.push_back({cinf, 0.5, true});
    YoungFn y = from_family({z, i}, cfg);
    y.label = "PowModifier";
    return y;
}

}  // namespace families

double log_inverse(const YoungFn& a, double ls) {
    if (std::isnan(ls)) return ls;
    if (ls == -kInf) return a.log_zero_end;
    if (std::isfinite(a.log_finite_sup) && a.log_eval(a.log_finite_sup) <= ls) return a.log_finite_sup;
    if (ls == kInf) return a.log_finite_sup;
    auto ok = [&](double u) { return a.log_eval(u) <= ls; };
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
    if (ok(0.0)) {
        hi = step;
        while (ok(hi)) {
            lo = hi;
            step *= 2;
            hi = lo + step;
            if (hi > 1e300) return kInf;
        }
    } else {
        lo = -step;
        while (!ok(lo)) {
            hi = lo;
            step *= 2;
            lo = hi - step;
            if (lo < -1e300) return -kInf;
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ok(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double inverse(const YoungFn& a, double s) {
    if (s < 0) return 0.0;
    return std::exp(log_inverse(a, s == 0 ? -kInf : std::log(s)));
}

double log_slope_limit(const YoungFn& a, End end) {
    const double side = end == End::Infinity ? 1.0 : -1.0;
    if (end == End::Zero && a.log_zero_end > -kInf) return -kInf;
    if (end == End::Infinity && a.log_finite_sup < kInf) return kInf;
    if (a.pure_symbolic()) {
        const AsymPiece& piece = end == End::Zero ? a.symbolic->near_zero : a.symbolic->near_infinity;
        Signature s = signature(piece, end);
        if (s.exact) {
            s.add(1, 1.0, -side);
            s.normalize();
            const int sign = leading_sign(s);
            if (sign > 0) return kInf;
            if (sign < 0) return -kInf;
            return piece.log_coef;
        }
    }
    const double u1 = side * 1e4;
    const double u2 = side * 2e4;
    const double r1 = a.log_eval(u1) - u1;
    const double r2 = a.log_eval(u2) - u2;
    if (std::isinf(r2)) return r2;
    if (std::abs(r1 - r2) < 1e-6 * std::max(1.0, std::abs(r2))) return r2;
    return r2 > r1 ? kInf : -kInf;
}

namespace {

struct ConjPoint {
    double rho = -kInf;  // log(conj(t) / t)
    double slope = std::nan("");  // d rho / d log t
    double noise = 0.0;
};

// sup_s (s t - A(s)) at log t = v, as log(conj(t)/t)
ConjPoint conj_point(const YoungFn& a, double v, double lzpe, double lfs) {
    if (v <= lzpe) return {-kInf};
    if (v > lfs) return {kInf};
    // log((s t - A(s)) / t) = u + log(1 - A(s)/(s t))
    auto psi = [&](double u) {
        const double d = a.log_ratio(u) - v;
        if (d >= 0) return -kInf;
        return u + std::log(-std::expm1(d));
    };
    const double f0 = psi(0.0);
    const double fr = psi(1.0);
    int dir = 0;
    double fl = -kInf;
    if (fr > f0) {
        dir = 1;
    } else {
        fl = psi(-1.0);
        if (fl > f0 || f0 == -kInf) dir = -1;
    }
    double lo = -1.0;
    double hi = 1.0;
    if (dir != 0) {
        double prev = 0.0;
        double cur = dir;
        double fcur = dir > 0 ? fr : fl;
        double step = 1.0;
        for (;;) {
            step *= 2;
            const double next = cur + dir * step;
            if (std::abs(next) > 1e300) return {dir > 0 ? kInf : -kInf};
            const double fn = psi(next);
            if (fn > fcur || (dir < 0 && fcur == -kInf)) {
                prev = cur;
                cur = next;
                fcur = fn;
            } else {
                lo = std::min(prev, next);
                hi = std::max(prev, next);
                break;
            }
        }
    }
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double m1 = hi - g * (hi - lo);
    double m2 = lo + g * (hi - lo);
    double f1 = psi(m1);
    double f2 = psi(m2);
    for (int it = 0; it < 400 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        if (f1 < f2) {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + g * (hi - lo);
            f2 = psi(m2);
        } else {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - g * (hi - lo);
            f1 = psi(m1);
        }
    }
    const double best = std::max(f1, f2);
    if (best == -kInf) return {-kInf};
    const double us = f1 >= f2 ? m1 : m2;
    const double ra = a.log_ratio(us);
    const double d = ra - v;
    double q = std::exp(d) / -std::expm1(d);
    const double hu = 1e-6 * std::max(1.0, std::abs(us));
    const double dra = (a.log_ratio(us + hu) - a.log_ratio(us - hu)) / (2 * hu);
    if (std::isfinite(dra) && dra > 1.0) q = 1.0 / dra;
    constexpr double eps = 2.3e-16;
    const double cancel = q > 0 ? (std::abs(ra) + std::abs(v)) * q : 0.0;
    return {best, q, eps * (cancel + std::abs(us) + std::abs(best))};
}

// the contact point is poorly conditioned in flat regions, so the slope is checked
// against a central difference of the envelope
ConjPoint conj_point_slope(const YoungFn& a, double v, double lzpe, double lfs) {
    ConjPoint p = conj_point(a, v, lzpe, lfs);
    if (!std::isfinite(p.rho)) return p;
    const double d = 1e-5 * std::max(1.0, std::abs(v));
    if (v - d <= lzpe || v + d > lfs) return p;
    const double lo = conj_point(a, v - d, lzpe, lfs).rho;
    const double hi = conj_point(a, v + d, lzpe, lfs).rho;
    if (!std::isfinite(lo) || !std::isfinite(hi)) return p;
    const double numeric = (hi - lo) / (2 * d);
    if (!(std::abs(p.slope - numeric) <= 1e-6 * std::max(1.0, std::abs(numeric)))) {
        p.slope = numeric;
        p.noise *= 1.0 + 1.0 / d;
    }
    return p;
}

struct ConjSample {
    double v;
    ConjPoint p;
};

void refine(const YoungFn& a, double lzpe, double lfs, const ConjSample& x, const ConjSample& y, int depth,
            std::vector<ConjSample>& out) {
    if (depth >= 24) return;
    const double h = y.v - x.v;
    if (h <= 1e-12 * std::max(1.0, std::abs(x.v))) return;
    const bool fx = std::isfinite(x.p.rho);
    const bool fy = std::isfinite(y.p.rho);
    if (!fx && !fy) return;
    if (x.p.rho == kInf || y.p.rho == kInf) return;
    const double vm = x.v + 0.5 * h;
    const ConjSample m{vm, conj_point_slope(a, vm, lzpe, lfs)};
    if (fx && fy) {
        if (!std::isfinite(x.p.slope) || !std::isfinite(y.p.slope)) return;
        const double est = 0.5 * (x.p.rho + y.p.rho) + h / 8 * (x.p.slope - y.p.slope);
        const double noise = std::max({x.p.noise, y.p.noise, m.p.noise}) * (1.0 + h);
        const double tol = 1e-10 * std::max(1.0, std::abs(m.p.rho)) + noise;
        if (std::abs(est - m.p.rho) <= tol || depth >= 8) return;
    }
    refine(a, lzpe, lfs, x, m, depth + 1, out);
    out.push_back(m);
    refine(a, lzpe, lfs, m, y, depth + 1, out);
}

double conj_exponent(double p) {
    if (std::isnan(p)) return p;
    if (std::isinf(p)) return 1.0;
    if (p <= 1.0) return kInf;
    return p / (p - 1.0);
}

}  // namespace

YoungFn conjugate(const YoungFn& a, const Config& cfg) {
    const double lzpe = log_slope_limit(a, End::Zero);
    const double lfs = log_slope_limit(a, End::Infinity);

    const double margin = std::log(cfg.c_max) + 2 * kLn10;
    const double u_lo = std::max(cfg.u_min() - margin, a.trusted_lo());
    const double u_hi = std::min(cfg.u_max() + margin, a.trusted_hi());
    double v_lo = a.log_eval(u_lo) - u_lo - 1.0;
    double v_hi = a.log_eval(u_hi) - u_hi + 3.0;
    if (!std::isfinite(v_lo)) v_lo = cfg.u_min();
    if (!std::isfinite(v_hi)) v_hi = cfg.u_max();
    v_lo = std::max(v_lo, -1e250);
    v_hi = std::min(v_hi, 1e250);

    std::vector<double> vs = cfg.log_grid();
    std::vector<double> below;
    v_lo = std::max(v_lo, -1e13);
    v_hi = std::min(v_hi, 1e13);
    for (double v = vs.front(); v > v_lo && below.size() < 20000;) {
        v -= std::max(cfg.du(), 0.02 * std::abs(v));
        below.push_back(v);
    }
    std::reverse(below.begin(), below.end());
    vs.insert(vs.begin(), below.begin(), below.end());
    for (double v = vs.back(); v < v_hi && vs.size() < 60000;) {
        v += std::max(cfg.du(), 0.02 * std::abs(v));
        vs.push_back(v);
    }
    if (std::isfinite(lzpe) && lzpe > vs.front() && lzpe < vs.back()) vs.push_back(lzpe);
    if (std::isfinite(lfs) && lfs > vs.front() && lfs < vs.back()) vs.push_back(lfs);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());

    std::vector<ConjSample> base;
    base.reserve(vs.size());
    for (double v : vs) base.push_back({v, conj_point_slope(a, v, lzpe, lfs)});
    std::vector<ConjSample> all;
    all.reserve(base.size() * 2);
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (i > 0) refine(a, lzpe, lfs, base[i - 1], base[i], 0, all);
        all.push_back(base[i]);
    }
    std::vector<double> lt, lv, ld;
    for (const auto& s : all) {
        lt.push_back(s.v);
        lv.push_back(s.p.rho);
        ld.push_back(s.p.slope);
    }
    YoungFn y;
    y.log_zero_end = lzpe;
    y.log_finite_sup = lfs;
    y.ratio_table = true;
    y.table = GridFn::from_log(std::move(lt), std::move(lv));
    y.table.log_d = std::move(ld);
    if (a.exponents)
        y.exponents = EndExponents{conj_exponent(a.exponents->zero), conj_exponent(a.exponents->infinity)};
    y.label = a.label.empty() ? "" : "conj(" + a.label + ")";
    return y;
}

Trend increment_trend(const std::function<double(double)>& f, double u_end) {
    const double f0 = f(u_end);
    const double f1 = f(u_end / 2);
    const double f2 = f(u_end / 4);
    if (f0 == kInf) return Trend::Up;
    if (f0 == -kInf) return Trend::Down;
    if (!std::isfinite(f1) || !std::isfinite(f2)) return Trend::Flat;
    const double d1 = f0 - f1;
    const double d2 = f1 - f2;
    const double eps = 0.05 + 1e-9 * std::max({std::abs(f0), std::abs(f1), std::abs(f2)});
    if (d1 > eps && d1 > 0.75 * d2) return Trend::Up;
    if (d1 < -eps && d1 < 0.75 * d2) return Trend::Down;
    return Trend::Flat;
}

TailTrends tail_trends(const std::function<double(double)>& f, const Config& cfg, double lo_end, double hi_end) {
    TailTrends t;
    t.zero = increment_trend(f, std::isnan(lo_end) ? cfg.u_min() : lo_end);
    t.infinity = increment_trend(f, std::isnan(hi_end) ? cfg.u_max() : hi_end);
    return t;
}

Relation dominates(const YoungFn& a, const YoungFn& b, const Config& cfg) {
    Relation r;
    const std::vector<double> us = merged_nodes(cfg, a, b);
    std::vector<double> lb(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) lb[i] = b.log_eval(us[i]);
    auto ok = [&](double lc) {
        for (std::size_t i = 0; i < us.size(); ++i)
            if (!log_le(lb[i], a.log_eval(us[i] + lc))) return false;
        return true;
    };
    const double lmax = std::log(cfg.c_max);
    double lc = 0.0;
    if (!ok(0.0)) {
        if (!ok(lmax)) {
            r.holds = false;
            r.constant = kInf;
            r.flags.push_back("constant-range-exhausted");
            return r;
        }
        double lo = 0.0;
        double hi = lmax;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (ok(mid))
                hi = mid;
            else
                lo = mid;
        }
        lc = hi;
    }
    r.holds = true;
    r.constant = std::exp(lc);
    double worst = -kInf;
    for (std::size_t i = 0; i < us.size(); ++i) {
        const double d = lb[i] - a.log_eval(us[i] + lc);
        if (std::isfinite(d) && d > worst) {
            worst = d;
            r.worst_t = std::exp(us[i]);
        }
    }
    const double lo_end = std::min(cfg.u_min(), std::max({2 * cfg.u_min(), b.trusted_lo(), a.trusted_lo() - lc}));
    const double hi_end = std::max(cfg.u_max(), std::min({2 * cfg.u_max(), b.trusted_hi(), a.trusted_hi() - lc}));
    const auto trends =
        tail_trends([&](double u) { return b.log_eval(u) - a.log_eval(u + lc); }, cfg, lo_end, hi_end);
    if (trends.zero == Trend::Up || trends.infinity == Trend::Up) {
        r.holds = false;
        r.flags.push_back("tail-divergent");
    }
    return r;
}

Relation equivalent(const YoungFn& a, const YoungFn& b, const Config& cfg) {
    const Relation ab = dominates(a, b, cfg);
    const Relation ba = dominates(b, a, cfg);
    Relation r;
    r.holds = ab.holds && ba.holds;
    r.constant = ab.constant;
    r.constant_back = ba.constant;
    r.worst_t = ab.holds ? ba.worst_t : ab.worst_t;
    r.flags = ab.flags;
    r.flags.insert(r.flags.end(), ba.flags.begin(), ba.flags.end());
    return r;
}

namespace {

bool plain_piece(const AsymPiece& p) {
    return p.constant == AsymPiece::Const::None && std::isfinite(p.power);
}

// exact decision from the asymptotic scales; nullopt when the scales cannot decide
std::optional<bool> symbolic_essential(const YoungFn& a, const YoungFn& b) {
    if (!a.pure_symbolic() || !b.pure_symbolic()) return std::nullopt;
    const auto& fa = *a.symbolic;
    const auto& fb = *b.symbolic;
    for (const auto* p : {&fa.near_zero, &fa.near_infinity, &fb.near_zero, &fb.near_infinity})
        if (!plain_piece(*p)) return std::nullopt;
    const Signature sa[2] = {signature(fa.near_zero, End::Zero), signature(fa.near_infinity, End::Infinity)};
    const Signature sb[2] = {signature(fb.near_zero, End::Zero), signature(fb.near_infinity, End::Infinity)};
    std::vector<double> crit;
    for (int e = 0; e < 2; ++e) {
        const double side = e == 1 ? 1.0 : -1.0;
        for (const auto& ta : sa[e].terms) {
            if (ta.rank != 0) continue;
            const double cb = sb[e].coef(0, ta.beta);
            if (cb == 0.0 || ta.coef / cb <= 0) continue;
            crit.push_back(std::pow(ta.coef / cb, 1.0 / (side * ta.beta)));
        }
    }
    std::vector<double> lambdas = {1.0};
    if (crit.empty()) {
        lambdas.push_back(1e-3);
        lambdas.push_back(1e3);
    } else {
        std::sort(crit.begin(), crit.end());
        lambdas.push_back(crit.front() / 10);
        lambdas.push_back(crit.back() * 10);
        for (std::size_t i = 0; i < crit.size(); ++i) {
            lambdas.push_back(crit[i]);
            if (i + 1 < crit.size()) lambdas.push_back(std::sqrt(crit[i] * crit[i + 1]));
        }
    }
    for (double lam : lambdas) {
        bool some = false;
        for (int e = 0; e < 2; ++e) {
            const End end = e == 1 ? End::Infinity : End::Zero;
            const Signature d = difference(sa[e], dilate(sb[e], end, lam));
            if (!d.exact) return std::nullopt;
            if (leading_sign(d) > 0) some = true;
        }
        if (!some) return false;
    }
    return true;
}

}  // namespace

Relation essentially_dominates(const YoungFn& a, const YoungFn& b, const Config& cfg) {
    Relation r;
    if (const auto exact = symbolic_essential(a, b)) {
        r.holds = *exact;
        r.flags.push_back("symbolic-exact");
        return r;
    }
    r.flags.push_back("heuristic");
    const std::vector<double> us = merged_nodes(cfg, a, b);
    const std::size_t n = us.size();
    const std::size_t k = std::max<std::size_t>(3, n / 20);
    r.holds = true;
    r.constant = kInf;
    for (double lam : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        const double ll = std::log(lam);
        double best = -kInf;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double la = a.log_eval(us[i]);
            const double lb = b.log_eval(us[i] + ll);
            double d;
            if (la == kInf && lb < kInf)
                d = kInf;
            else if (lb == -kInf && la > -kInf)
                d = kInf;
            else
                d = la - lb;
            if (std::isnan(d)) continue;
            if (d > best) {
                best = d;
                arg = i;
            }
        }
        const bool at_end = arg < k || arg + k >= n;
        if (!(best == kInf || (best > std::log(1e6) && at_end))) {
            r.holds = false;
            r.worst_t = lam;
            r.constant = std::exp(best);
            return r;
        }
        if (lam == 1.0) r.worst_t = std::exp(us[arg]);
        r.constant = std::min(r.constant, std::exp(best));
    }
    return r;
}

RatioBounds ratio_bounds(const std::function<double(double)>& log_f,
                         const std::function<double(double)>& log_g, double s_lo, double s_hi,
                         int per_decade) {
    RatioBounds r;
    double up = -kInf;
    double down = -kInf;
    double worst = -kInf;
    for (double u : log_range(std::log(s_lo), std::log(s_hi), per_decade)) {
        const double d = log_f(u) - log_g(u);
        if (std::isnan(d)) continue;
        up = std::max(up, d);
        down = std::max(down, -d);
        if (std::abs(d) > worst) {
            worst = std::abs(d);
            r.worst_s = std::exp(u);
        }
    }
    r.up = std::exp(up);
    r.down = std::exp(down);
    return r;
}

RatioBounds inverse_ratio_bounds(const YoungFn& a, const YoungFn& b, double s_lo, double s_hi,
                                 int per_decade) {
    return ratio_bounds([&](double u) { return log_inverse(a, u); },
                        [&](double u) { return log_inverse(b, u); }, s_lo, s_hi, per_decade);
}

double log_modular(const YoungFn& a, const GridFn& g, double ll, const Config& cfg) {
    if (g.empty()) return -kInf;
    if (g.interp == Interp::StepRight) {
        double total = -kInf;
        double prev = -kInf;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double lm = log_span(prev, g.log_t[i]);
            prev = g.log_t[i];
            if (lm == -kInf || g.log_v[i] == -kInf) continue;
            total = log_add(total, a.log_eval(g.log_v[i] - ll) + lm);
            if (total == kInf) return kInf;
        }
        return total;
    }
    auto h = [&](double u) {
        const double lg = g.log_eval(u);
        if (lg == -kInf) return -kInf;
        return a.log_eval(lg - ll) + u;
    };
    double total = -kInf;
    const double step = cfg.du() / 2;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double u0 = g.log_t[i];
        const double u1 = g.log_t[i + 1];
        const int m = std::max(1, static_cast<int>(std::ceil((u1 - u0) / step)));
        double hp = h(u0);
        for (int j = 1; j <= m; ++j) {
            const double ua = u0 + (u1 - u0) * (j - 1) / m;
            const double ub = u0 + (u1 - u0) * j / m;
            const double hn = h(ub);
            const double w = ub - ua;
            double seg;
            if (hp == kInf || hn == kInf)
                seg = kInf;
            else if (hp == -kInf && hn == -kInf)
                seg = -kInf;
            else if (hp == -kInf || hn == -kInf)
                seg = std::max(hp, hn) + std::log(w / 2);
            else
                seg = log_segment(hp, hn, w);
            total = log_add(total, seg);
            hp = hn;
        }
        if (total == kInf) return kInf;
    }
    auto tail = [&](double h_edge, double h_out) {
        if (h_edge == -kInf || h_out == -kInf) return -kInf;
        if (h_edge == kInf || h_out == kInf) return kInf;
        const double s = (h_edge - h_out) / kLn10;
        if (s <= 1e-9) return kInf;
        return h_edge - std::log(s);
    };
    if (g.tail_zero.kind != TailFit::Kind::PlateauZero) {
        const double u0 = g.log_t.front();
        total = log_add(total, tail(h(u0), h(u0 - kLn10)));
    }
    if (g.tail_infinity.kind != TailFit::Kind::PlateauZero) {
        const double un = g.log_t.back();
        total = log_add(total, tail(h(un), h(un + kLn10)));
    }
    return total;
}

NormResult norm_by_bisection(const std::function<double(double)>& log_mod) {
    NormResult r;
    double lo = -12 * kLn10;
    double hi = 12 * kLn10;
    const double m_hi = log_mod(hi);
    if (m_hi > 0) {
        r.value = kInf;
        r.flags.push_back(m_hi == kInf ? "integral-divergent" : "norm-out-of-range");
        return r;
    }
    if (log_mod(lo) <= 0) {
        r.value = log_mod(-700.0) == -kInf ? 0.0 : std::exp(lo);
        return r;
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (log_mod(mid) <= 0)
            hi = mid;
        else
            lo = mid;
    }
    r.value = std::exp(hi);
    return r;
}

NormResult luxemburg_norm(const YoungFn& a, const GridFn& g, const Config& cfg) {
    return norm_by_bisection([&](double ll) { return log_modular(a, g, ll, cfg); });
}

GridFn rearrangement(std::vector<Cell> cells) {
    cells.erase(std::remove_if(cells.begin(), cells.end(),
                               [](const Cell& c) { return !(c.value > 0) || !(c.measure > 0); }),
                cells.end());
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.value > y.value; });
    std::vector<double> lt;
    std::vector<double> lv;
    double cum = 0.0;
    for (const auto& c : cells) {
        cum += c.measure;
        if (!lv.empty() && lv.back() == std::log(c.value)) {
            lt.back() = std::log(cum);
            continue;
        }
        lt.push_back(std::log(cum));
        lv.push_back(std::log(c.value));
    }
    return GridFn::from_log(std::move(lt), std::move(lv), Interp::StepRight);
}

NormResult luxemburg_norm_cells(const YoungFn& a, const std::vector<Cell>& cells) {
    return norm_by_bisection([&](double ll) {
        double total = -kInf;
        for (const auto& c : cells) {
            if (!(c.value > 0) || !(c.measure > 0)) continue;
            total = log_add(total, a.log_eval(std::log(c.value) - ll) + std::log(c.measure));
        }
        return total;
    });
}

std::vector<std::string> validate(const YoungFn& a, const Config& cfg) {
    std::vector<std::string> issues;
    const std::vector<double> us = cfg.log_grid();
    std::vector<double> lv(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) lv[i] = a.log_eval(us[i]);
    for (std::size_t i = 1; i < us.size(); ++i) {
        if (lv[i] < lv[i - 1] - 1e-12 * std::max(1.0, std::abs(lv[i - 1]))) {
            issues.push_back("not monotone near t=" + std::to_string(std::exp(us[i])));
            break;
        }
    }
    for (std::size_t i = 1; i + 1 < us.size(); ++i) {
        if (!std::isfinite(lv[i - 1]) || !std::isfinite(lv[i]) || !std::isfinite(lv[i + 1])) continue;
        const double c = chord_log(us[i - 1], lv[i - 1], us[i + 1], lv[i + 1], us[i]);
        if (lv[i] > c + 1e-9 * std::max(1.0, std::abs(c))) {
            issues.push_back("not convex near t=" + std::to_string(std::exp(us[i])));
            break;
        }
    }
    for (double k : {1.0, 2.0, 10.0}) {
        const double lk = std::log(k);
        for (std::size_t i = 0; i < us.size(); ++i) {
            if (!log_le(lv[i] + lk, a.log_eval(us[i] + lk))) {
                issues.push_back("k A(t) > A(k t) for k=" + std::to_string(k));
                break;
            }
        }
    }
    return issues;
}

}  // namespace orlicz
