#include "orlicz/optimality.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/boyd.hpp"

namespace orlicz {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kIndexResolution = 1e-3;

struct IndexEst {
    double value = std::nan("");
    double lo = std::nan("");
    double hi = std::nan("");
    bool exact = false;
    bool indeterminate = false;
};

IndexEst lower_index(const YoungFn& y, bool force_numeric) {
    if (!force_numeric && y.exponents) {
        const double v = std::min(y.exponents->zero, y.exponents->infinity);
        if (!std::isnan(v)) return {v, v, v, true, false};
    }
    const BoydEstimate e = boyd_indices(y, true);
    const double band = std::max(e.spread_lower, kIndexResolution * e.i_lower);
    return {e.i_lower, e.i_lower - band, e.i_lower + band, false, e.indeterminate()};
}

bool exceeds(const IndexEst& e, double gate) {
    if (e.exact) return e.value > gate * (1 + 1e-9);
    return e.lo > gate;
}

YoungFn young_from_inverse(const GridFn& inv) {
    std::vector<double> lt;
    std::vector<double> lv;
    for (std::size_t i = 0; i < inv.size(); ++i) {
        const double x = inv.log_v[i];
        if (!std::isfinite(x) || (!lt.empty() && x <= lt.back())) continue;
        lt.push_back(x);
        lv.push_back(inv.log_t[i]);
    }
    return from_samples(std::move(lt), std::move(lv));
}

}  // namespace

const char* kind_name(TargetResult::Kind k) {
    switch (k) {
        case TargetResult::Kind::Optimal: return "Optimal";
        case TargetResult::Kind::NoOptimalExists: return "NoOptimalExists";
        case TargetResult::Kind::NoTargetExists: return "NoTargetExists";
    }
    return "";
}

const char* kind_name(DomainResult::Kind k) {
    return k == DomainResult::Kind::Optimal ? "Optimal" : "NoDomainExists";
}

TargetResult optimal_target(const YoungFn& a, const GammaContext& ctx, const Config& cfg, bool force_numeric) {
    TargetResult r;
    r.gate = ctx.q_star();
    if (!check_acond(a, ctx, cfg)) {
        r.kind = TargetResult::Kind::NoTargetExists;
        r.evidence.push_back("acond-violated");
        return r;
    }
    YoungFn ag = a_gamma(a, ctx, cfg);
    const IndexEst e = lower_index(ag, force_numeric);
    r.index_value = e.value;
    if (e.exact) {
        r.evidence.push_back("symbolic-exact");
    } else {
        r.evidence.push_back("numeric-conservative");
        if (e.indeterminate || (e.lo <= r.gate && e.hi >= r.gate))
            throw OrliczError("indeterminate-index", "Boyd index estimate of A_gamma straddles n/(n-gamma)");
    }
    if (exceeds(e, r.gate)) {
        r.kind = TargetResult::Kind::Optimal;
        r.optimal = std::move(ag);
    } else {
        r.kind = TargetResult::Kind::NoOptimalExists;
    }
    return r;
}

DomainResult optimal_domain(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    DomainResult r;
    if (!check_bconv(b, ctx, cfg)) {
        r.evidence.push_back("bconv-violated");
        return r;
    }
    r.kind = DomainResult::Kind::Optimal;
    if (conservative_lower(boyd_indices(b)) > ctx.q_star()) {
        r.simplified = true;
        YoungFn y = young_from_inverse(intout_inverse(b, ctx, cfg));
        y.exponents = b_gamma(b, ctx, cfg).exponents;
        y.label = "B_gamma";
        r.optimal = std::move(y);
        r.evidence.push_back("intout");
    } else {
        r.optimal = b_gamma(b, ctx, cfg);
        r.evidence.push_back("integral-form");
    }
    return r;
}

RangeReiteration reiterate_range(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    RangeReiteration r;
    r.domain = b_gamma(b, ctx, cfg);
    r.roundtrip = a_gamma(r.domain, ctx, cfg);
    r.target_optimal = conservative_lower(boyd_indices(b)) > ctx.q_star();
    r.relation = equivalent(r.roundtrip, b, cfg);
    r.roundtrip_equivalent = r.relation.holds;
    if (r.target_optimal != r.roundtrip_equivalent) r.flags.push_back("reiteration-mismatch");
    return r;
}

DomainReiteration reiterate_domain(const YoungFn& a, const GammaContext& ctx, const Config& cfg, bool force_numeric) {
    DomainReiteration r;
    r.improved = a_sup(a, ctx, cfg);
    r.improvement_strict = !equivalent(a, r.improved, cfg).holds;
    const YoungFn sg = a_gamma(r.improved, ctx, cfg);
    r.transform_preserved = equivalent(sg, a_gamma(a, ctx, cfg), cfg).holds;
    const IndexEst is = lower_index(r.improved, force_numeric);
    const IndexEst isg = lower_index(sg, force_numeric);
    r.index_sup = is.value;
    r.index_sup_gamma = isg.value;
    r.target_optimal = exceeds(is, 1.0);
    if (is.indeterminate || isg.indeterminate) r.flags.push_back("indeterminate-index");
    const double inv = 1.0 / is.value - ctx.s_star();
    const double predicted = inv > 0 ? 1.0 / inv : kInf;
    if (std::isinf(predicted) && std::isinf(isg.value))
        r.index_relation_error = 0.0;
    else if (std::isinf(predicted) || std::isinf(isg.value))
        r.index_relation_error = kInf;
    else
        r.index_relation_error = std::abs(isg.value - predicted) / predicted;
    if (!r.transform_preserved) r.flags.push_back("transform-not-preserved");
    return r;
}

YoungFn bounded_case_majorant(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    if (!check_bconv(b, ctx, cfg)) throw OrliczError("bconv-violated", "int_0^1 B(s) s^{-q*-1} ds diverges");
    const double q = ctx.q_star();
    auto h = [&](double u) { return b.log_eval_shifted(u, q); };

    // J(v) = log int_0^{e^v} B(s) s^{-q*-1} ds on a deep axis
    std::vector<double> axis;
    for (double m = 10 * kWitnessDepth; m > 1.0; m /= 1.01) axis.push_back(-m);
    for (double v = -1.0; v <= 0.0; v += cfg.du()) axis.push_back(v);
    axis.push_back(0.0);
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    std::vector<double> j(axis.size());
    {
        const double h0 = h(axis[0]);
        const double sigma = (h(axis[0] + 1.0) - h0);
        double cum = h0 == -kInf ? -kInf : h0 - std::log(std::max(sigma, 1e-300));
        double hp = h0;
        j[0] = cum;
        for (std::size_t i = 1; i < axis.size(); ++i) {
            const double hv = h(axis[i]);
            cum = log_add(cum, log_segment(hp, hv, axis[i] - axis[i - 1]));
            hp = hv;
            j[i] = cum;
        }
    }
    auto j_at = [&](double v) {
        const auto it = std::upper_bound(axis.begin(), axis.end(), v);
        if (it == axis.begin()) return j.front();
        const std::size_t i = static_cast<std::size_t>(it - axis.begin()) - 1;
        return j[i];
    };

    // pieces [u_{k+1}, u_k) carrying d_k = 1 / log(k + 1)
    std::vector<double> us{0.0};
    std::vector<double> ds;
    for (int k = 1; -us.back() < kWitnessDepth; ++k) {
        const double dk = 1.0 / std::log(k + 1.0);
        ds.push_back(dk);
        double next = us.back() - std::max(std::log(k + 1.0), 0.015 * std::abs(us.back()));
        while (j_at(next) > std::log(1.0 / std::log(k + 2.0)) && next > -10 * kWitnessDepth) next -= 1.0 + 0.01 * std::abs(next);
        us.push_back(next);
    }
    const std::size_t npieces = ds.size();
    // P[k] = log int_0^{t_k} D_1(s) / s ds
    std::vector<double> p(npieces + 1);
    p[npieces] = std::log(ds.back() / q) + q * us[npieces];
    for (std::size_t k = npieces; k-- > 0;)
        p[k] = log_add(p[k + 1], std::log(ds[k] / q) + log_span(q * us[k + 1], q * us[k]));
    const double c_top = std::max(std::exp(j.back()), ds.front());

    auto ld = [&](double u) {
        const double x = u + kLn2;
        if (x >= 0) return log_add(p[0], std::log(c_top / q) + log_span(0.0, q * x));
        if (x < us[npieces]) return std::log(ds.back() / q) + q * x;
        std::size_t lo = 0;
        std::size_t hi = npieces;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (us[mid] > x)
                lo = mid;
            else
                hi = mid;
        }
        return log_add(p[lo + 1], std::log(ds[lo] / q) + log_span(q * us[lo + 1], q * x));
    };

    std::vector<double> lt;
    for (std::size_t k = 0; k < npieces; ++k)
        for (int i = 0; i < 5; ++i) lt.push_back(us[k + 1] + (us[k] - us[k + 1]) * i / 5.0 - kLn2);
    for (double u : log_range(-kLn2, cfg.u_max() + std::log(cfg.c_max) + 2 * kLn10, cfg.points_per_decade)) lt.push_back(u);
    std::sort(lt.begin(), lt.end());
    lt.erase(std::unique(lt.begin(), lt.end()), lt.end());
    std::vector<double> lv(lt.size());
    for (std::size_t i = 0; i < lt.size(); ++i) lv[i] = ld(lt[i]);
    YoungFn d = from_samples(std::move(lt), std::move(lv));
    d.label = "majorant";
    return d;
}

YoungFn witness_majorant(const YoungFn& a, const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    YoungFn ag = a_gamma(a, ctx, cfg);
    const double q = ctx.q_star();
    bool vanishing = false;
    if (ag.exponents && !std::isnan(ag.exponents->zero) && std::abs(ag.exponents->zero - q) > 1e-9 * q) {
        vanishing = ag.exponents->zero > q;
    } else {
        const double end = std::max(2 * cfg.u_min(), ag.trusted_lo());
        vanishing = increment_trend([&](double u) { return ag.log_eval_shifted(u, q); }, end) == Trend::Down;
    }
    if (vanishing) return ag;
    return bounded_case_majorant(b, ctx, cfg);
}

Witness witness_improvement(const YoungFn& b, const YoungFn& d, const GammaContext& ctx, const Config& cfg) {
    const double q = ctx.q_star();
    Witness w;
    w.b1 = b;
    if (!b.symbolic) w.flags.push_back("tabulated-b-extrapolated");
    if (d.trusted_lo() > -kWitnessDepth) w.flags.push_back("majorant-extrapolated");
    auto lb = [&](double u) { return b.log_eval(u); };
    auto dratio = [&](double u) { return d.log_eval_shifted(u, q); };
    if (!(dratio(-kWitnessDepth) < dratio(-1.0) - kLn2)) w.flags.push_back("majorant-ratio-not-vanishing");

    double prev_u = 0.0;
    for (const Chord& c : b.chords) prev_u = std::min(prev_u, c.u0);
    double prev_dr = kInf;
    std::vector<Chord> rungs;
    for (double m = 0.5; m < kWitnessDepth; m *= 1.01) {
        const double u = -m;
        if (u + kLn2 >= prev_u) continue;
        const int k = static_cast<int>(rungs.size()) + 1;
        const double dr = dratio(u);
        if (!(dr <= prev_dr - kLn2)) continue;
        const double target = d.log_eval(u) - u;
        if (!(lb(u + kLn2) - (u + kLn2) <= target)) continue;
        if (!(lb(prev_u) - prev_u > target)) continue;
        double lo = u + kLn2;
        double hi = prev_u;
        for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (lb(mid) - mid <= target)
                lo = mid;
            else
                hi = mid;
        }
        const double ratio = (lb(lo) - lo) + u - lb(u + std::log(static_cast<double>(k)));
        if (!(ratio >= std::log(10.0 * k))) continue;
        rungs.push_back({u, lo, lb(u), lb(lo)});
        w.log_t_k.push_back(u);
        w.log_tau_k.push_back(lo);
        w.log_ratio_k.push_back(ratio);
        for (double f : {0.25, 0.5, 0.75}) w.b1.extra_nodes.push_back(u + f * (lo - u));
        w.b1.extra_nodes.push_back(u + kLn2);
        prev_u = u;
        prev_dr = dr;
    }
    if (rungs.size() < 3) w.flags.push_back("witness-unconstructible");
    w.b1.chords.insert(w.b1.chords.end(), rungs.begin(), rungs.end());
    std::sort(w.b1.chords.begin(), w.b1.chords.end(), [](const Chord& x, const Chord& y) { return x.u0 < y.u0; });
    std::sort(w.b1.extra_nodes.begin(), w.b1.extra_nodes.end());
    w.b1.label = "witness";

    std::vector<double> grid;
    for (double u : cfg.log_grid())
        if (u < 0) grid.push_back(u);
    const GridFn fb = f_transform(b, ctx, cfg);
    const GridFn fb1 = f_transform(w.b1, ctx, cfg);
    auto fits = [&](const GridFn& f, double lc) {
        for (double u : grid) {
            const double x = f.log_eval(u);
            const double y = d.log_eval(u + lc);
            if (x > y + 1e-9 * std::max(1.0, std::abs(x))) return false;
        }
        return true;
    };
    const double lmax = std::log(cfg.c_max);
    if (!fits(fb, lmax)) {
        w.flags.push_back("majorant-bound-failed");
        return w;
    }
    double lo = -30.0;
    double hi = lmax;
    if (fits(fb, lo)) hi = lo;
    for (int it = 0; it < 60 && hi > lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fits(fb, mid))
            hi = mid;
        else
            lo = mid;
    }
    w.constant = std::exp(hi);
    w.bound_verified = fits(fb1, hi + std::log(5.0));
    if (!w.bound_verified) w.flags.push_back("modular-bound-violated");
    return w;
}

}  // namespace orlicz
