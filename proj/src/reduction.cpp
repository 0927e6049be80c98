#include "orlicz/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

double clamp_t(double t, const Config& cfg) {
    if (!(t > 0)) return cfg.t_min;
    return std::clamp(t, cfg.t_min, cfg.t_max);
}

Verdict from_relation(const Relation& r, Criterion c, const Config& cfg) {
    Verdict v;
    v.holds = r.holds;
    v.constant = r.holds ? r.constant : kInf;
    v.criterion_used = c;
    v.worst_t = clamp_t(r.worst_t, cfg);
    v.flags = r.flags;
    return v;
}

Verdict failed(Criterion c, const std::string& flag, const Config& cfg) {
    Verdict v;
    v.criterion_used = c;
    v.worst_t = cfg.t_min;
    v.flags.push_back(flag);
    return v;
}

// argmin over the grid of f, with the minimum
std::pair<double, double> grid_min(const std::function<double(double)>& f, const Config& cfg) {
    double best = kInf;
    double at = cfg.u_min();
    for (double u : cfg.log_grid()) {
        const double v = f(u);
        if (v < best || std::isnan(v)) {
            best = std::isnan(v) ? -kInf : v;
            at = u;
        }
    }
    return {best, at};
}

std::optional<Signature> end_signature(const YoungFn& a, End end, double shift) {
    if (!a.symbolic) return std::nullopt;
    const AsymPiece& p = end == End::Zero ? a.symbolic->near_zero : a.symbolic->near_infinity;
    if (p.constant != AsymPiece::Const::None) return std::nullopt;
    Signature s = signature(p, end);
    if (!s.exact) return std::nullopt;
    s.add(1, 1.0, end == End::Zero ? shift : -shift);
    s.normalize();
    return s;
}

}  // namespace

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::Iii: return "iii";
        case Criterion::Iv: return "iv";
        case Criterion::EndpointI: return "endpoint-i";
        case Criterion::EndpointIi: return "endpoint-ii";
    }
    return "";
}

Verdict criterion_iii(const YoungFn& a, const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    if (!check_acond(a, ctx, cfg)) return failed(Criterion::Iii, "acond-violated", cfg);
    if (!check_bconv(b, ctx, cfg)) return failed(Criterion::Iii, "integral-divergent", cfg);
    const YoungFn ag = a_gamma(a, ctx, cfg);
    YoungFn f = as_young(f_transform(b, ctx, cfg), "F");
    f.log_zero_end = b.log_zero_end;
    f.log_finite_sup = b.log_finite_sup;
    return from_relation(dominates(ag, f, cfg), Criterion::Iii, cfg);
}

Verdict criterion_iv(const YoungFn& a, const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    if (!check_bconv(b, ctx, cfg)) return failed(Criterion::Iv, "bconv-violated", cfg);
    const YoungFn bg = b_gamma(b, ctx, cfg);
    return from_relation(dominates(a, bg, cfg), Criterion::Iv, cfg);
}

Verdict bounded(const YoungFn& a, const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    const Verdict iii = criterion_iii(a, b, ctx, cfg);
    const Verdict iv = criterion_iv(a, b, ctx, cfg);
    Verdict v = iii.holds ? iv : iii;
    if (iii.holds && iv.holds) v = iii;
    if (iii.holds != iv.holds) v.flags.push_back("criterion-disagreement");
    return v;
}

Verdict endpoint_linf_target(const YoungFn& a, const GammaContext& ctx, const Config& cfg) {
    const double r = ctx.r_star();
    auto f = [&](double u) { return a.log_eval_shifted(u, r); };
    Verdict v;
    v.criterion_used = Criterion::EndpointI;
    const auto [lo, at] = grid_min(f, cfg);
    v.worst_t = std::exp(at);
    bool ok = std::isfinite(lo);
    const auto s0 = end_signature(a, End::Zero, r);
    const auto si = end_signature(a, End::Infinity, r);
    if (ok) {
        if (s0)
            ok = leading_sign(*s0) >= 0;
        else
            ok = increment_trend(f, cfg.u_min()) != Trend::Down;
    }
    if (ok) {
        if (si)
            ok = leading_sign(*si) >= 0;
        else if (!a.symbolic || a.symbolic->near_infinity.constant == AsymPiece::Const::None)
            ok = increment_trend(f, cfg.u_max()) != Trend::Down;
    }
    v.holds = ok;
    v.constant = ok ? std::exp(lo) : 0.0;
    if (!ok) v.flags.push_back("ratio-infimum-zero");
    return v;
}

Verdict endpoint_l1_domain(const YoungFn& b, const GammaContext& ctx, const Config& cfg) {
    const double q = ctx.q_star();
    Verdict v;
    v.criterion_used = Criterion::EndpointIi;
    v.worst_t = cfg.t_max;
    if (!check_bconv(b, ctx, cfg)) {
        v.worst_t = cfg.t_min;
        v.flags.push_back("integral-divergent-at-zero");
        return v;
    }
    if (std::isfinite(b.log_finite_sup)) {
        v.flags.push_back("integral-divergent-at-infinity");
        return v;
    }
    const GridFn f = f_transform(b, ctx, cfg);
    auto ratio = [&](double u) { return f.log_eval(u) - q * u; };
    bool ok = true;
    if (const auto si = end_signature(b, End::Infinity, q))
        ok = integrable(*si);
    else
        ok = increment_trend(ratio, std::min(2 * cfg.u_max(), f.log_t.back())) != Trend::Up;
    v.holds = ok;
    if (!ok) {
        v.flags.push_back("integral-divergent-at-infinity");
        return v;
    }
    double top = -kInf;
    for (double u : cfg.log_grid()) top = std::max(top, ratio(u));
    v.constant = std::exp(top);
    return v;
}

}  // namespace orlicz
