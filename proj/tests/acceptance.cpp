#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/boyd.hpp"
#include "orlicz/optimality.hpp"
#include "orlicz/oracle.hpp"
#include "orlicz/reduction.hpp"

using namespace orlicz;
namespace fam = orlicz::families;

namespace {

const GammaContext kCtx(3, 1.0);

/// Outcome of one acceptance criterion with a short account of the measurements.
struct Check {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note << " [failed: " << what << "]";
        }
    }
};

bool has_flag(const std::vector<std::string>& flags, const std::string& f) {
    for (const auto& x : flags)
        if (x == f) return true;
    return false;
}

bool equivalent_within(const YoungFn& a, const YoungFn& b, double c) {
    const Relation r = equivalent(a, b);
    return r.holds && r.constant <= c && r.constant_back <= c;
}

GridFn indicator(double r) { return GridFn::from_log({std::log(r)}, {0.0}, Interp::StepRight); }

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

void zygmund_target_table(Check& c) {
    double worst = 0;
    for (double p : {1.5, 2.0, 2.5}) {
        for (double alpha : {-1.0, 0.0, 1.0}) {
            const double e = 3 * p / (3 - p);
            const double l = 3 * alpha / (3 - p);
            const YoungFn ag = a_gamma(fam::zygmund(p, alpha, p, alpha), kCtx);
            const RatioBounds rb = inverse_ratio_bounds(ag, fam::zygmund(e, l, e, l), 1e-10, 1e10);
            worst = std::max({worst, rb.up, rb.down});
            c.require(rb.up <= 16 && rb.down <= 16, "p=" + num(p) + " alpha=" + num(alpha));
        }
    }
    c.note << "9 cells, worst inverse ratio " << num(worst);
}

void exponential_borderline(Check& c) {
    const YoungFn ag = a_gamma(fam::zygmund(2, 0, 3, -2), kCtx);
    const YoungFn closed = fam::exp_type(-1, 1.5);
    const RatioBounds rb = inverse_ratio_bounds(ag, closed, 1e2, 1e300, 4);
    c.require(rb.up <= 16 && rb.down <= 16, "inverse ratio near infinity");
    c.note << "inverse ratios " << num(rb.up) << " / " << num(rb.down) << " on s in [1e2, 1e300]";
}

void zygmund_domain_table(Check& c) {
    const Relation r = equivalent(b_gamma(fam::zygmund(3, 1, 3, 1), kCtx), fam::zygmund(1.5, 0.5, 1.5, 0.5));
    c.require(r.holds && r.constant <= 16 && r.constant_back <= 16, "q=3 alpha=1");
    const Relation crit = equivalent(b_gamma(fam::zygmund(2, 0, 1.5, 0), kCtx), fam::zygmund(1.2, 0, 1, 2.0 / 3));
    c.require(crit.holds && crit.constant <= 16 && crit.constant_back <= 16, "critical q=1.5");
    c.note << "constants " << num(r.constant) << "/" << num(r.constant_back) << ", critical " << num(crit.constant)
           << "/" << num(crit.constant_back);
}

void endpoint_corollary(Check& c) {
    c.require(bounded(fam::power(3), fam::linf(), kCtx).holds, "Lp(3) -> Linf holds");
    c.require(!bounded(fam::power(2.99), fam::linf(), kCtx).holds, "Lp(2.99) -> Linf fails");
    int agree = 0;
    const std::vector<YoungFn> fixtures = {fam::zygmund(2, 0, 1.2, 0), fam::zygmund(2, 0, 1.5, 0),
                                           fam::zygmund(2, 0, 1.5, -2), fam::power(1.4),
                                           fam::power(2),               fam::zygmund(1.5, -2, 1.2, 0)};
    for (const YoungFn& b : fixtures)
        if (endpoint_l1_domain(b, kCtx).holds == bounded(fam::l1(), b, kCtx).holds) ++agree;
    c.require(agree == 6, "L1 endpoint agreement");
    c.note << "L1 endpoint agreement " << agree << "/6";
}

struct Pair {
    const char* name;
    YoungFn a;
    YoungFn b;
    GammaContext ctx;
    bool expected;
};

std::vector<Pair> criterion_battery() {
    const GammaContext c2(2, 1.0);
    const GammaContext c1(1, 0.5);
    return {
        {"Lp2->Lp6", fam::power(2), fam::power(6), kCtx, true},
        {"Lp2->Lp5", fam::power(2), fam::power(5), kCtx, false},
        {"Lp2->Lp7", fam::power(2), fam::power(7), kCtx, false},
        {"Lp1.5->Lp3", fam::power(1.5), fam::power(3), kCtx, true},
        {"Lp1.5->Z(3,0,3,0)", fam::power(1.5), fam::zygmund(3, 0, 3, 0), kCtx, true},
        {"L1->Lp2", fam::l1(), fam::power(2), kCtx, false},
        {"Lp3->Linf", fam::power(3), fam::linf(), kCtx, true},
        {"Lp2.5->Linf", fam::power(2.5), fam::linf(), kCtx, false},
        {"Lp4->Linf", fam::power(4), fam::linf(), kCtx, false},
        {"Z(2,1,2,1)->Z(6,3,6,3)", fam::zygmund(2, 1, 2, 1), fam::zygmund(6, 3, 6, 3), kCtx, true},
        {"Z(2,1,2,1)->Lp6", fam::zygmund(2, 1, 2, 1), fam::power(6), kCtx, true},
        {"Lp2->Z(6,3,6,3)", fam::power(2), fam::zygmund(6, 3, 6, 3), kCtx, false},
        {"Z(3,1,3,-2)->Exp(-3,1.5)", fam::zygmund(3, 1, 3, -2), fam::exp_type(-3, 1.5), kCtx, true},
        {"Z(3,1,3,-2)->Exp(-3,2)", fam::zygmund(3, 1, 3, -2), fam::exp_type(-3, 2), kCtx, false},
        {"L1->Z(2,0,1.5,-2)", fam::l1(), fam::zygmund(2, 0, 1.5, -2), kCtx, true},
        {"L1->Z(2,0,1.5,0)", fam::l1(), fam::zygmund(2, 0, 1.5, 0), kCtx, false},
        {"L1->Z(2,0,1.2,0)", fam::l1(), fam::zygmund(2, 0, 1.2, 0), kCtx, true},
        {"n2:Lp1.5->Lp6", fam::power(1.5), fam::power(6), c2, true},
        {"n2:Lp1.5->Lp5", fam::power(1.5), fam::power(5), c2, false},
        {"n1:Lp1.2->Lp3", fam::power(1.2), fam::power(3), c1, true},
    };
}

void criterion_agreement(Check& c) {
    int agree = 0;
    int expected = 0;
    for (const Pair& p : criterion_battery()) {
        const bool iii = criterion_iii(p.a, p.b, p.ctx).holds;
        const bool iv = criterion_iv(p.a, p.b, p.ctx).holds;
        if (iii == iv) ++agree;
        else c.require(false, p.name);
        if (iii == p.expected) ++expected;
    }
    c.require(agree == 20, "agreement");
    c.note << "agreement " << agree << "/20, closed-form verdicts " << expected << "/20";
}

void optimality_minimality(Check& c) {
    const YoungFn a = fam::power(2);
    const TargetResult t = optimal_target(a, kCtx);
    c.require(t.optimal.has_value(), "optimal target exists");
    if (!t.optimal) return;
    c.require(bounded(a, *t.optimal, kCtx).holds, "A_gamma passes bounded");
    int admitted = 0;
    for (const YoungFn& b : {fam::power(6), fam::power(6, 0.25), fam::zygmund(6, -1, 6, -1), fam::zygmund(6, 0, 6, -3),
                             fam::power(5), fam::power(7), fam::zygmund(6, 1, 6, 0), fam::linf()}) {
        if (!bounded(a, b, kCtx).holds) continue;
        ++admitted;
        c.require(dominates(*t.optimal, b).holds, "A_gamma dominates " + b.label);
    }
    c.note << admitted << " of 8 fixtures admitted, all dominated by A_gamma";
}

void non_existence(Check& c) {
    const YoungFn a = fam::zygmund(1, 0, 1, 0);
    const TargetResult t = optimal_target(a, kCtx);
    c.require(t.kind == TargetResult::Kind::NoOptimalExists, "NoOptimalExists");
    const YoungFn b = fam::zygmund(1.5, -2, 1.5, -2);
    c.require(criterion_iii(a, b, kCtx).holds, "B admitted");
    const Witness w = witness_improvement(b, witness_majorant(a, b, kCtx), kCtx);
    c.require(!has_flag(w.flags, "witness-unconstructible"), "witness constructed");
    c.require(w.bound_verified, "modular bound verified");
    c.require(dominates(w.b1, b).holds, "B1 dominates B");
    c.require(essentially_dominates(w.b1, b).holds, "B1 essentially dominates B");
    c.require(criterion_iii(a, w.b1, kCtx).holds, "B1 passes criterion iii");
    c.note << "kind " << kind_name(t.kind) << ", " << w.log_t_k.size() << " rungs";
}

void reiteration(Check& c) {
    const RangeReiteration p3 = reiterate_range(fam::power(3), kCtx);
    c.require(p3.roundtrip_equivalent, "Lp(3) round trip");
    const RangeReiteration crit = reiterate_range(fam::zygmund(2, 0, 1.5, 0), kCtx);
    c.require(!crit.roundtrip_equivalent, "critical round trip fails");
    double worst = 0;
    for (const YoungFn& a : {fam::power(2), fam::power(1.2), fam::zygmund(2, 0, 4, 0), fam::zygmund(1.5, 0, 3.5, 0),
                             fam::zygmund(1.5, 1, 4, -1)}) {
        const DomainReiteration r = reiterate_domain(a, kCtx, {}, true);
        worst = std::max(worst, r.index_relation_error);
        c.require(r.index_relation_error < 0.02, "index relation " + a.label);
    }
    c.note << "worst index relation error " << num(worst);
}

void boyd(Check& c) {
    double worst = 0;
    for (double p : {1.2, 2.0, 5.0}) {
        const BoydEstimate b = boyd_indices(fam::power(p), true);
        const double e = std::max(std::abs(b.i_lower / p - 1), std::abs(b.I_upper / p - 1));
        worst = std::max(worst, e);
        c.require(e <= 0.01, "power " + num(p));
    }
    double worst_log = 0;
    for (const auto& [p, alpha] : std::vector<std::pair<double, double>>{{1.2, -1}, {2, -1}, {2, 1}, {5, -1}, {5, 1}}) {
        const BoydEstimate plain = boyd_indices(fam::power(p), true);
        {
            const BoydEstimate z = boyd_indices(fam::zygmund(p, alpha, p, alpha), true);
            const double e = std::max(std::abs(z.i_lower / plain.i_lower - 1), std::abs(z.I_upper / plain.I_upper - 1));
            worst_log = std::max(worst_log, e);
            c.require(e <= 0.02, "Zygmund " + num(p) + "," + num(alpha));
        }
    }
    c.note << "power error " << num(worst) << ", log-factor shift " << num(worst_log);
}

void oracle_consistency(Check& c) {
    const GammaContext c2(2, 1.0);
    const std::vector<Pair> pairs = {
        {"Lp2->Lp6", fam::power(2), fam::power(6), kCtx, true},
        {"Lp1.5->Lp3", fam::power(1.5), fam::power(3), kCtx, true},
        {"Lp3->Linf", fam::power(3), fam::linf(), kCtx, true},
        {"n2:L4/3->L4", fam::power(4.0 / 3), fam::power(4), c2, true},
        {"Lp2->Z(6,0,6,-1)", fam::power(2), fam::zygmund(6, 0, 6, -1), kCtx, true},
        {"Z(2,1,2,1)->Z(6,3,6,3)", fam::zygmund(2, 1, 2, 1), fam::zygmund(6, 3, 6, 3), kCtx, true},
        {"Lp2->Linf", fam::power(2), fam::linf(), kCtx, false},
        {"Lp2->Lp3", fam::power(2), fam::power(3), kCtx, false},
        {"Lp1.5->Lp6", fam::power(1.5), fam::power(6), kCtx, false},
        {"n2:L4/3->L2", fam::power(4.0 / 3), fam::power(2), c2, false},
        {"L1->L1", fam::l1(), fam::l1(), kCtx, false},
        {"L1->Lp2", fam::l1(), fam::power(2), kCtx, false},
    };
    int agree = 0;
    for (const Pair& p : pairs) {
        const Verdict v = bounded(p.a, p.b, p.ctx);
        const ProbeReport r = norm_probe(p.a, p.b, p.ctx, default_probe_family(), default_probe_scales());
        const bool ok = v.holds == p.expected &&
                        (v.holds ? r.trend == ProbeTrend::Bounded : r.trend == ProbeTrend::Diverging);
        if (ok) ++agree;
        else c.require(false, p.name);
    }

    std::mt19937 rng(20240601);
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_int_distribution<int> pos(0, 63);
    std::uniform_real_distribution<double> height(0.1, 2.0);
    double lo = kInf;
    double hi = 0;
    for (int f = 0; f < 10; ++f) {
        ValueGrid g(64);
        const int k = count(rng);
        for (int r = 0; r < k; ++r) {
            int i0 = pos(rng), i1 = pos(rng), j0 = pos(rng), j1 = pos(rng);
            if (i0 > i1) std::swap(i0, i1);
            if (j0 > j1) std::swap(j0, j1);
            const double v = height(rng);
            for (int i = i0; i <= i1; ++i)
                for (int j = j0; j <= j1; ++j) g.at(i, j) += v;
        }
        const double c1 = rearrangement_bound_check(g, c2).c1;
        c.require(std::isfinite(c1) && c1 > 0, "finite c1");
        lo = std::min(lo, c1);
        hi = std::max(hi, c1);
    }
    c.require(hi / lo <= 4, "c1 stability");

    const YoungFn a = fam::power(4.0 / 3);
    const YoungFn b = fam::power(4);
    const Verdict v = bounded(a, b, c2);
    const ValueGrid unit(64, 1.0);
    const bool large = v.holds && modular_probe(a, b, c2, unit, 4 * v.constant);
    const bool tiny = modular_probe(a, b, c2, unit, 1e-6);
    c.require(large && !tiny, "modular probe discrimination");
    c.note << "probe agreement " << agree << "/12, c1 in [" << num(lo) << ", " << num(hi) << "], modular "
           << (large ? "holds" : "fails") << " at 4C / " << (tiny ? "holds" : "fails") << " at 1e-6";
}

void young_calculus(Check& c) {
    const std::vector<YoungFn> fixtures = {fam::power(2),
                                           fam::power(3),
                                           fam::zygmund(2, 1, 2, 1),
                                           fam::zygmund(1.5, -2, 1.5, 0),
                                           fam::zygmund(1, -1, 3, 2),
                                           fam::exp_type(-1, 1),
                                           fam::pow_modifier(2, 1, 2, 1)};
    double worst_inv = 0;
    for (const YoungFn& a : fixtures) {
        const YoungFn conj = conjugate(a);
        const Relation r = equivalent(conjugate(conj), a);
        worst_inv = std::max({worst_inv, r.constant, r.constant_back});
        c.require(r.holds && r.constant < 1.01 && r.constant_back < 1.01, "involution " + a.label);
        bool bounds = true;
        for (double u : Config{}.log_grid()) {
            const double t = std::exp(u);
            const double p = inverse(a, t) * inverse(conj, t);
            bounds = bounds && p >= t * (1 - 1e-6) && p <= 2 * t * (1 + 1e-6);
        }
        c.require(bounds, "product bounds " + a.label);
        bool norms = true;
        for (double r : {1e-6, 1e-2, 1.0, 1e2, 1e6}) {
            const double expect = 1.0 / inverse(a, 1.0 / r);
            norms = norms && std::abs(luxemburg_norm(a, indicator(r)).value / expect - 1) < 1e-4;
        }
        c.require(norms, "indicator norms " + a.label);
    }
    c.note << fixtures.size() << " fixture families, worst involution constant " << num(worst_inv);
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
        {"Zygmund target table", zygmund_target_table},
        {"exponential borderline", exponential_borderline},
        {"Zygmund domain table", zygmund_domain_table},
        {"endpoint corollary", endpoint_corollary},
        {"criterion agreement", criterion_agreement},
        {"optimality minimality", optimality_minimality},
        {"non-existence branch", non_existence},
        {"reiteration", reiteration},
        {"Boyd indices", boyd},
        {"oracle consistency", oracle_consistency},
        {"Young-function calculus", young_calculus},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.note << " [exception: " << e.what() << "]";
        }
        if (!c.ok) ++failed;
        std::printf("%s %zu %s: %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, c.note.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
