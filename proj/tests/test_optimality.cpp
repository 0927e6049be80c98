#include <doctest.h>

#include <string>
#include <vector>

#include "orlicz/optimality.hpp"

using namespace orlicz;
namespace fam = orlicz::families;

namespace {

bool has_flag(const std::vector<std::string>& flags, const std::string& f) {
    for (const auto& x : flags)
        if (x == f) return true;
    return false;
}

bool equivalent_within(const YoungFn& a, const YoungFn& b, double c) {
    const Relation r = equivalent(a, b);
    return r.holds && r.constant <= c && r.constant_back <= c;
}

}  // namespace

TEST_CASE("optimal target") {
    const GammaContext ctx(3, 1.0);
    for (double alpha : {-1.0, 0.0, 1.0}) {
        CAPTURE(alpha);
        const TargetResult r = optimal_target(fam::zygmund(2, alpha, 2, alpha), ctx);
        REQUIRE(r.kind == TargetResult::Kind::Optimal);
        CHECK(r.index_value > r.gate);
        CHECK(r.index_value == doctest::Approx(6.0));
        REQUIRE(r.optimal.has_value());
        CHECK(equivalent_within(*r.optimal, fam::zygmund(6, 3 * alpha, 6, 3 * alpha), 16));
    }
    CHECK(optimal_target(fam::l1(), ctx).kind == TargetResult::Kind::NoOptimalExists);
    CHECK(optimal_target(fam::zygmund(1, -1, 2, 0), ctx).kind == TargetResult::Kind::NoOptimalExists);
    CHECK(optimal_target(fam::zygmund(2, 0, 1, 1), ctx).kind == TargetResult::Kind::NoOptimalExists);
    const TargetResult none = optimal_target(fam::power(4), ctx);
    CHECK(none.kind == TargetResult::Kind::NoTargetExists);
    CHECK(has_flag(none.evidence, "acond-violated"));
    CHECK_FALSE(none.optimal.has_value());
    CHECK(std::string(kind_name(none.kind)) == "NoTargetExists");
}

TEST_CASE("optimal target numeric gate") {
    const GammaContext ctx(3, 1.0);
    const TargetResult r = optimal_target(fam::power(2), ctx, {}, true);
    CHECK(r.kind == TargetResult::Kind::Optimal);
    CHECK(has_flag(r.evidence, "numeric-conservative"));
    CHECK(r.index_value == doctest::Approx(6.0).epsilon(0.01));
    try {
        (void)optimal_target(fam::l1(), ctx, {}, true);
        FAIL("expected indeterminate-index");
    } catch (const OrliczError& e) {
        CHECK(e.code == "indeterminate-index");
    }
}

TEST_CASE("optimal domain") {
    const GammaContext ctx(3, 1.0);
    const DomainResult z = optimal_domain(fam::zygmund(3, 1, 3, 1), ctx);
    REQUIRE(z.kind == DomainResult::Kind::Optimal);
    CHECK(z.simplified);
    CHECK(equivalent_within(*z.optimal, fam::zygmund(1.5, 0.5, 1.5, 0.5), 16));
    CHECK(equivalent_within(*z.optimal, b_gamma(fam::zygmund(3, 1, 3, 1), ctx), 16));

    const DomainResult none = optimal_domain(fam::l1(), ctx);
    CHECK(none.kind == DomainResult::Kind::NoDomainExists);
    CHECK_FALSE(none.optimal.has_value());

    const DomainResult inf = optimal_domain(fam::linf(), ctx);
    REQUIRE(inf.kind == DomainResult::Kind::Optimal);
    CHECK(equivalent_within(*inf.optimal, fam::power(3), 16));

    const DomainResult crit = optimal_domain(fam::zygmund(2, 0, 1.5, 0), ctx);
    REQUIRE(crit.kind == DomainResult::Kind::Optimal);
    CHECK_FALSE(crit.simplified);
    CHECK(check_bconv(fam::zygmund(2, 0, 1.5, 0), ctx));
}

TEST_CASE("range reiteration") {
    const GammaContext ctx(3, 1.0);
    const RangeReiteration p3 = reiterate_range(fam::power(3), ctx);
    CHECK(p3.target_optimal);
    CHECK(p3.roundtrip_equivalent);
    CHECK(equivalent_within(p3.domain, fam::power(1.5), 16));

    const RangeReiteration crit = reiterate_range(fam::zygmund(2, 0, 1.5, 0), ctx);
    CHECK_FALSE(crit.target_optimal);
    CHECK_FALSE(crit.roundtrip_equivalent);
    CHECK(dominates(crit.roundtrip, fam::zygmund(2, 0, 1.5, 0)).holds);
    CHECK(dominates(crit.roundtrip, fam::zygmund(2, 0, 1.5, 1)).holds);
    CHECK_FALSE(dominates(fam::zygmund(2, 0, 1.5, 0), crit.roundtrip).holds);

    const RangeReiteration inf = reiterate_range(fam::linf(), ctx);
    CHECK(inf.target_optimal);
    CHECK(inf.roundtrip_equivalent);
    for (const YoungFn& b : {fam::power(3), fam::zygmund(3, 1, 3, 1), fam::zygmund(2, 0, 1.5, 0), fam::linf(),
                             fam::zygmund(2, 0, 4, -1)}) {
        CAPTURE(b.label);
        CHECK_FALSE(has_flag(reiterate_range(b, ctx).flags, "reiteration-mismatch"));
    }
    CHECK_THROWS_AS((void)reiterate_range(fam::l1(), ctx), OrliczError);
}

TEST_CASE("domain reiteration") {
    const GammaContext ctx(3, 1.0);
    const DomainReiteration p2 = reiterate_domain(fam::power(2), ctx);
    CHECK_FALSE(p2.improvement_strict);
    CHECK(p2.target_optimal);
    CHECK(p2.transform_preserved);

    const DomainReiteration mixed = reiterate_domain(fam::zygmund(1.5, 0, 4, 0), ctx);
    CHECK(mixed.improvement_strict);
    CHECK(mixed.transform_preserved);
    CHECK(equivalent_within(mixed.improved, fam::zygmund(1.5, 0, 3, 0), 16));

    for (const YoungFn& a : {fam::power(2), fam::power(1.2), fam::zygmund(2, 0, 4, 0), fam::zygmund(1.5, 0, 3.5, 0),
                             fam::zygmund(1.5, 1, 4, -1)}) {
        CAPTURE(a.label);
        const DomainReiteration r = reiterate_domain(a, ctx, {}, true);
        CHECK(r.index_relation_error < 0.02);
        CHECK(r.transform_preserved);
    }
    const DomainReiteration l1 = reiterate_domain(fam::l1(), ctx);
    CHECK_FALSE(l1.target_optimal);
    CHECK_THROWS_AS((void)reiterate_domain(fam::power(4), ctx), OrliczError);
}

TEST_CASE("target minimality on fixtures") {
    const GammaContext ctx(3, 1.0);
    const YoungFn a = fam::power(2);
    const TargetResult t = optimal_target(a, ctx);
    REQUIRE(t.optimal.has_value());
    CHECK(bounded(a, *t.optimal, ctx).holds);
    int admitted = 0;
    for (const YoungFn& b : {fam::power(6), fam::power(6, 0.25), fam::zygmund(6, -1, 6, -1), fam::zygmund(6, 0, 6, -3),
                             fam::power(5), fam::power(7), fam::zygmund(6, 1, 6, 0), fam::linf()}) {
        CAPTURE(b.label);
        if (!bounded(a, b, ctx).holds) continue;
        ++admitted;
        CHECK(dominates(*t.optimal, b).holds);
    }
    CHECK(admitted == 4);
}

TEST_CASE("domain maximality on fixtures") {
    const GammaContext ctx(3, 1.0);
    const YoungFn b = fam::power(6);
    const DomainResult d = optimal_domain(b, ctx);
    REQUIRE(d.optimal.has_value());
    CHECK(bounded(*d.optimal, b, ctx).holds);
    int admitted = 0;
    for (const YoungFn& a : {fam::power(2), fam::power(2, 4.0), fam::zygmund(2, 1, 2, 1), fam::zygmund(2, 0, 2, 2),
                             fam::power(1.5), fam::power(2.5), fam::zygmund(2, -1, 2, 0)}) {
        CAPTURE(a.label);
        if (!bounded(a, b, ctx).holds) continue;
        ++admitted;
        CHECK(dominates(a, *d.optimal).holds);
    }
    CHECK(admitted == 4);
}

TEST_CASE("witness from a bounded-ratio target") {
    const GammaContext ctx(3, 1.0);
    const YoungFn a = fam::l1();
    const YoungFn b = fam::zygmund(1.5, -2, 1.5, -2);
    REQUIRE(criterion_iii(a, b, ctx).holds);
    const YoungFn d = witness_majorant(a, b, ctx);
    CHECK(d.label == "majorant");
    const Witness w = witness_improvement(b, d, ctx);
    CHECK_FALSE(has_flag(w.flags, "witness-unconstructible"));
    REQUIRE(w.log_t_k.size() >= 3);
    for (std::size_t k = 0; k < w.log_t_k.size(); ++k) {
        CHECK(w.log_tau_k[k] >= w.log_t_k[k] + std::log(2.0));
        if (k > 0) {
            CHECK(w.log_tau_k[k] < w.log_t_k[k - 1]);
            CHECK(w.log_ratio_k[k] > w.log_ratio_k[k - 1]);
        }
        const double k1 = static_cast<double>(k + 1);
        CHECK(w.b1.log_eval(w.log_t_k[k] + std::log(2.0)) - b.log_eval(w.log_t_k[k] + std::log(k1)) >=
              w.log_ratio_k[k] - std::log(2.0) - 1e-9);
    }
    CHECK(w.bound_verified);
    CHECK(validate(w.b1).empty());
    CHECK(dominates(w.b1, b).holds);
    CHECK(essentially_dominates(w.b1, b).holds);
    CHECK(criterion_iii(a, w.b1, ctx).holds);
    CHECK(bounded(a, w.b1, ctx).holds);
}

TEST_CASE("witness from a vanishing-ratio target") {
    const GammaContext ctx(3, 1.0);
    const YoungFn a = fam::zygmund(1, -1, 2, 0);
    const YoungFn b = fam::zygmund(1.5, -3, 6, 0);
    REQUIRE(criterion_iii(a, b, ctx).holds);
    const YoungFn d = witness_majorant(a, b, ctx);
    CHECK(d.label == "A_gamma");
    const Witness w = witness_improvement(b, d, ctx);
    CHECK_FALSE(has_flag(w.flags, "witness-unconstructible"));
    CHECK_FALSE(has_flag(w.flags, "majorant-ratio-not-vanishing"));
    CHECK(w.log_t_k.size() >= 3);
    CHECK(w.bound_verified);
    CHECK(essentially_dominates(w.b1, b).holds);
    CHECK(criterion_iii(a, w.b1, ctx).holds);
}

TEST_CASE("witness reports an unusable majorant") {
    const GammaContext ctx(3, 1.0);
    const YoungFn b = fam::zygmund(1.5, -2, 1.5, -2);
    const Witness w = witness_improvement(b, a_gamma(fam::l1(), ctx), ctx);
    CHECK(has_flag(w.flags, "majorant-ratio-not-vanishing"));
    CHECK(has_flag(w.flags, "witness-unconstructible"));
}
