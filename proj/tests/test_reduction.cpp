#include <doctest.h>

#include <string>
#include <vector>

#include "orlicz/reduction.hpp"

using namespace orlicz;
namespace fam = orlicz::families;

namespace {

bool has_flag(const Verdict& v, const std::string& f) {
    for (const auto& x : v.flags)
        if (x == f) return true;
    return false;
}

void check_invariants(const Verdict& v, const Config& cfg = {}) {
    if (v.holds) CHECK(v.constant < kInf);
    CHECK(v.worst_t >= cfg.t_min);
    CHECK(v.worst_t <= cfg.t_max);
}

struct Case {
    std::string name;
    YoungFn a;
    YoungFn b;
    GammaContext ctx;
    bool expected;
};

std::vector<Case> battery() {
    const GammaContext c31(3, 1.0);
    const GammaContext c21(2, 1.0);
    const GammaContext c105(1, 0.5);
    return {
        {"Lp2->Lp6", fam::power(2), fam::power(6), c31, true},
        {"Lp2->Lp5", fam::power(2), fam::power(5), c31, false},
        {"Lp2->Lp7", fam::power(2), fam::power(7), c31, false},
        {"Lp1.5->Lp3", fam::power(1.5), fam::power(3), c31, true},
        {"Lp1.5->Z(3,0,3,0)", fam::power(1.5), fam::zygmund(3, 0, 3, 0), c31, true},
        {"L1->Lp2", fam::l1(), fam::power(2), c31, false},
        {"Lp3->Linf", fam::power(3), fam::linf(), c31, true},
        {"Lp2.5->Linf", fam::power(2.5), fam::linf(), c31, false},
        {"Lp4->Linf", fam::power(4), fam::linf(), c31, false},
        {"Z(2,1,2,1)->Z(6,3,6,3)", fam::zygmund(2, 1, 2, 1), fam::zygmund(6, 3, 6, 3), c31, true},
        {"Z(2,1,2,1)->Lp6", fam::zygmund(2, 1, 2, 1), fam::power(6), c31, true},
        {"Lp2->Z(6,3,6,3)", fam::power(2), fam::zygmund(6, 3, 6, 3), c31, false},
        {"Z(3,1,3,-2)->Exp(-3,1.5)", fam::zygmund(3, 1, 3, -2), fam::exp_type(-3, 1.5), c31, true},
        {"Z(3,1,3,-2)->Exp(-3,2)", fam::zygmund(3, 1, 3, -2), fam::exp_type(-3, 2), c31, false},
        {"L1->Z(2,0,1.5,-2)", fam::l1(), fam::zygmund(2, 0, 1.5, -2), c31, true},
        {"L1->Z(2,0,1.5,0)", fam::l1(), fam::zygmund(2, 0, 1.5, 0), c31, false},
        {"L1->Z(2,0,1.2,0)", fam::l1(), fam::zygmund(2, 0, 1.2, 0), c31, true},
        {"n2:Lp1.5->Lp6", fam::power(1.5), fam::power(6), c21, true},
        {"n2:Lp1.5->Lp5", fam::power(1.5), fam::power(5), c21, false},
        {"n1:Lp1.2->Lp3", fam::power(1.2), fam::power(3), c105, true},
    };
}

}  // namespace

TEST_CASE("criterion iii examples") {
    const GammaContext ctx(3, 1.0);
    SUBCASE("A=t, B=t^1.4 diverges at zero") {
        const Verdict v = criterion_iii(fam::l1(), fam::power(1.4), ctx);
        CHECK_FALSE(v.holds);
        CHECK(has_flag(v, "integral-divergent"));
        check_invariants(v);
    }
    SUBCASE("A=t, B=t^1.4 near infinity, t^2 near zero holds") {
        const Verdict v = criterion_iii(fam::l1(), fam::zygmund(2, 0, 1.4, 0), ctx);
        CHECK(v.holds);
        CHECK(v.criterion_used == Criterion::Iii);
        check_invariants(v);
    }
    SUBCASE("A=t, B=A_gamma fails by log growth") {
        const Verdict v = criterion_iii(fam::l1(), a_gamma(fam::l1(), ctx), ctx);
        CHECK_FALSE(v.holds);
        check_invariants(v);
    }
    SUBCASE("A=t^3, B=Linf holds") {
        const Verdict v = criterion_iii(fam::power(3), fam::linf(), ctx);
        CHECK(v.holds);
        CHECK(v.constant <= 16);
        check_invariants(v);
    }
    SUBCASE("acond violation is a verdict") {
        const Verdict v = criterion_iii(fam::power(4), fam::power(6), ctx);
        CHECK_FALSE(v.holds);
        CHECK(has_flag(v, "acond-violated"));
    }
}

TEST_CASE("criterion iv examples") {
    const GammaContext ctx(3, 1.0);
    SUBCASE("Linf with A=t^3 holds") {
        const Verdict v = criterion_iv(fam::power(3), fam::linf(), ctx);
        CHECK(v.holds);
        CHECK(v.criterion_used == Criterion::Iv);
        check_invariants(v);
    }
    SUBCASE("B=t^2, A=t fails") {
        const Verdict v = criterion_iv(fam::l1(), fam::power(2), ctx);
        CHECK_FALSE(v.holds);
        check_invariants(v);
    }
    SUBCASE("bconv violation is a verdict") {
        const Verdict v = criterion_iv(fam::l1(), fam::power(1.4), ctx);
        CHECK_FALSE(v.holds);
        CHECK(has_flag(v, "bconv-violated"));
    }
}

TEST_CASE("criteria agree on the battery") {
    for (const Case& c : battery()) {
        CAPTURE(c.name);
        const Verdict iii = criterion_iii(c.a, c.b, c.ctx);
        const Verdict iv = criterion_iv(c.a, c.b, c.ctx);
        CHECK(iii.holds == c.expected);
        CHECK(iv.holds == c.expected);
        const Verdict v = bounded(c.a, c.b, c.ctx);
        CHECK(v.holds == c.expected);
        CHECK_FALSE(has_flag(v, "criterion-disagreement"));
        check_invariants(iii);
        check_invariants(iv);
        check_invariants(v);
    }
}

TEST_CASE("bounded examples") {
    const GammaContext ctx(3, 1.0);
    CHECK_FALSE(bounded(fam::l1(), fam::l1(), ctx).holds);
    CHECK(bounded(fam::power(3), fam::linf(), ctx).holds);
    CHECK_FALSE(bounded(fam::power(2.99), fam::linf(), ctx).holds);
    const double p = 1.2;
    const double alpha = 0.5;
    const double q = 3 * p / (3 - p);
    const double beta = 3 * alpha / (3 - p);
    CHECK(bounded(fam::zygmund(p, alpha, p, alpha), fam::zygmund(q, beta, q, beta), ctx).holds);
}

TEST_CASE("monotonicity") {
    const GammaContext ctx(3, 1.0);
    const YoungFn a = fam::power(2);
    const YoungFn b = fam::power(6);
    REQUIRE(bounded(a, b, ctx).holds);
    const std::vector<YoungFn> smaller_b{fam::power(6, 0.5), fam::zygmund(6, -1, 6, -1), fam::zygmund(6, 0, 6, -2)};
    for (const YoungFn& bb : smaller_b) {
        REQUIRE(dominates(b, bb).holds);
        CHECK(bounded(a, bb, ctx).holds);
    }
    const std::vector<YoungFn> larger_a{fam::power(2, 4.0), fam::zygmund(2, 1, 2, 1), fam::zygmund(2, 2, 2, 0)};
    for (const YoungFn& aa : larger_a) {
        REQUIRE(dominates(aa, a).holds);
        CHECK(bounded(aa, b, ctx).holds);
    }
}

TEST_CASE("endpoint Linf target") {
    const GammaContext ctx(3, 1.0);
    const Verdict v = endpoint_linf_target(fam::power(3), ctx);
    CHECK(v.holds);
    CHECK(v.criterion_used == Criterion::EndpointI);
    CHECK(v.constant == doctest::Approx(1.0).epsilon(1e-6));
    check_invariants(v);
    CHECK_FALSE(endpoint_linf_target(fam::zygmund(3, 0, 3, -1), ctx).holds);
    CHECK(endpoint_linf_target(fam::exp_type(-1, 1), ctx).holds == false);
    CHECK(endpoint_linf_target(fam::zygmund(3, 0, 3, 0), ctx).holds);
    CHECK_FALSE(endpoint_linf_target(fam::power(2.5), ctx).holds);
    CHECK_FALSE(endpoint_linf_target(fam::linf(), ctx).holds);
    for (const YoungFn& a : {fam::power(3), fam::power(2.5), fam::power(3.5), fam::zygmund(3, 0, 3, -1),
                             fam::zygmund(3, -1, 4, 0), fam::zygmund(3, 1, 3, -2)}) {
        CAPTURE(a.label);
        CHECK(endpoint_linf_target(a, ctx).holds == bounded(a, fam::linf(), ctx).holds);
    }
}

TEST_CASE("endpoint L1 domain") {
    const GammaContext ctx(3, 1.0);
    const Verdict v = endpoint_l1_domain(fam::zygmund(2, 0, 1.2, 0), ctx);
    CHECK(v.holds);
    CHECK(v.criterion_used == Criterion::EndpointIi);
    check_invariants(v);
    CHECK_FALSE(endpoint_l1_domain(fam::zygmund(2, 0, 1.5, 0), ctx).holds);
    CHECK(endpoint_l1_domain(fam::zygmund(2, 0, 1.5, -2), ctx).holds);
    CHECK_FALSE(endpoint_l1_domain(fam::power(1.4), ctx).holds);
    CHECK_FALSE(endpoint_l1_domain(fam::linf(), ctx).holds);
    for (const YoungFn& b : {fam::zygmund(2, 0, 1.2, 0), fam::zygmund(2, 0, 1.5, 0), fam::zygmund(2, 0, 1.5, -2),
                             fam::power(1.4), fam::power(2), fam::zygmund(1.6, 0, 1, 0)}) {
        CAPTURE(b.label);
        CHECK(endpoint_l1_domain(b, ctx).holds == bounded(fam::l1(), b, ctx).holds);
    }
}
