#include "doctest.h"

#include "orlicz/boyd.hpp"

using namespace orlicz;
using doctest::Approx;

namespace {

// direct sup over a dense log grid of s, 96 points per decade
double dense_dilation(const YoungFn& a, double t) {
    double best = 0.0;
    for (double w : log_range(std::log(1e-40), std::log(1e40), 96)) {
        const double s = std::exp(w);
        best = std::max(best, inverse(a, s * t) / inverse(a, s));
    }
    return best;
}

std::vector<YoungFn> fixtures() {
    return {families::power(1.2),          families::power(3),
            families::zygmund(2, 1, 2, 1), families::zygmund(1.5, -2, 1.5, 0),
            families::zygmund(1, -1, 3, 2), families::exp_type(-1, 1),
            families::pow_modifier(2, 1, 2, 1), families::linf(), families::l1()};
}

}  // namespace

TEST_CASE("dilation of a power function") {
    for (double p : {1.0, 2.0, 5.0}) {
        const YoungFn a = families::power(p);
        for (double t : {1e-6, 0.5, 3.0, 1e8}) CHECK(dilation(a, t) == Approx(std::pow(t, 1 / p)).epsilon(1e-9));
    }
}

TEST_CASE("identity dilation") {
    for (const auto& a : fixtures()) CHECK(dilation(a, 1.0) == 1.0);
}

TEST_CASE("dilation of a Zygmund function matches a dense sup") {
    const YoungFn z = families::zygmund(2, 1, 2, 1);
    const double h = dilation(z, 1e4);
    CHECK(h == Approx(dense_dilation(z, 1e4)).epsilon(1e-2));
    CHECK(h >= 1e2);
    CHECK(h <= 1e2 * std::sqrt(1 + std::log(1e4)));
}

TEST_CASE("dilation is nondecreasing and submultiplicative") {
    for (const auto& a : {families::zygmund(2, 1, 2, 1), families::pow_modifier(2, 1, 2, 1),
                          families::zygmund(1, -1, 3, 2)}) {
        const std::vector<double> ts = {1e-4, 1e-2, 0.5, 1.0, 3.0, 1e2, 1e4};
        double prev = 0.0;
        for (double t : ts) {
            const double h = dilation(a, t);
            CHECK(h >= prev * (1 - 1e-9));
            prev = h;
        }
        for (double s : ts)
            for (double t : ts) CHECK(dilation(a, s * t) <= dilation(a, s) * dilation(a, t) * (1 + 1e-6));
    }
}

TEST_CASE("closed-form indices") {
    auto b = boyd_indices(families::power(3));
    CHECK(b.method == BoydEstimate::Method::SymbolicExact);
    CHECK(b.i_lower == 3.0);
    CHECK(b.I_upper == 3.0);
    b = boyd_indices(families::zygmund(2, 1, 2, 1));
    CHECK(b.i_lower == 2.0);
    CHECK(b.I_upper == 2.0);
    b = boyd_indices(families::exp_type(-1, 1));
    CHECK(b.i_lower == kInf);
    CHECK(b.I_upper == kInf);
    b = boyd_indices(families::zygmund(1.5, 0, 4, 0));
    CHECK(b.i_lower == 1.5);
    CHECK(b.I_upper == 4.0);
}

TEST_CASE("numeric indices of powers") {
    for (double p : {1.2, 2.0, 5.0}) {
        const auto b = boyd_indices(families::power(p), true);
        CHECK(b.method == BoydEstimate::Method::NumericLimit);
        CHECK(b.i_lower == Approx(p).epsilon(1e-2));
        CHECK(b.I_upper == Approx(p).epsilon(1e-2));
        CHECK_FALSE(b.indeterminate());
    }
}

TEST_CASE("log factors do not shift numeric indices") {
    for (const auto& [p, a] : std::vector<std::pair<double, double>>{{1.2, -1}, {2, -1}, {2, 1}, {5, -1}, {5, 1}}) {
        const auto b = boyd_indices(families::zygmund(p, a, p, a), true);
        CHECK(b.i_lower == Approx(p).epsilon(2e-2));
        CHECK(b.I_upper == Approx(p).epsilon(2e-2));
    }
}

TEST_CASE("index ordering on fixtures") {
    for (const auto& a : fixtures()) {
        for (bool numeric : {false, true}) {
            const auto b = boyd_indices(a, numeric);
            CHECK(b.i_lower >= 1.0);
            CHECK(b.i_lower <= b.I_upper);
        }
    }
}

TEST_CASE("growing ladders are indeterminate") {
    const auto b = boyd_indices(families::exp_type(-1, 1), true);
    CHECK(b.indeterminate());
}
