#pragma once

#include <vector>

#include "orlicz/grid.hpp"

namespace orlicz {

/// exp(coef * t^beta), or exp(coef * |log t|^beta) when of_log is set.
struct ExpTerm {
    double coef = 0.0;
    double beta = 0.0;
    bool of_log = false;
    bool operator==(const ExpTerm&) const = default;
};

/// Product  c * t^p * l(t)^a * l(l(t))^b * prod exp(...)  with l(t) = 1 + |log t|,
/// or one of the constants 0 and infinity.
struct AsymPiece {
    enum class Const { None, Zero, Infinity };
    Const constant = Const::None;
    double log_coef = 0.0;
    double power = 0.0;
    double log_pow = 0.0;
    double loglog_pow = 0.0;
    std::vector<ExpTerm> exps;

    /// log of the piece divided by t^shift
    [[nodiscard]] double log_eval(double u, double shift = 0.0) const;
    [[nodiscard]] bool vanishes_below_one() const;
    [[nodiscard]] bool infinite_above_one() const;
    bool operator==(const AsymPiece&) const = default;
};

/// Closed-form pieces joined at t = 1.
struct AsymptoticFamily {
    AsymPiece near_zero;
    AsymPiece near_infinity;

    [[nodiscard]] double log_eval(double u, double shift = 0.0) const {
        return u <= 0 ? near_zero.log_eval(u, shift) : near_infinity.log_eval(u, shift);
    }
    bool operator==(const AsymptoticFamily&) const = default;
};

enum class End { Zero, Infinity };

/// One scale of an expansion of log A near an end, in x = t or x = 1/t and L = log x.
///   rank 0: x^beta, rank 1: L^beta, rank 2: log L, rank 3: log log L.
struct ScaleTerm {
    int rank = 0;
    double beta = 0.0;
    double coef = 0.0;
};

struct Signature {
    std::vector<ScaleTerm> terms;
    bool exact = true;

    void add(int rank, double beta, double coef);
    void normalize();
    [[nodiscard]] double coef(int rank, double beta) const;
};

[[nodiscard]] Signature signature(const AsymPiece& piece, End end);
/// Signature of t -> B(lambda t) given the signature of B; exact=false when
/// the dilation creates cross terms that are not tracked.
[[nodiscard]] Signature dilate(const Signature& s, End end, double lambda);
[[nodiscard]] Signature difference(const Signature& a, const Signature& b);
/// Sign of the dominant coefficient: +1 (log -> +inf), -1 (log -> -inf), 0 (bounded).
[[nodiscard]] int leading_sign(const Signature& s);
/// Whether the integral of exp(h(L)) dL converges as L -> infinity.
[[nodiscard]] bool integrable(const Signature& h);
/// Local power exponent of a Young function piece at an end; inf for exponential
/// or plateau behaviour.
[[nodiscard]] double end_exponent(const AsymPiece& piece, End end);

/// Dominant-order fit of f on a window adjacent to an end:
///   f(u) ~ a + b |u| + c log(1 + |u|) + (d + e log(1 + |u|)) / (1 + |u|)
struct EndModel {
    double b = 0.0;
    double c = 0.0;
    double level = 0.0;
    double scale = 0.0;
    bool infinite_up = false;
    bool infinite_down = false;
};

enum class Trend { Up, Down, Flat };

/// Fits the model over `decades` decades ending at u_end (u_end is the outermost point).
template <class F>
EndModel fit_end(const F& f, double u_end, End end, double decades = 8.0, int per_decade = 2);
[[nodiscard]] Trend classify(const EndModel& m, double b_tol = 2e-3, double c_tol = 0.1);

}  // namespace orlicz

#include "orlicz/asymptotics_impl.hpp"
