#include "orlicz/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

constexpr double kCoefEps = 1e-12;

// larger key means more dominant
bool dominates_order(const ScaleTerm& a, const ScaleTerm& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.beta > b.beta;
}

}  // namespace

double AsymPiece::log_eval(double u, double shift) const {
    if (constant == Const::Zero) return -kInf;
    if (constant == Const::Infinity) return kInf;
    double v = log_coef;
    if (std::isinf(power)) {
        if (u < 0) return power > 0 ? -kInf : kInf;
        if (u > 0) return power > 0 ? kInf : -kInf;
    } else if (power != shift) {
        v += (power - shift) * u;
    }
    const double L = std::abs(u);
    if (log_pow != 0.0) v += log_pow * std::log1p(L);
    if (loglog_pow != 0.0) v += loglog_pow * std::log1p(std::log1p(L));
    for (const auto& e : exps) {
        if (e.coef == 0.0) continue;
        const double x = e.of_log ? std::pow(L, e.beta) : std::exp(e.beta * u);
        v += e.coef * x;
    }
    return v;
}

bool AsymPiece::vanishes_below_one() const {
    return constant == Const::Zero || (std::isinf(power) && power > 0);
}

bool AsymPiece::infinite_above_one() const {
    return constant == Const::Infinity || (std::isinf(power) && power > 0);
}

void Signature::add(int rank, double beta, double c) {
    if (c == 0.0) return;
    for (auto& t : terms) {
        if (t.rank == rank && t.beta == beta) {
            t.coef += c;
            return;
        }
    }
    terms.push_back({rank, beta, c});
}

void Signature::normalize() {
    terms.erase(std::remove_if(terms.begin(), terms.end(),
                               [](const ScaleTerm& t) { return std::abs(t.coef) <= kCoefEps; }),
                terms.end());
    std::sort(terms.begin(), terms.end(), dominates_order);
}

double Signature::coef(int rank, double beta) const {
    for (const auto& t : terms)
        if (t.rank == rank && t.beta == beta) return t.coef;
    return 0.0;
}

Signature signature(const AsymPiece& piece, End end) {
    Signature s;
    if (piece.constant != AsymPiece::Const::None || std::isinf(piece.power)) {
        s.exact = false;
        return s;
    }
    const double side = end == End::Infinity ? 1.0 : -1.0;
    s.add(1, 1.0, side * piece.power);
    s.add(2, 0.0, piece.log_pow);
    s.add(3, 0.0, piece.loglog_pow);
    for (const auto& e : piece.exps) {
        if (e.of_log) {
            if (e.beta > 0) s.add(1, e.beta, e.coef);
        } else {
            const double b = side * e.beta;  // exponent in x
            if (b > 0) s.add(0, b, e.coef);
        }
    }
    s.normalize();
    return s;
}

Signature dilate(const Signature& s, End end, double lambda) {
    Signature out;
    out.exact = s.exact;
    const double side = end == End::Infinity ? 1.0 : -1.0;
    for (const auto& t : s.terms) {
        if (t.rank == 0) {
            out.add(0, t.beta, t.coef * std::pow(lambda, side * t.beta));
        } else {
            if (t.rank == 1 && t.beta > 1.0 && lambda != 1.0) out.exact = false;
            out.add(t.rank, t.beta, t.coef);
        }
    }
    out.normalize();
    return out;
}

Signature difference(const Signature& a, const Signature& b) {
    Signature out;
    out.exact = a.exact && b.exact;
    for (const auto& t : a.terms) out.add(t.rank, t.beta, t.coef);
    for (const auto& t : b.terms) out.add(t.rank, t.beta, -t.coef);
    // relative cancellation
    for (auto& t : out.terms) {
        const double ref = std::max(std::abs(a.coef(t.rank, t.beta)), std::abs(b.coef(t.rank, t.beta)));
        if (std::abs(t.coef) <= 1e-12 * std::max(1.0, ref)) t.coef = 0.0;
    }
    out.normalize();
    return out;
}

int leading_sign(const Signature& s) {
    for (const auto& t : s.terms) {
        if (t.rank == 1 && t.beta <= 0) continue;
        if (t.coef > 0) return 1;
        if (t.coef < 0) return -1;
    }
    return 0;
}

bool integrable(const Signature& h) {
    for (const auto& t : h.terms) {
        if (t.rank <= 1 && !(t.rank == 1 && t.beta <= 0)) {
            if (t.coef != 0.0) return t.coef < 0;
        }
    }
    const double a = h.coef(2, 0.0);
    if (a < -1.0 - kCoefEps) return true;
    if (a > -1.0 + kCoefEps) return false;
    return h.coef(3, 0.0) < -1.0 - kCoefEps;
}

double end_exponent(const AsymPiece& piece, End end) {
    if (end == End::Zero && piece.vanishes_below_one()) return kInf;
    if (end == End::Infinity && piece.infinite_above_one()) return kInf;
    if (piece.constant != AsymPiece::Const::None) return kInf;
    const Signature s = signature(piece, end);
    const double side = end == End::Infinity ? 1.0 : -1.0;
    for (const auto& t : s.terms) {
        if (t.rank == 0 || (t.rank == 1 && t.beta > 1.0)) {
            // exponential scale: growth at infinity or decay at zero means index infinity
            if ((end == End::Infinity) == (t.coef > 0)) return kInf;
            return std::nan("");
        }
        break;
    }
    return side * s.coef(1, 1.0);
}

Trend classify(const EndModel& m, double b_tol, double c_tol) {
    if (m.infinite_up) return Trend::Up;
    if (m.infinite_down) return Trend::Down;
    const double bt = b_tol + 1e-9 * m.scale;
    const double ct = c_tol + 1e-9 * m.scale;
    if (m.b > bt) return Trend::Up;
    if (m.b < -bt) return Trend::Down;
    if (m.c > ct) return Trend::Up;
    if (m.c < -ct) return Trend::Down;
    return Trend::Flat;
}

}  // namespace orlicz
