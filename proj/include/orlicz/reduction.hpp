#pragma once

#include <string>
#include <vector>

#include "orlicz/transforms.hpp"

namespace orlicz {

enum class Criterion { Iii, Iv, EndpointI, EndpointIi };

[[nodiscard]] const char* criterion_name(Criterion c);

/// Boundedness decision with the least constant found and the tightest grid point.
struct Verdict {
    bool holds = false;
    double constant = kInf;
    Criterion criterion_used = Criterion::Iii;
    double worst_t = 0.0;
    std::vector<std::string> flags;
};

/// int_0^t B(s) s^{-q*-1} ds <= A_gamma(C t) t^{-q*}
[[nodiscard]] Verdict criterion_iii(const YoungFn& a, const YoungFn& b, const GammaContext& ctx,
                                    const Config& cfg = {});
/// B_gamma(t) <= A(C t)
[[nodiscard]] Verdict criterion_iv(const YoungFn& a, const YoungFn& b, const GammaContext& ctx,
                                   const Config& cfg = {});
/// Both criteria; a disagreement is flagged and resolved to the failing verdict.
[[nodiscard]] Verdict bounded(const YoungFn& a, const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});
/// A(t) >= C t^{n/gamma} for all t
[[nodiscard]] Verdict endpoint_linf_target(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {});
/// int_0^inf B(s) s^{-q*-1} ds < inf
[[nodiscard]] Verdict endpoint_l1_domain(const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});

}  // namespace orlicz
