#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlicz/reduction.hpp"

namespace orlicz {

/// Optimal Orlicz target for a given domain.
struct TargetResult {
    enum class Kind { Optimal, NoOptimalExists, NoTargetExists };
    Kind kind = Kind::NoTargetExists;
    std::optional<YoungFn> optimal;
    double index_value = std::nan("");
    double gate = std::nan("");
    std::vector<std::string> evidence;
};

/// Optimal Orlicz domain for a given target.
struct DomainResult {
    enum class Kind { Optimal, NoDomainExists };
    Kind kind = Kind::NoDomainExists;
    std::optional<YoungFn> optimal;
    bool simplified = false;
    std::vector<std::string> evidence;
};

[[nodiscard]] const char* kind_name(TargetResult::Kind k);
[[nodiscard]] const char* kind_name(DomainResult::Kind k);

/// Symbolic exponents are used when available unless force_numeric is set;
/// numeric estimates straddling the gate throw "indeterminate-index".
[[nodiscard]] TargetResult optimal_target(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {},
                                          bool force_numeric = false);
[[nodiscard]] DomainResult optimal_domain(const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});

/// B -> B_gamma -> (B_gamma)_gamma round trip.
struct RangeReiteration {
    YoungFn domain;
    YoungFn roundtrip;
    bool target_optimal = false;
    bool roundtrip_equivalent = false;
    Relation relation;
    std::vector<std::string> flags;
};
[[nodiscard]] RangeReiteration reiterate_range(const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});

/// A -> A_sup with the index relation 1/i_{(A_sup)_gamma} + gamma/n = 1/i_{A_sup}.
struct DomainReiteration {
    YoungFn improved;
    bool improvement_strict = false;
    bool target_optimal = false;
    bool transform_preserved = false;
    double index_sup = std::nan("");
    double index_sup_gamma = std::nan("");
    /// relative deviation of index_sup_gamma from the value predicted by index_sup
    double index_relation_error = std::nan("");
    std::vector<std::string> flags;
};
[[nodiscard]] DomainReiteration reiterate_domain(const YoungFn& a, const GammaContext& ctx, const Config& cfg = {},
                                                 bool force_numeric = false);

/// Essential enlargement B_1 of B near zero built from a majorant D.
struct Witness {
    YoungFn b1;
    /// log t_k and log tau_k of the rungs, deepest last
    std::vector<double> log_t_k;
    std::vector<double> log_tau_k;
    /// log of B(tau_k)/tau_k * t_k / B(k t_k)
    std::vector<double> log_ratio_k;
    /// least C with int_0^t B(s) s^{-q*-1} ds <= D(C t) t^{-q*} on the grid below 1
    double constant = kInf;
    bool bound_verified = false;
    std::vector<std::string> flags;
};

/// Deepest |log t| explored by the witness construction.
inline constexpr double kWitnessDepth = 1e8;

/// D for the witness: A_gamma when A_gamma(t) t^{-q*} -> 0 at zero, otherwise a
/// majorant with slowly vanishing ratio built from B alone.
[[nodiscard]] YoungFn witness_majorant(const YoungFn& a, const YoungFn& b, const GammaContext& ctx,
                                       const Config& cfg = {});
[[nodiscard]] YoungFn bounded_case_majorant(const YoungFn& b, const GammaContext& ctx, const Config& cfg = {});
[[nodiscard]] Witness witness_improvement(const YoungFn& b, const YoungFn& d, const GammaContext& ctx,
                                          const Config& cfg = {});

}  // namespace orlicz
