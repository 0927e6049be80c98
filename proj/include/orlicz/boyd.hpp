#pragma once

#include <string>
#include <vector>

#include "orlicz/young.hpp"

namespace orlicz {

/// Lower and upper Boyd indices with the spread of the extrapolation ladder.
struct BoydEstimate {
    enum class Method { SymbolicExact, NumericLimit };
    double i_lower = std::nan("");
    double I_upper = std::nan("");
    double ci_halfwidth = 0.0;
    double spread_lower = 0.0;
    double spread_upper = 0.0;
    Method method = Method::NumericLimit;
    std::vector<double> ladder_lower;
    std::vector<double> ladder_upper;
    std::vector<std::string> flags;

    [[nodiscard]] bool indeterminate() const;
};

/// log h_A(e^tau) with h_A(t) = sup_s A^{-1}(s t) / A^{-1}(s).
[[nodiscard]] double log_dilation(const YoungFn& a, double tau);
[[nodiscard]] double dilation(const YoungFn& a, double t);

/// Closed forms for symbolic families unless force_numeric is set.
[[nodiscard]] BoydEstimate boyd_indices(const YoungFn& a, bool force_numeric = false);

/// Index value reduced by its spread, for strict threshold tests.
[[nodiscard]] double conservative_lower(const BoydEstimate& b);
[[nodiscard]] double conservative_upper(const BoydEstimate& b);

}  // namespace orlicz
