#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/young.hpp"

namespace orlicz {

/// Parse failure; offset is the byte position in the source text.
struct SpecError : OrliczError {
    std::size_t offset = 0;
    SpecError(std::string code, std::size_t off, const std::string& what)
        : OrliczError(std::move(code), what + " at byte " + std::to_string(off)), offset(off) {}
};

/// A parsed space description such as "Zygmund(2,1,2,1) @inf t^2*l(t)^-1".
struct SpaceSpec {
    std::string source;
    std::string name;
    /// numeric parameters; for PowModifier the two exponents p0, pinf
    std::vector<double> params;
    /// PowModifier factors multiplying t^p0 and t^pinf
    std::vector<AsymPiece> modifiers;
    std::optional<AsymPiece> at_zero;
    std::optional<AsymPiece> at_infinity;
    std::vector<std::string> diagnostics;

    [[nodiscard]] bool same_space(const SpaceSpec& o) const {
        return name == o.name && params == o.params && modifiers == o.modifiers && at_zero == o.at_zero &&
               at_infinity == o.at_infinity;
    }
};

/// spec := name ['(' params ')'] ['@0' piece] ['@inf' piece]
/// piece := factor ('*' factor)*, factor := R | 0 | inf | t^R | l(t)^R | ll(t)^R | exp([S] R [*] (sqrtlog | t^R | log^R))
[[nodiscard]] SpaceSpec parse_spec(const std::string& text);
[[nodiscard]] std::string render(const SpaceSpec& spec);
[[nodiscard]] std::string render_piece(const AsymPiece& piece);
[[nodiscard]] AsymptoticFamily family_of(const SpaceSpec& spec);
[[nodiscard]] YoungFn to_young(const SpaceSpec& spec, const Config& cfg = {});
/// Shortest text that reads back to the same double.
[[nodiscard]] std::string format_real(double x);

}  // namespace orlicz
