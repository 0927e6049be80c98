#pragma once

#include <string>
#include <vector>

#include "orlicz/transforms.hpp"

namespace orlicz::cli {

inline constexpr const char* kSchema = "orlicz-calc/1";

/// Settings shared by all commands.
struct Options {
    GammaContext ctx{3, 1.0};
    Config cfg;
    std::string format = "json";
    std::string fixtures;
    bool numeric = false;
};

/// Text for standard output and error plus the process exit code.
struct Outcome {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitIndeterminate = 3;

[[nodiscard]] const std::vector<std::string>& commands();
/// Runs one command on its positional spec arguments.
[[nodiscard]] Outcome run(const std::string& command, const std::vector<std::string>& specs, const Options& opt);
/// Human-readable equivalence class such as "~ t^6" or "~ t^2 near 0, t^3*l(t)^-1 near inf".
[[nodiscard]] std::string describe(const YoungFn& a);
/// Rounds to 12 significant digits.
[[nodiscard]] double round12(double x);

}  // namespace orlicz::cli
