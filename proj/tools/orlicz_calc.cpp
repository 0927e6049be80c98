#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"

int main(int argc, char** argv) {
    using namespace orlicz;
    CLI::App app{"Young-function transforms for the fractional maximal operator between Orlicz spaces"};
    std::string command;
    std::vector<std::string> specs;
    int n = 3;
    double gamma = 1.0;
    cli::Options opt;
    app.add_option("command", command, "target | domain | bounded | boyd | conjugate | probe")
        ->required()
        ->check(CLI::IsMember(cli::commands()));
    app.add_option("specs", specs, "space specs such as \"Lp(2)\" or \"Zygmund(2,1,2,1)\"");
    app.add_option("--n", n, "spatial dimension")->capture_default_str();
    app.add_option("--gamma", gamma, "fractional order, 0 < gamma < n")->capture_default_str();
    app.add_option("--grid-points-per-decade", opt.cfg.points_per_decade)->capture_default_str()->check(CLI::Range(2, 400));
    app.add_option("--tmin", opt.cfg.t_min)->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--tmax", opt.cfg.t_max)->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--constant-cap", opt.cfg.c_max)->capture_default_str()->check(CLI::Range(1.0, 1e300));
    app.add_option("--format", opt.format)->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--fixtures", opt.fixtures, "JSON array of [domain, target] spec pairs");
    app.add_flag("--numeric", opt.numeric, "force numeric Boyd index estimates");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitParse;
    }
    if (!(opt.cfg.t_min < opt.cfg.t_max)) {
        std::cerr << "input error: --tmin must be below --tmax\n";
        return cli::kExitParse;
    }
    try {
        opt.ctx = GammaContext(n, gamma);
    } catch (const OrliczError& e) {
        std::cerr << "input error (" << e.code << "): " << e.what() << "\n";
        return cli::kExitParse;
    }
    const cli::Outcome o = cli::run(command, specs, opt);
    std::cout << o.out;
    std::cerr << o.err;
    return o.exit_code;
}
