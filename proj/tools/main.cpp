#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "xwigner/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Phase-space weak values: cross-Wigner transforms, complex "
                 "quasi-distributions, two-state evolution and reconstruction"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"wigner", "compute a (cross-)Wigner field and write it as CSV"},
        {"weakvalue", "weak value by quadrature and by direct operator application"},
        {"analytic", "closed-form coherent-state quantities (any dimension, log-space)"},
        {"evolve", "two-state scenario: weak values at the requested sample times"},
        {"reconstruct", "rebuild a state from its cross-Wigner field"},
        {"compass", "multi-coherent superposition and its interference terms"},
        {"selftest", "run the cross-module invariant suite"},
    };

    xwigner::cli::CliOptions opt;
    std::uint64_t seed_value = 0;
    for (const auto& [name, description] : subcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", opt.config_path, "JSON scenario configuration");
        sub->add_option("--out", opt.out_dir, "output directory (default: current)");
        sub->add_option("--seed", seed_value, "seed for randomized suites");
        sub->add_option("--stride", opt.stride,
                        "phase-space quadrature stride >= 1 (coarser = faster, less accurate)");
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = app.get_subcommands().front();
    if (chosen->count("--seed") > 0) opt.seed = seed_value;
    return xwigner::cli::run_subcommand(chosen->get_name(), opt);
}
