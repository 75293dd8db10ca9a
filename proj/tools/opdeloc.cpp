// Experiment driver: figure data as CSV/JSON plus the validation suites.

#include <cstdint>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace opdeloc::cli;

int main(int argc, char** argv) {
    CLI::App app{"Operator delocalization in graph SYK2 and quantum-battery charging power"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    int realizations = 0;
    int threads = -1;
    app.add_option("--config", config_path, "Sectioned key-value config file")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed, "Master seed");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory");
    auto* real_opt = app.add_option("--realizations", realizations, "Disorder realizations per ensemble")
                         ->check(CLI::PositiveNumber);
    auto* thread_opt = app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)")
                           ->check(CLI::NonNegativeNumber);

    auto* ck = app.add_subcommand("ck-curves", "C_K(t) ensembles per model and operator size");
    auto* ratio = app.add_subcommand("ratio-scaling", "Delocalization ratio R(L) per model");
    auto* battery = app.add_subcommand("battery", "P_max(L) for x and z batteries, perturbative overlay");
    auto* validate = app.add_subcommand("validate", "Closed-form and dense-oracle checks");
    std::string suite;
    validate->add_option("suite", suite, "star or oracle")->required()->check(CLI::IsMember({"star", "oracle"}));

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = config_path.empty() ? Config() : Config::load(config_path);
        if (*seed_opt) cfg.set("general", "seed", std::to_string(seed));
        if (*out_opt) cfg.set("general", "out", out_dir);
        if (*real_opt) cfg.set("general", "realizations", std::to_string(realizations));
        if (*thread_opt) cfg.set("general", "threads", std::to_string(threads));

        RunContext ctx{cfg, cfg.text("general", "out"), std::cerr};
        if (*ck) return cmd_ck_curves(ctx);
        if (*ratio) return cmd_ratio_scaling(ctx);
        if (*battery) return cmd_battery(ctx);
        RunContext report{cfg, cfg.text("general", "out"), std::cout};
        return suite == "star" ? cmd_validate_star(report) : cmd_validate_oracle(report);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
