// Batch experiment runner: computes heat content curves, torsion, rho fields,
// eigenvalues and inequality verification reports from a JSON config.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "heatbounds/errors.hpp"
#include "heatbounds/experiment.hpp"

namespace {

using heatbounds::runner::ExperimentConfig;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> refine;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON experiment config")->required();
    cmd->add_option("--out", flags.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", [&flags](const CLI::results_t& res) {
        flags.seed = std::stoull(res[0]);
        return true;
    }, "RNG seed (overrides config)");
    cmd->add_option("--refine", [&flags](const CLI::results_t& res) {
        flags.refine = std::stoi(res[0]);
        return true;
    }, "grid refinement levels (overrides config)");
}

ExperimentConfig load_config(const CommonFlags& flags) {
    ExperimentConfig config = ExperimentConfig::from_file(flags.config_path);
    if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
    if (flags.seed) config.seed = *flags.seed;
    if (flags.refine) config.refine = *flags.refine;
    config.validate();
    return config;
}

void print_json_error(const std::string& type, const std::string& message) {
    nlohmann::json err{{"error", message}, {"type", type}};
    std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heatbounds: heat content, torsional rigidity and spectral bound verification"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        std::function<std::vector<std::string>(const ExperimentConfig&)> run;
    };
    const Sub subs[] = {
        {"heat", "heat content curve Q(t) with CSV + SVG output", heatbounds::runner::run_heat},
        {"torsion", "torsion function, rigidity and sup norm", heatbounds::runner::run_torsion},
        {"rho-field", "mean distance function on the grid nodes", heatbounds::runner::run_rho_field},
        {"verify", "evaluate the configured inequality checks", heatbounds::runner::run_verify},
        {"horn", "horn decay-exponent study over an alpha list", heatbounds::runner::run_horn},
        {"eigen", "principal Dirichlet eigenvalue (and heat trace when small)",
         heatbounds::runner::run_eigen},
    };

    CommonFlags flags;
    const Sub* selected = nullptr;
    for (const auto& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        add_common_flags(cmd, flags);
        cmd->callback([&selected, &sub]() { selected = &sub; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const ExperimentConfig config = load_config(flags);
        const auto outputs = selected->run(config);
        for (const auto& f : outputs) {
            std::cout << config.out_dir << "/" << f << "\n";
        }
        return 0;
    } catch (const heatbounds::NumericalError& e) {
        print_json_error("numerical", e.what());
        return 3;
    } catch (const heatbounds::CapacityError& e) {
        print_json_error("capacity", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        print_json_error("config", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        print_json_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_json_error("internal", e.what());
        return 3;
    }
}
