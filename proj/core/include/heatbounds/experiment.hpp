#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "heatbounds/bounds.hpp"
#include "heatbounds/domain.hpp"
#include "heatbounds/heat.hpp"

namespace heatbounds::runner {

struct TimeGridSpec {
    double t_min = 1e-3;
    double t_max = 1.0;
    int points = 20;

    std::vector<double> values() const;  // geometric, endpoints included
    void validate() const;
};

/// One batch experiment: domain, resolution ladder, time grid, bound ids.
/// Parsed from a strict JSON config; unknown keys are errors.
struct ExperimentConfig {
    std::optional<geo::Domain> domain;
    double h = 1.0 / 64.0;
    int refine = 2;  // grid levels h, h/2, ..., h/2^(refine-1); margins need >= 2
    TimeGridSpec t_grid;
    std::vector<bounds::BoundId> bound_ids;
    std::vector<double> betas{1.0, 2.0, 4.0};
    int quadrature = 0;  // sphere quadrature size, 0 = dimension default
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    pde::TimeScheme scheme = pde::TimeScheme::implicit_euler;

    // Horn sharpness study.
    std::vector<double> alphas;
    double horn_truncation = 100.0;
    std::optional<std::array<double, 2>> fit_window;  // defaults to the t grid range
    double exponent_tolerance = 0.08;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::filesystem::path& path);
    nlohmann::json to_json() const;
    void validate() const;
};

/// Each command writes its data files plus a `<stem>.meta.json` echoing the
/// resolved config, into config.out_dir. Returns the written file names.
std::vector<std::string> run_heat(const ExperimentConfig& config);
std::vector<std::string> run_torsion(const ExperimentConfig& config);
std::vector<std::string> run_rho_field(const ExperimentConfig& config);
std::vector<std::string> run_eigen(const ExperimentConfig& config);
std::vector<std::string> run_verify(const ExperimentConfig& config);
std::vector<std::string> run_horn(const ExperimentConfig& config);

/// Bound reports for a domain at the config's resolution ladder; the engine
/// behind run_verify and the acceptance checks.
std::vector<bounds::BoundReport> evaluate_bounds(const ExperimentConfig& config);

}  // namespace heatbounds::runner
