#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "levytype/levy_sampler.hpp"
#include "levytype/levy_triplet.hpp"
#include "levytype/simulate.hpp"
#include "levytype/stability_index.hpp"

namespace levysim {

using nlohmann::json;

// Malformed or invalid configuration; the message names the offending key or invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Scenario { Glued, StableLike, DiagnosticsOnly };

struct SimulationConfig {
    double horizon = 0.5;
    double dt = 1e-3;
    std::size_t paths = 10000;
    double epsilon_jump = 1e-3;
    levytype::IncrementMode increments = levytype::IncrementMode::ExactStable;
    levytype::InitialLaw x0 = levytype::PointMass{0.0};
};

struct MartingaleConfig {
    bool enabled = true;
    double weight_time = 0.25;
    double t_start = 0.25;
    double t_end = 0.5;
    double z_max = 3.0;
    // Stable-like scenarios only: also test the paths against a constant-index generator.
    std::optional<double> negative_control_alpha;
};

struct ScheduleConfig {
    bool enabled = false;
    int n_max = 10;
    double epsilon = 0.05;
    // Simulate with alpha_{n_max} instead of alpha.
    bool simulate_with_alpha_n = false;
    int table_points = 2001;
};

struct ExitConfig {
    bool enabled = false;
    double radius = 10.0;
    double t = 0.1;
};

struct DiagnosticsConfig {
    bool conditions = true;
    bool hartman_wintner = true;
    bool density_bound = true;
    double density_t = 1.0;
    int glue_n_max = 10;                      // glued family q^1..q^n for (A1)-(A4)
    std::vector<int> locality_m = {2, 5, 10};  // (B2) regions for the glued scenario
    ExitConfig exit;
    MartingaleConfig martingale;
};

struct OutputConfig {
    std::size_t csv_path_stride = 100;
    std::size_t csv_step_stride = 10;
    int histogram_bins = 60;
};

struct ExperimentConfig {
    Scenario scenario = Scenario::Glued;
    std::uint64_t seed = 1;
    levytype::LevyTriplet left;
    levytype::LevyTriplet right;
    std::optional<levytype::StabilityIndex> alpha;
    levytype::LevyTriplet symbol;  // diagnostics-only scenario
    SimulationConfig simulation;
    ScheduleConfig schedule;
    DiagnosticsConfig diagnostics;
    OutputConfig output;
};

// Parses and validates a config. Unknown keys are errors; a top-level
// "manifest" object (written by run_experiment) is accepted and ignored.
ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::string& path);

// Fully resolved config with every default spelled out; parse_config(to_json(c)) == c.
json to_json(const ExperimentConfig& c);

json triplet_to_json(const levytype::LevyTriplet& t);
levytype::LevyTriplet triplet_from_json(const json& j, const std::string& where);

const char* to_string(Scenario s);

}  // namespace levysim
