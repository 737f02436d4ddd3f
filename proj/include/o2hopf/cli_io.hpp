#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "o2hopf/experiments.hpp"
#include "o2hopf/spectral_linear.hpp"

namespace o2hopf {

// Fully validated run description. One JSON config format; command-line
// flags override file values.
struct RunConfig {
    std::string subcommand;  // spectrum | admissible | coeffs | reduced-flow |
                             // simulate | sweep | validate

    std::vector<double> law_coeffs = {0.0, 1.0, 1.0};  // polynomial sigma
    std::optional<double> yao_c;                       // named builtin instead
    double validity_radius = 2.0;

    int k0 = 1;
    double a_c = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;

    int modes = 64;
    double dt = 0.0;     // 0 = 1e-3 * (2 pi / omega_c)
    double t_end = 0.0;  // 0 = subcommand default
    int record_stride = 0;
    int K = 0;           // 0 = max(64, 8 |k0|)
    bool dealias = true;

    double a0 = 0.05;
    double tail_fraction = 0.25;
    std::vector<double> theta_grid = {0.003, 0.006, 0.012, 0.024};

    std::string out_dir = ".";
    uint64_t seed = 12345;
    int jobs = 1;
};

// Strict parse: unknown keys are rejected, every numeric field validated.
// Throws std::invalid_argument with the offending key in the message.
RunConfig parse_config_json(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

PressureLaw make_law(const RunConfig& cfg);

// Applies "poly:c0,c1,..." or "yao:c" to the law fields.
void apply_law_spec(RunConfig& cfg, const std::string& spec);

// Dispatches the subcommand. Returns 0 on success, 1 on validation failure,
// 2 on numerical failure; failures also print one JSON object to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Output helpers shared by subcommands and tests.
std::string spectrum_report_json(const SpectrumReport& rep);
std::string coeffs_json(const NormalForm& nf);
std::string center_basis_json(const CenterBasis& basis);  // debugging dump
std::string checks_json(const std::vector<CheckResult>& checks, uint64_t seed);
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_center_csv(std::ostream& os, const Trajectory& traj);
void write_reduced_csv(std::ostream& os, const ReducedTrack& track);
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

}  // namespace o2hopf
