#pragma once

#include <string>
#include <vector>

#include "vsp/dynamics.hpp"
#include "vsp/scheduling.hpp"
#include "vsp/sim.hpp"
#include "vsp/synthesis.hpp"

namespace vsp::config {

// One run end to end: plant parameters, synthesis knobs, scheduling family,
// reference trajectory, integrator settings, output location. Mirrors the
// JSON layout one to one; unknown keys are rejected on load and absent keys
// keep these defaults.
struct RunConfig {
    dyn::RobotParams true_params = dyn::default_true_params();
    dyn::RobotParams measured_params = dyn::default_measured_params();

    std::vector<double> kp_diag{35.0, 35.0};
    std::vector<double> q_lqr_bryson{0.33, 0.25, 180.0, 180.0};  // Q = diag(x)^-2
    std::vector<double> r_lqr_bryson{15.0, 15.0};                // R = diag(x)^-2
    double feedthrough_delta = 1e-4;
    std::vector<double> linearization_angles_deg{150.0, 60.0, -90.0};
    synth::QLyapKind q_lyap_kind = synth::QLyapKind::identity;
    Mat q_lyap_custom;

    sched::Mode mode = sched::Mode::matrix;
    sched::ScheduleSet schedule;
    double activity_grid_step = 1e-3;

    dyn::TrajectorySpec trajectory = dyn::default_trajectory();
    sim::SimConfig sim;
    std::string output_dir = "out";
};

RunConfig default_config();

// Throws ConfigError on any out-of-range or inconsistent field.
void validate(const RunConfig& cfg);

synth::SynthesisConfig synthesis_config(const RunConfig& cfg);

RunConfig from_json_text(const std::string& text);
std::string to_json_text(const RunConfig& cfg);

RunConfig load_file(const std::string& path);

}  // namespace vsp::config
