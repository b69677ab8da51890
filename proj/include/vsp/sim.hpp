#pragma once

#include <vector>

#include "vsp/dynamics.hpp"
#include "vsp/gs_controller.hpp"
#include "vsp/signals.hpp"

namespace vsp::sim {

struct SimConfig {
    double step = 1e-3;
    double horizon = 8.5;
};

struct SimulationLog {
    double step = 0.0;
    signals::SampledSignal q, qd, theta_d, theta_d_dot, e, edot, u, u_c, y_c;
    std::vector<signals::SampledSignal> u_i, y_i;  // per subcontroller
};

// Fixed-step classical fourth-order Runge-Kutta on the joint plant +
// controller state, logging every step. Control law: u = Kp e + y_c with
// controller input u_c = edot. Initial state: q = theta_d(0), rates and
// controller states zero.
SimulationLog run_closed_loop(const SimConfig& cfg, const dyn::RobotParams& plant,
                              const gs::GsController& ctrl, const dyn::TrajectorySpec& traj,
                              const Mat2& Kp);

struct Metrics {
    double rms_e_deg[2];
    double rms_edot_degps[2];
};

Metrics rms_metrics(const SimulationLog& log);

struct AuditRow {
    double T;
    double inner_uy;
    double margin;
    double slack;
    bool pass;
};

struct AuditReport {
    sched::GsIndices indices;
    std::vector<AuditRow> rows;
    double min_margin;
    bool pass;
};

// Strict-passivity margin of the scheduled controller at 50 evenly spaced
// horizons, using the composed half-levels.
AuditReport passivity_audit(const SimulationLog& log, const sched::GsIndices& idx);

struct PowerBalance {
    std::vector<double> times;     // interior sample times
    std::vector<double> residual;  // |dKE/dt - qd.u| / max(1, sup|qd.u|)
    double norm;
    double max_residual;
    double argmax_time;
};

// Five-point central-difference kinetic-energy rate against instantaneous
// mechanical power along a logged run.
PowerBalance power_balance(const SimulationLog& log, const dyn::RobotParams& plant);

}  // namespace vsp::sim
