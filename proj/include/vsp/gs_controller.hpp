#pragma once

#include <vector>

#include "vsp/scheduling.hpp"
#include "vsp/synthesis.hpp"

namespace vsp::gs {

// Parallel bank of subcontrollers whose inputs are shaped by Phi_i(t) and
// whose outputs are recombined through alpha_i Phi_i^T(t).
struct GsController {
    std::vector<synth::SubcontrollerRealization> realizations;
    sched::ScheduleSet schedule;
    sched::Mode mode = sched::Mode::matrix;

    Eigen::Index state_dim() const;
    Eigen::Index io_dim() const { return 2; }

    // matrix/scalar use all three realizations; unscheduled keeps only the
    // one synthesized at the final linearization point.
    static GsController build(const std::vector<synth::SubcontrollerRealization>& all,
                              const sched::ScheduleSet& schedule, sched::Mode mode);
};

std::vector<Vec2> distribute_input(const GsController& c, double t, const Vec2& u_c);

Vec2 collect_output(const GsController& c, double t, const std::vector<Vec2>& y);

Vec controller_derivative(const GsController& c, const Vec& state, double t, const Vec2& u_c);

// y_i = C_i x_i + delta Phi_i u_c for each subcontroller.
std::vector<Vec2> subcontroller_outputs(const GsController& c, const Vec& state, double t,
                                        const Vec2& u_c);

Vec2 controller_output(const GsController& c, const Vec& state, double t, const Vec2& u_c);

}  // namespace vsp::gs
