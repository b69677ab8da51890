#include "vsp/gs_controller.hpp"

namespace vsp::gs {

Eigen::Index GsController::state_dim() const {
    Eigen::Index n = 0;
    for (const auto& r : realizations) n += r.model.A.rows();
    return n;
}

GsController GsController::build(const std::vector<synth::SubcontrollerRealization>& all,
                                 const sched::ScheduleSet& schedule, sched::Mode mode) {
    GsController c;
    c.schedule = schedule;
    c.mode = mode;
    if (mode == sched::Mode::unscheduled) {
        if (all.empty()) throw InvalidInputError("controller: no realizations");
        c.realizations = {all.back()};
    } else {
        if (all.size() != 3) throw InvalidInputError("controller: need 3 realizations");
        c.realizations = all;
    }
    for (const auto& r : c.realizations)
        if (r.model.C.rows() != c.io_dim() || r.model.B.cols() != c.io_dim())
            throw InvalidInputError("controller: I/O dimension must be 2");
    return c;
}

std::vector<Vec2> distribute_input(const GsController& c, double t, const Vec2& u_c) {
    std::vector<Vec2> out;
    for (auto& [phi, a] : sched::eval_matrices(c.schedule, t, c.mode))
        out.push_back(phi * u_c);
    return out;
}

Vec2 collect_output(const GsController& c, double t, const std::vector<Vec2>& y) {
    const auto phis = sched::eval_matrices(c.schedule, t, c.mode);
    if (y.size() != phis.size()) throw InvalidInputError("collect_output: size mismatch");
    Vec2 y_c = Vec2::Zero();
    for (std::size_t i = 0; i < phis.size(); ++i)
        y_c += phis[i].second * (phis[i].first.transpose() * y[i]);
    return y_c;
}

Vec controller_derivative(const GsController& c, const Vec& state, double t, const Vec2& u_c) {
    if (state.size() != c.state_dim())
        throw InvalidInputError("controller_derivative: state size mismatch");
    const auto u = distribute_input(c, t, u_c);
    Vec dx(state.size());
    Eigen::Index off = 0;
    for (std::size_t i = 0; i < c.realizations.size(); ++i) {
        const auto& m = c.realizations[i].model;
        const Eigen::Index n = m.A.rows();
        dx.segment(off, n) = m.A * state.segment(off, n) + m.B * u[i];
        off += n;
    }
    return dx;
}

std::vector<Vec2> subcontroller_outputs(const GsController& c, const Vec& state, double t,
                                        const Vec2& u_c) {
    if (state.size() != c.state_dim())
        throw InvalidInputError("subcontroller_outputs: state size mismatch");
    const auto u = distribute_input(c, t, u_c);
    std::vector<Vec2> y;
    Eigen::Index off = 0;
    for (std::size_t i = 0; i < c.realizations.size(); ++i) {
        const auto& m = c.realizations[i].model;
        const Eigen::Index n = m.A.rows();
        y.push_back(m.C * state.segment(off, n) + m.D * u[i]);
        off += n;
    }
    return y;
}

Vec2 controller_output(const GsController& c, const Vec& state, double t, const Vec2& u_c) {
    return collect_output(c, t, subcontroller_outputs(c, state, t, u_c));
}

}  // namespace vsp::gs
