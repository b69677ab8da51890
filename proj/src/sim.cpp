#include "vsp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace vsp::sim {

namespace {
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
}

SimulationLog run_closed_loop(const SimConfig& cfg, const dyn::RobotParams& plant,
                              const gs::GsController& ctrl, const dyn::TrajectorySpec& traj,
                              const Mat2& Kp) {
    if (cfg.step <= 0 || cfg.horizon < cfg.step)
        throw InvalidInputError("run_closed_loop: need step > 0 and horizon >= step");
    const Eigen::Index nc = ctrl.state_dim();
    const std::size_t steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.step));
    const double h = cfg.step;

    const auto deriv = [&](double t, const Vec& z) {
        const Vec2 q = z.segment<2>(0);
        const Vec2 qd = z.segment<2>(2);
        const Vec xc = z.tail(nc);
        const auto ref = dyn::trajectory_eval(traj, t);
        const Vec2 e = ref.theta_d - q;
        const Vec2 uc = ref.theta_d_dot - qd;
        const Vec2 yc = gs::controller_output(ctrl, xc, t, uc);
        const Vec2 u = Kp * e + yc;
        Vec dz(4 + nc);
        dz.segment<2>(0) = qd;
        dz.segment<2>(2) = dyn::forward_dynamics(q, qd, u, plant);
        dz.tail(nc) = gs::controller_derivative(ctrl, xc, t, uc);
        return dz;
    };

    SimulationLog log;
    log.step = h;
    const std::size_t nsub = ctrl.realizations.size();
    auto init_sig = [&](signals::SampledSignal& s) {
        s.step = h;
        s.samples.reserve(steps + 1);
    };
    init_sig(log.q);
    init_sig(log.qd);
    init_sig(log.theta_d);
    init_sig(log.theta_d_dot);
    init_sig(log.e);
    init_sig(log.edot);
    init_sig(log.u);
    init_sig(log.u_c);
    init_sig(log.y_c);
    log.u_i.resize(nsub);
    log.y_i.resize(nsub);
    for (auto& s : log.u_i) init_sig(s);
    for (auto& s : log.y_i) init_sig(s);

    const auto record = [&](double t, const Vec& z) {
        const Vec2 q = z.segment<2>(0);
        const Vec2 qd = z.segment<2>(2);
        const Vec xc = z.tail(nc);
        const auto ref = dyn::trajectory_eval(traj, t);
        const Vec2 e = ref.theta_d - q;
        const Vec2 uc = ref.theta_d_dot - qd;
        const auto yi = gs::subcontroller_outputs(ctrl, xc, t, uc);
        const Vec2 yc = gs::collect_output(ctrl, t, yi);
        const auto ui = gs::distribute_input(ctrl, t, uc);
        log.q.samples.push_back(q);
        log.qd.samples.push_back(qd);
        log.theta_d.samples.push_back(ref.theta_d);
        log.theta_d_dot.samples.push_back(ref.theta_d_dot);
        log.e.samples.push_back(e);
        log.edot.samples.push_back(uc);
        log.u.samples.push_back(Kp * e + yc);
        log.u_c.samples.push_back(uc);
        log.y_c.samples.push_back(yc);
        for (std::size_t i = 0; i < nsub; ++i) {
            log.u_i[i].samples.push_back(ui[i]);
            log.y_i[i].samples.push_back(yi[i]);
        }
    };

    Vec z = Vec::Zero(4 + nc);
    z.segment<2>(0) = dyn::trajectory_eval(traj, 0.0).theta_d;
    record(0.0, z);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * h;
        const Vec k1 = deriv(t, z);
        const Vec k2 = deriv(t + 0.5 * h, z + 0.5 * h * k1);
        const Vec k3 = deriv(t + 0.5 * h, z + 0.5 * h * k2);
        const Vec k4 = deriv(t + h, z + h * k3);
        z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double tn = static_cast<double>(k + 1) * h;
        if (!z.allFinite())
            throw SimulationError("closed loop diverged at t = " + std::to_string(tn), tn);
        record(tn, z);
    }
    return log;
}

Metrics rms_metrics(const SimulationLog& log) {
    if (log.e.samples.empty()) throw InvalidInputError("rms_metrics: empty log");
    Vec2 se = Vec2::Zero(), sed = Vec2::Zero();
    for (std::size_t k = 0; k < log.e.samples.size(); ++k) {
        se += log.e.samples[k].cwiseAbs2();
        sed += log.edot.samples[k].cwiseAbs2();
    }
    const double n = static_cast<double>(log.e.samples.size());
    Metrics m{};
    for (int j = 0; j < 2; ++j) {
        m.rms_e_deg[j] = std::sqrt(se(j) / n) * kRadToDeg;
        m.rms_edot_degps[j] = std::sqrt(sed(j) / n) * kRadToDeg;
    }
    return m;
}

AuditReport passivity_audit(const SimulationLog& log, const sched::GsIndices& idx) {
    if (log.u_c.samples.empty() || log.y_c.samples.empty())
        throw InvalidInputError("passivity_audit: log missing controller channels");
    AuditReport rep;
    rep.indices = idx;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.pass = true;
    const double span = log.u_c.span();
    for (int j = 1; j <= 50; ++j) {
        const double T = span * static_cast<double>(j) / 50.0;
        const double uy = signals::inner_product_truncated(log.u_c, log.y_c, T);
        const double uu = signals::inner_product_truncated(log.u_c, log.u_c, T);
        const double yy = signals::inner_product_truncated(log.y_c, log.y_c, T);
        AuditRow row;
        row.T = T;
        row.inner_uy = uy;
        row.margin = uy - idx.combined_beta() - idx.combined_delta() * uu -
                     idx.combined_eps() * yy;
        row.slack = -1e-8 * (1.0 + uu);
        row.pass = row.margin >= row.slack;
        rep.min_margin = std::min(rep.min_margin, row.margin);
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

PowerBalance power_balance(const SimulationLog& log, const dyn::RobotParams& plant) {
    const std::size_t n = log.q.samples.size();
    if (n < 5) throw InvalidInputError("power_balance: need at least 5 samples");
    const double h = log.step;
    std::vector<double> ke(n), pw(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 q = log.q.samples[k];
        const Vec2 qd = log.qd.samples[k];
        ke[k] = 0.5 * qd.dot(dyn::mass_matrix(q, plant) * qd);
        pw[k] = qd.dot(log.u.samples[k]);
    }
    PowerBalance pb;
    pb.norm = 1.0;
    for (double p : pw) pb.norm = std::max(pb.norm, std::abs(p));
    pb.max_residual = 0.0;
    pb.argmax_time = 0.0;
    for (std::size_t k = 2; k + 2 < n; ++k) {
        const double d5 =
            (ke[k - 2] - 8.0 * ke[k - 1] + 8.0 * ke[k + 1] - ke[k + 2]) / (12.0 * h);
        const double r = std::abs(d5 - pw[k]) / pb.norm;
        pb.times.push_back(static_cast<double>(k) * h);
        pb.residual.push_back(r);
        if (r > pb.max_residual) {
            pb.max_residual = r;
            pb.argmax_time = static_cast<double>(k) * h;
        }
    }
    return pb;
}

}  // namespace vsp::sim
