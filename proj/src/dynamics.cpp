#include "vsp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vsp::dyn {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

RobotParams default_true_params() { return {1.10, 0.85, 0.40, 0.90, 0.0}; }
RobotParams default_measured_params() { return {1.08, 0.83, 0.44, 0.99, 0.0}; }

Mat2 mass_matrix(const Vec2& q, const RobotParams& p) {
    const double c2 = std::cos(q(1));
    const double a = p.L2 * p.L2 * p.m2;
    const double b = p.L1 * p.L2 * p.m2 * c2;
    Mat2 M;
    M << a + 2.0 * b + p.L1 * p.L1 * (p.m1 + p.m2), a + b, a + b, a;
    return M;
}

Vec2 nonlinear_forces(const Vec2& q, const Vec2& qd, const RobotParams& p) {
    const double k = p.m2 * p.L1 * p.L2 * std::sin(q(1));
    Vec2 f;
    f << k * (qd(1) * qd(1) + 2.0 * qd(0) * qd(1)), -k * qd(0) * qd(0);
    if (p.gravity != 0.0) {
        const double c1 = std::cos(q(0));
        const double c12 = std::cos(q(0) + q(1));
        f(0) -= p.gravity * ((p.m1 + p.m2) * p.L1 * c1 + p.m2 * p.L2 * c12);
        f(1) -= p.gravity * p.m2 * p.L2 * c12;
    }
    return f;
}

Vec2 forward_dynamics(const Vec2& q, const Vec2& qd, const Vec2& u, const RobotParams& p) {
    const Mat2 M = mass_matrix(q, p);
    const Vec2 rhs = nonlinear_forces(q, qd, p) + u;
    const double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
    Vec2 qdd;
    qdd << (M(1, 1) * rhs(0) - M(0, 1) * rhs(1)) / det,
        (M(0, 0) * rhs(1) - M(1, 0) * rhs(0)) / det;
    return qdd;
}

TrajectorySpec default_trajectory() {
    TrajectorySpec spec;
    spec.times = {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 6.0, 6.5, 7.5, 8.5};
    const double a[10][2] = {{-90, 150}, {-90, 150}, {-60, 90}, {-60, 90}, {45, 60},
                             {60, 45},   {90, -60},  {90, -60}, {150, -90}, {150, -90}};
    for (auto& row : a) spec.angles_deg.push_back(Vec2(row[0], row[1]));
    return spec;
}

void validate(const TrajectorySpec& spec) {
    if (spec.times.size() < 2 || spec.times.size() != spec.angles_deg.size())
        throw InvalidInputError("trajectory: need matching knot times and angles");
    for (std::size_t k = 1; k < spec.times.size(); ++k)
        if (!(spec.times[k] > spec.times[k - 1]))
            throw InvalidInputError("trajectory: knot times must be strictly ascending");
    for (const Vec2& a : spec.angles_deg)
        if (a.minCoeff() < -90.0 || a.maxCoeff() > 150.0)
            throw InvalidInputError("trajectory: knot angles outside [-90, 150] deg");
}

TrajSample trajectory_eval(const TrajectorySpec& spec, double t) {
    validate(spec);
    if (t < 0) throw InvalidInputError("trajectory_eval: negative time");
    TrajSample out;
    if (t >= spec.times.back()) {
        out.theta_d = spec.angles_deg.back() * kDegToRad;
        out.theta_d_dot = Vec2::Zero();
        return out;
    }
    const auto it = std::upper_bound(spec.times.begin(), spec.times.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - spec.times.begin()) - 1;
    const double dt = spec.times[k + 1] - spec.times[k];
    const double eta = (t - spec.times[k]) / dt;
    const double p5 = eta * eta * eta * (10.0 + eta * (-15.0 + 6.0 * eta));
    const double p5dot = 30.0 * eta * eta * (eta - 1.0) * (eta - 1.0) / dt;
    const Vec2 d = spec.angles_deg[k + 1] - spec.angles_deg[k];
    out.theta_d = (spec.angles_deg[k] + p5 * d) * kDegToRad;
    out.theta_d_dot = p5dot * d * kDegToRad;
    return out;
}

}  // namespace vsp::dyn
