#pragma once

#include <vector>

#include "vsp/linalg.hpp"

namespace vsp::dyn {

// Planar two-link arm with point masses at the distal link ends.
struct RobotParams {
    double L1, L2;  // link lengths, m
    double m1, m2;  // point masses, kg
    double gravity = 0.0;
};

RobotParams default_true_params();      // drives the plant
RobotParams default_measured_params();  // drives controller synthesis

Mat2 mass_matrix(const Vec2& q, const RobotParams& p);

// Velocity-quadratic (and, when gravity != 0, gravitational) joint torques f
// such that M(q) qdd = f + u.
Vec2 nonlinear_forces(const Vec2& q, const Vec2& qd, const RobotParams& p);

Vec2 forward_dynamics(const Vec2& q, const Vec2& qd, const Vec2& u, const RobotParams& p);

// Quintic point-to-point reference through fixed knots (degrees at the
// knots; radians at evaluation).
struct TrajectorySpec {
    std::vector<double> times;
    std::vector<Vec2> angles_deg;
};

TrajectorySpec default_trajectory();
void validate(const TrajectorySpec& spec);

struct TrajSample {
    Vec2 theta_d;      // rad
    Vec2 theta_d_dot;  // rad/s
};

TrajSample trajectory_eval(const TrajectorySpec& spec, double t);

}  // namespace vsp::dyn
