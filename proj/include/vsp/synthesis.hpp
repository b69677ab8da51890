#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vsp/dynamics.hpp"
#include "vsp/linalg.hpp"

namespace vsp::synth {

struct StateSpaceModel {
    Mat A, B, C, D;
};

enum class QLyapKind { identity, lqr_cost, custom };

struct SynthesisConfig {
    Mat2 Kp;
    Mat Q_lqr;  // 4x4
    Mat2 R_lqr;
    double delta = 1e-4;  // parallel feedthrough gain
    std::vector<double> linearization_angles_deg{150.0, 60.0, -90.0};
    QLyapKind q_lyap_kind = QLyapKind::identity;
    Mat q_lyap_custom;  // used when q_lyap_kind == custom
};

SynthesisConfig default_synthesis_config();

// Double integrator wrapped with the proportional spring -M^-1 Kp, built
// from the measured mass matrix at joint angles (0, theta2). Output is the
// joint-rate pair.
StateSpaceModel linearize_prewrapped(const dyn::RobotParams& measured,
                                     const SynthesisConfig& cfg, double theta2_deg);

// State-feedback gain K = R^-1 B^T P from the Riccati solution.
Mat lqr_gain(const StateSpaceModel& model, const SynthesisConfig& cfg);

struct SubcontrollerRealization {
    StateSpaceModel model;  // A_c, B_c, C_c, D_c
    Mat P;                  // Lyapunov certificate
    Mat Q;                  // chosen right-hand side
    Mat K;                  // state-feedback gain
    double delta_i = 0.0;
    double eps_i = 0.0;
    double linearization_angle_deg = 0.0;
};

// A_c = A - BK, C_c = K, B_c = P^-1 K^T with A_c^T P + P A_c = -Q_lyap,
// D_c = delta I. The identity P B_c = C_c^T holds by construction.
SubcontrollerRealization kyp_realize(const StateSpaceModel& model, const Mat& K,
                                     const Mat& Q_lyap, double delta);

// G(jw) = C (jwI - A)^-1 B + D.
CMat transfer_eval(const StateSpaceModel& model, double omega);

std::vector<double> log_grid(double lo, double hi, int n);

// Default certification grid: 400 points over [1e-3, 1e5] rad/s.
std::vector<double> default_omega_grid();

// Smallest eigenvalue of G + G^H over the grid (positivity certificate).
double min_hermitian_eig(const StateSpaceModel& model, const std::vector<double>& omega_grid);

// (delta_i, eps_i): delta_i = min_w lambda_min(G+G^H)/4, then eps_i is the
// grid minimum of lambda_min(G+G^H-2 delta_i I) / (2 lambda_max(G^H G)).
// Both must come out strictly positive.
std::pair<double, double> estimate_vsp_indices(const SubcontrollerRealization& real,
                                               const std::vector<double>& omega_grid);

// min over the grid of lambda_min(G+G^H - 2 delta_i I - 2 eps_i G^H G);
// nonnegative (within slack) when the estimated indices are valid.
double vsp_verification_slack(const StateSpaceModel& model, double delta_i, double eps_i,
                              const std::vector<double>& omega_grid);

// Full pipeline: one certified realization per linearization angle, with
// delta_i/eps_i estimated on the default grid.
std::vector<SubcontrollerRealization> synthesize_all(const dyn::RobotParams& measured,
                                                     const SynthesisConfig& cfg);

std::string realizations_to_json(const std::vector<SubcontrollerRealization>& reals,
                                 const SynthesisConfig& cfg);
std::vector<SubcontrollerRealization> realizations_from_json(const std::string& text);

}  // namespace vsp::synth
