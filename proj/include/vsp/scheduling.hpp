#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vsp/linalg.hpp"

namespace vsp::sched {

enum class Mode { matrix, scalar, unscheduled };

Mode mode_from_string(const std::string& s);
std::string to_string(Mode m);

// The three piecewise-quartic blending signals, each in [0, 1].
struct ScalarSignals {
    double s1, s2, s3;
};
ScalarSignals eval_scalar_signals(double t);

// Coefficients and output gains of the scheduling-matrix family. mix_nu1 and
// mix_nu2 are the cross-blend coefficients (distinct from nu_sv, the smallest
// singular values used in activity analysis).
struct ScheduleSet {
    std::vector<double> alpha{2.0, 1.0, 2.0};  // matrix-mode output gains
    double mu1 = 2.0;
    double mix_nu1 = 4.0;
    double mu2 = 1.0;
    double mix_nu2 = 2.0;
};

// (Phi_i(t), alpha_i) per subcontroller for the requested mode.
// matrix: the 2x2 blend family with the set's alphas; scalar: s_i * I with
// alpha_i = 1; unscheduled: a single identity with alpha = 1.
std::vector<std::pair<Mat, double>> eval_matrices(const ScheduleSet& set, double t, Mode mode);

struct ActivityFlags {
    bool all_zero;
    bool active;           // at least one nonzero matrix
    bool strongly_active;  // at least one full-rank matrix
};

struct ActivityReport {
    std::vector<double> grid;
    std::vector<std::vector<int>> full_rank_sets;  // indices of full-rank matrices per time
    std::vector<ActivityFlags> flags;
    double nu_inf = 0.0;         // inf over grid of the full-rank min-singular-value sum
    double sigma_psi_bar = 0.0;  // sup over grid of sigma_max of the stacked matrices
};

// Per-time-point analysis of one matrix family evaluation.
struct ActivitySample {
    std::vector<int> full_rank;
    ActivityFlags flags;
    double nu_sq_sum;   // sum over full-rank matrices of sigma_min^2
    double sigma_psi;   // sigma_max([Phi_1^T ... Phi_N^T])
};
ActivitySample activity_sample(const std::vector<Mat>& phis, double rank_tol = 0.0);

ActivityReport classify_activity(const ScheduleSet& set, const std::vector<double>& grid,
                                 Mode mode, double rank_tol = 0.0);

// Sum over the whole family of lambda_min(Phi^T Phi); equals the sum over
// full-rank members of the squared smallest singular value.
double min_gain_sq_sum(const std::vector<Mat>& phis);
double min_gain_sq_sum(const ScheduleSet& set, double t, Mode mode);

// Per-subcontroller passivity levels: beta <= 0, delta > 0, eps > 0.
struct SubIndices {
    double beta = 0.0;
    double delta = 0.0;
    double eps = 0.0;
};

// Composed levels of the scheduled interconnection.
struct GsIndices {
    double beta_hat, delta_hat;  // input-strict side
    double beta_bar, eps_bar;    // output-strict side
    double nu_inf, sigma_psi_bar;
    double combined_beta() const { return 0.5 * (beta_hat + beta_bar); }
    double combined_delta() const { return 0.5 * delta_hat; }
    double combined_eps() const { return 0.5 * eps_bar; }
};

// Requires the report to be strongly active at every grid time; throws
// CertificationError naming the first failing time otherwise.
GsIndices compose_indices(const std::vector<SubIndices>& sub, const ActivityReport& report,
                          const std::vector<double>& alpha);

std::vector<double> make_grid(double t0, double t1, double step);

}  // namespace vsp::sched
