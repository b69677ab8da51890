#include "vsp/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vsp::sched {

Mode mode_from_string(const std::string& s) {
    if (s == "matrix") return Mode::matrix;
    if (s == "scalar") return Mode::scalar;
    if (s == "unscheduled") return Mode::unscheduled;
    throw InvalidInputError("unknown mode: " + s);
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::matrix: return "matrix";
        case Mode::scalar: return "scalar";
        default: return "unscheduled";
    }
}

namespace {
double quartic(double x) { return 1.0 - x * x * x * x; }
}  // namespace

ScalarSignals eval_scalar_signals(double t) {
    if (t < 0) throw InvalidInputError("eval_scalar_signals: negative time");
    ScalarSignals s{0.0, 0.0, 0.0};
    if (t <= 3.0) s.s1 = quartic(t / 3.0);
    if (t >= 0.2 && t <= 5.8) s.s2 = quartic((t - 3.0) / 2.8);
    if (t > 7.0)
        s.s3 = 1.0;
    else if (t >= 5.0)
        s.s3 = quartic((t - 7.5) / 2.5);
    return s;
}

std::vector<std::pair<Mat, double>> eval_matrices(const ScheduleSet& set, double t, Mode mode) {
    const auto [s1, s2, s3] = eval_scalar_signals(t);
    std::vector<std::pair<Mat, double>> out;
    switch (mode) {
        case Mode::matrix: {
            if (set.alpha.size() != 3)
                throw InvalidInputError("eval_matrices: need 3 output gains");
            Mat p1(2, 2), p2(2, 2), p3(2, 2);
            p1 << set.mu1 * s1 + set.mix_nu1 * s2, 0.0, 0.0, s1;
            p2 << s2, 0.0, s2, s2;
            p3 << set.mu2 * s3 + set.mix_nu2 * s2, 0.0, 0.0, s3;
            out.emplace_back(p1, set.alpha[0]);
            out.emplace_back(p2, set.alpha[1]);
            out.emplace_back(p3, set.alpha[2]);
            break;
        }
        case Mode::scalar:
            out.emplace_back(s1 * Mat::Identity(2, 2), 1.0);
            out.emplace_back(s2 * Mat::Identity(2, 2), 1.0);
            out.emplace_back(s3 * Mat::Identity(2, 2), 1.0);
            break;
        case Mode::unscheduled:
            out.emplace_back(Mat::Identity(2, 2), 1.0);
            break;
    }
    return out;
}

ActivitySample activity_sample(const std::vector<Mat>& phis, double rank_tol) {
    if (phis.empty()) throw InvalidInputError("activity_sample: empty family");
    ActivitySample out;
    out.flags = {true, false, false};
    out.nu_sq_sum = 0.0;
    const Eigen::Index n = phis.front().rows();
    Mat psi(n, static_cast<Eigen::Index>(phis.size()) * phis.front().cols());
    Eigen::Index col = 0;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const Mat& p = phis[i];
        psi.block(0, col, p.cols(), p.rows()) = p.transpose();
        col += p.rows();
        if (p.norm() > 0) {
            out.flags.all_zero = false;
            out.flags.active = true;
        }
        const auto sv = linalg::singular_values(p);
        if (linalg::rank_svd(p, rank_tol) == std::min(p.rows(), p.cols()) &&
            p.rows() == p.cols()) {
            out.full_rank.push_back(static_cast<int>(i));
            out.flags.strongly_active = true;
            out.nu_sq_sum += sv.back() * sv.back();
        }
    }
    out.sigma_psi = linalg::induced_norm_2(psi);
    return out;
}

ActivityReport classify_activity(const ScheduleSet& set, const std::vector<double>& grid,
                                 Mode mode, double rank_tol) {
    if (grid.empty()) throw InvalidInputError("classify_activity: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw InvalidInputError("classify_activity: grid not ascending");
    ActivityReport rep;
    rep.grid = grid;
    rep.nu_inf = std::numeric_limits<double>::infinity();
    rep.sigma_psi_bar = 0.0;
    for (double t : grid) {
        std::vector<Mat> phis;
        for (auto& [p, a] : eval_matrices(set, t, mode)) phis.push_back(p);
        ActivitySample smp = activity_sample(phis, rank_tol);
        rep.full_rank_sets.push_back(std::move(smp.full_rank));
        rep.flags.push_back(smp.flags);
        rep.nu_inf = std::min(rep.nu_inf, smp.nu_sq_sum);
        rep.sigma_psi_bar = std::max(rep.sigma_psi_bar, smp.sigma_psi);
    }
    return rep;
}

double min_gain_sq_sum(const std::vector<Mat>& phis) {
    double acc = 0.0;
    for (const Mat& p : phis) acc += linalg::min_eig_sym(p.transpose() * p);
    return acc;
}

double min_gain_sq_sum(const ScheduleSet& set, double t, Mode mode) {
    std::vector<Mat> phis;
    for (auto& [p, a] : eval_matrices(set, t, mode)) phis.push_back(p);
    return min_gain_sq_sum(phis);
}

GsIndices compose_indices(const std::vector<SubIndices>& sub, const ActivityReport& report,
                          const std::vector<double>& alpha) {
    if (sub.empty() || sub.size() != alpha.size())
        throw InvalidInputError("compose_indices: size mismatch");
    for (std::size_t i = 0; i < sub.size(); ++i) {
        if (alpha[i] <= 0) throw InvalidInputError("compose_indices: alpha must be positive");
        if (sub[i].delta <= 0 || sub[i].eps <= 0)
            throw InvalidInputError("compose_indices: delta and eps must be positive");
        if (sub[i].beta > 0) throw InvalidInputError("compose_indices: beta must be <= 0");
    }
    for (std::size_t k = 0; k < report.flags.size(); ++k)
        if (!report.flags[k].strongly_active)
            throw CertificationError("schedule not strongly active", report.grid[k]);
    if (!(report.nu_inf > 0) || !(report.sigma_psi_bar > 0))
        throw CertificationError("activity report lacks positive nu_inf / sigma bounds");

    GsIndices out{};
    out.nu_inf = report.nu_inf;
    out.sigma_psi_bar = report.sigma_psi_bar;
    double beta_sum = 0.0;
    double delta_min = std::numeric_limits<double>::infinity();
    double eps_min = std::numeric_limits<double>::infinity();
    double alpha_max = 0.0;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        beta_sum += alpha[i] * sub[i].beta;
        delta_min = std::min(delta_min, alpha[i] * sub[i].delta);
        eps_min = std::min(eps_min, alpha[i] * sub[i].eps);
        alpha_max = std::max(alpha_max, alpha[i]);
    }
    out.beta_hat = beta_sum;
    out.beta_bar = beta_sum;
    out.delta_hat = delta_min * report.nu_inf;
    out.eps_bar = eps_min / (alpha_max * alpha_max * report.sigma_psi_bar * report.sigma_psi_bar);
    return out;
}

std::vector<double> make_grid(double t0, double t1, double step) {
    if (step <= 0 || t1 < t0) throw InvalidInputError("make_grid: bad bounds");
    std::vector<double> g;
    const auto n = static_cast<std::size_t>(std::llround((t1 - t0) / step));
    g.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) g.push_back(t0 + static_cast<double>(k) * step);
    return g;
}

}  // namespace vsp::sched
