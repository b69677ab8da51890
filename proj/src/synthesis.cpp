#include "vsp/synthesis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <json.hpp>

namespace vsp::synth {

using nlohmann::json;

SynthesisConfig default_synthesis_config() {
    SynthesisConfig cfg;
    cfg.Kp = Mat2::Identity() * 35.0;
    // Bryson-style weights: diag(x)^-2.
    Vec qs(4);
    qs << 0.33, 0.25, 180.0, 180.0;
    cfg.Q_lqr = qs.array().square().inverse().matrix().asDiagonal();
    Vec rs(2);
    rs << 15.0, 15.0;
    cfg.R_lqr = Mat2(rs.array().square().inverse().matrix().asDiagonal());
    cfg.delta = 1e-4;
    return cfg;
}

StateSpaceModel linearize_prewrapped(const dyn::RobotParams& measured,
                                     const SynthesisConfig& cfg, double theta2_deg) {
    if (!std::isfinite(theta2_deg))
        throw InvalidInputError("linearize_prewrapped: non-finite angle");
    const Vec2 q(0.0, theta2_deg * std::numbers::pi / 180.0);
    const Mat2 Minv = dyn::mass_matrix(q, measured).inverse();
    StateSpaceModel m;
    m.A = Mat::Zero(4, 4);
    m.A.topRightCorner(2, 2) = Mat2::Identity();
    m.A.bottomLeftCorner(2, 2) = -Minv * cfg.Kp;
    m.B = Mat::Zero(4, 2);
    m.B.bottomRows(2) = Minv;
    m.C = Mat::Zero(2, 4);
    m.C.rightCols(2) = Mat2::Identity();
    m.D = Mat::Zero(2, 2);
    return m;
}

Mat lqr_gain(const StateSpaceModel& model, const SynthesisConfig& cfg) {
    return linalg::solve_care(model.A, model.B, cfg.Q_lqr, cfg.R_lqr).K;
}

SubcontrollerRealization kyp_realize(const StateSpaceModel& model, const Mat& K,
                                     const Mat& Q_lyap, double delta) {
    if (delta <= 0) throw InvalidInputError("kyp_realize: feedthrough must be positive");
    SubcontrollerRealization real;
    real.K = K;
    real.Q = Q_lyap;
    const Mat Ac = model.A - model.B * K;
    Mat P;
    try {
        P = linalg::solve_lyapunov(Ac, Q_lyap);
    } catch (const Error& e) {
        throw SynthesisError(std::string("kyp_realize: ") + e.what());
    }
    real.P = P;
    real.model.A = Ac;
    real.model.C = K;
    real.model.B = Eigen::FullPivLU<Mat>(P).solve(K.transpose());
    real.model.D = delta * Mat::Identity(K.rows(), K.rows());
    const double id_err = (P * real.model.B - K.transpose()).cwiseAbs().maxCoeff();
    if (id_err > 1e-10 * std::max(1.0, linalg::induced_norm_2(K)))
        throw SynthesisError("kyp_realize: P B_c = C_c^T identity failed");
    return real;
}

CMat transfer_eval(const StateSpaceModel& model, double omega) {
    const Eigen::Index n = model.A.rows();
    const std::complex<double> jw(0.0, omega);
    CMat M = jw * CMat::Identity(n, n) - model.A.cast<std::complex<double>>();
    Eigen::FullPivLU<CMat> lu(M);
    if (!lu.isInvertible())
        throw ConvergenceError("transfer_eval: jw is an eigenvalue of A");
    return model.C.cast<std::complex<double>>() * lu.solve(model.B.cast<std::complex<double>>()) +
           model.D.cast<std::complex<double>>();
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0) || !(hi > lo) || n < 2) throw InvalidInputError("log_grid: bad parameters");
    std::vector<double> g(n);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int k = 0; k < n; ++k)
        g[k] = std::pow(10.0, llo + (lhi - llo) * k / (n - 1));
    return g;
}

std::vector<double> default_omega_grid() { return log_grid(1e-3, 1e5, 400); }

namespace {

double min_eig_hermitian(const CMat& H) {
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    return es.eigenvalues()(0);
}

double max_eig_hermitian(const CMat& H) {
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

}  // namespace

double min_hermitian_eig(const StateSpaceModel& model, const std::vector<double>& omega_grid) {
    if (omega_grid.empty()) throw InvalidInputError("min_hermitian_eig: empty grid");
    double m = std::numeric_limits<double>::infinity();
    for (double w : omega_grid) {
        const CMat G = transfer_eval(model, w);
        m = std::min(m, min_eig_hermitian(G + G.adjoint()));
    }
    return m;
}

std::pair<double, double> estimate_vsp_indices(const SubcontrollerRealization& real,
                                               const std::vector<double>& omega_grid) {
    if (omega_grid.empty()) throw InvalidInputError("estimate_vsp_indices: empty grid");
    const double delta_i = min_hermitian_eig(real.model, omega_grid) / 4.0;
    const Eigen::Index p = real.model.C.rows();
    double eps_i = std::numeric_limits<double>::infinity();
    for (double w : omega_grid) {
        const CMat G = transfer_eval(real.model, w);
        const double num =
            min_eig_hermitian(G + G.adjoint() - 2.0 * delta_i * CMat::Identity(p, p));
        const double den = 2.0 * max_eig_hermitian(G.adjoint() * G);
        eps_i = std::min(eps_i, num / den);
    }
    if (!(delta_i > 0) || !(eps_i > 0))
        throw CertificationError("estimate_vsp_indices: realization not strictly passive on grid");
    return {delta_i, eps_i};
}

double vsp_verification_slack(const StateSpaceModel& model, double delta_i, double eps_i,
                              const std::vector<double>& omega_grid) {
    const Eigen::Index p = model.C.rows();
    double m = std::numeric_limits<double>::infinity();
    for (double w : omega_grid) {
        const CMat G = transfer_eval(model, w);
        m = std::min(m, min_eig_hermitian(G + G.adjoint() -
                                          2.0 * delta_i * CMat::Identity(p, p) -
                                          2.0 * eps_i * (G.adjoint() * G)));
    }
    return m;
}

std::vector<SubcontrollerRealization> synthesize_all(const dyn::RobotParams& measured,
                                                     const SynthesisConfig& cfg) {
    if (cfg.linearization_angles_deg.empty())
        throw InvalidInputError("synthesize_all: no linearization angles");
    std::vector<SubcontrollerRealization> out;
    const auto grid = default_omega_grid();
    for (double ang : cfg.linearization_angles_deg) {
        const StateSpaceModel plant = linearize_prewrapped(measured, cfg, ang);
        const Mat K = lqr_gain(plant, cfg);
        Mat Q;
        switch (cfg.q_lyap_kind) {
            case QLyapKind::identity:
                Q = Mat::Identity(4, 4);
                break;
            case QLyapKind::lqr_cost:
                Q = cfg.Q_lqr + K.transpose() * cfg.R_lqr * K;
                break;
            case QLyapKind::custom:
                Q = cfg.q_lyap_custom;
                break;
        }
        SubcontrollerRealization real = kyp_realize(plant, K, Q, cfg.delta);
        real.linearization_angle_deg = ang;
        const auto [di, ei] = estimate_vsp_indices(real, grid);
        real.delta_i = di;
        real.eps_i = ei;
        out.push_back(std::move(real));
    }
    return out;
}

namespace {

json mat_to_json(const Mat& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw InvalidInputError("model file: expected a nested array matrix");
    Mat M(j.size(), j.front().size());
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        const auto& row = j.at(i);
        if (static_cast<Eigen::Index>(row.size()) != M.cols())
            throw InvalidInputError("model file: ragged matrix");
        for (Eigen::Index j2 = 0; j2 < M.cols(); ++j2) M(i, j2) = row.at(j2).get<double>();
    }
    return M;
}

}  // namespace

std::string realizations_to_json(const std::vector<SubcontrollerRealization>& reals,
                                 const SynthesisConfig& cfg) {
    json j;
    j["feedthrough_delta"] = cfg.delta;
    j["linearization_angles_deg"] = cfg.linearization_angles_deg;
    json arr = json::array();
    for (const auto& r : reals) {
        json e;
        e["linearization_angle_deg"] = r.linearization_angle_deg;
        e["A_c"] = mat_to_json(r.model.A);
        e["B_c"] = mat_to_json(r.model.B);
        e["C_c"] = mat_to_json(r.model.C);
        e["D_c"] = mat_to_json(r.model.D);
        e["P"] = mat_to_json(r.P);
        e["Q_lyap"] = mat_to_json(r.Q);
        e["K"] = mat_to_json(r.K);
        e["delta_i"] = r.delta_i;
        e["eps_i"] = r.eps_i;
        arr.push_back(std::move(e));
    }
    j["realizations"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::vector<SubcontrollerRealization> realizations_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        std::vector<SubcontrollerRealization> out;
        for (const auto& e : j.at("realizations")) {
            SubcontrollerRealization r;
            r.model.A = mat_from_json(e.at("A_c"));
            r.model.B = mat_from_json(e.at("B_c"));
            r.model.C = mat_from_json(e.at("C_c"));
            r.model.D = mat_from_json(e.at("D_c"));
            r.P = mat_from_json(e.at("P"));
            r.Q = mat_from_json(e.at("Q_lyap"));
            r.K = mat_from_json(e.at("K"));
            r.delta_i = e.at("delta_i").get<double>();
            r.eps_i = e.at("eps_i").get<double>();
            r.linearization_angle_deg = e.at("linearization_angle_deg").get<double>();
            out.push_back(std::move(r));
        }
        return out;
    } catch (const json::exception& e) {
        throw InvalidInputError(std::string("model bank json malformed: ") + e.what());
    }
}

}  // namespace vsp::synth
