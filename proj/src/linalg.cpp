#include "vsp/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace vsp::linalg {

namespace {

void require_finite(const Mat& A, const char* what) {
    if (A.size() == 0) throw InvalidInputError(std::string(what) + ": empty matrix");
    if (!A.allFinite()) throw InvalidInputError(std::string(what) + ": non-finite entries");
}

void require_symmetric(const Mat& S, double rel_tol, const char* what) {
    if (S.rows() != S.cols())
        throw InvalidInputError(std::string(what) + ": matrix not square");
    const double scale = induced_norm_2(S);
    const double asym = induced_norm_2(S - S.transpose());
    if (asym > rel_tol * scale)
        throw InvalidInputError(std::string(what) + ": matrix not symmetric");
}

double spectral_abscissa(const Mat& A) {
    Eigen::EigenSolver<Mat> es(A, /*computeEigenvectors=*/false);
    return es.eigenvalues().real().maxCoeff();
}

// A^T P + P A = -Q by pivoted LU on the n^2 x n^2 Kronecker system.
// Internal form: no definiteness requirements on Q.
Mat lyap_kron(const Mat& A, const Mat& Q) {
    const Eigen::Index n = A.rows();
    Mat M = Mat::Zero(n * n, n * n);
    const Mat I = Mat::Identity(n, n);
    const Mat At = A.transpose();
    // vec(A^T P) = (I kron A^T) vec(P); vec(P A) = (A^T kron I) vec(P)
    for (Eigen::Index bi = 0; bi < n; ++bi)
        for (Eigen::Index bj = 0; bj < n; ++bj) {
            M.block(bi * n, bj * n, n, n) += I(bi, bj) * At;
            M.block(bi * n, bj * n, n, n) += At(bi, bj) * I;
        }
    Vec rhs = Vec::Zero(n * n);
    for (Eigen::Index j = 0; j < n; ++j) rhs.segment(j * n, n) = -Q.col(j);
    Vec p = Eigen::FullPivLU<Mat>(M).solve(rhs);
    Mat P(n, n);
    for (Eigen::Index j = 0; j < n; ++j) P.col(j) = p.segment(j * n, n);
    return 0.5 * (P + P.transpose());
}

}  // namespace

std::vector<double> singular_values(const Mat& A) {
    require_finite(A, "singular_values");
    Eigen::JacobiSVD<Mat> svd(A);
    const Vec& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

double induced_norm_2(const Mat& A) {
    require_finite(A, "induced_norm_2");
    return Eigen::JacobiSVD<Mat>(A).singularValues()(0);
}

double min_eig_sym(const Mat& S, const Tolerances& tol) {
    require_finite(S, "min_eig_sym");
    require_symmetric(S, tol.symmetry_check, "min_eig_sym");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
    return es.eigenvalues()(0);
}

int rank_svd(const Mat& A, double tol) {
    require_finite(A, "rank_svd");
    if (tol < 0) throw InvalidInputError("rank_svd: negative tolerance");
    const auto sv = singular_values(A);
    if (tol == 0.0)
        tol = static_cast<double>(std::max(A.rows(), A.cols())) * sv.front() *
              std::numeric_limits<double>::epsilon();
    return static_cast<int>(std::count_if(sv.begin(), sv.end(),
                                          [&](double s) { return s > tol; }));
}

Mat solve_lyapunov(const Mat& A, const Mat& Q, const Tolerances& tol) {
    require_finite(A, "solve_lyapunov");
    require_finite(Q, "solve_lyapunov");
    if (A.rows() != A.cols() || Q.rows() != Q.cols() || A.rows() != Q.rows())
        throw InvalidInputError("solve_lyapunov: dimension mismatch");
    require_symmetric(Q, tol.symmetry_check, "solve_lyapunov");
    if (min_eig_sym(Q, tol) <= 0)
        throw InvalidInputError("solve_lyapunov: Q not positive definite");
    if (spectral_abscissa(A) >= 0)
        throw NoSolutionError("solve_lyapunov: A is not Hurwitz");

    Mat P = lyap_kron(A, Q);
    const double resid = induced_norm_2(A.transpose() * P + P * A + Q);
    if (resid > tol.lyap_residual * induced_norm_2(Q))
        throw ConvergenceError("solve_lyapunov: residual " + std::to_string(resid) +
                               " above tolerance");
    if (min_eig_sym(P, tol) <= 0)
        throw ConvergenceError("solve_lyapunov: computed P not positive definite");
    return P;
}

CareResult solve_care(const Mat& A, const Mat& B, const Mat& Q, const Mat& R,
                      const Tolerances& tol) {
    require_finite(A, "solve_care");
    require_finite(B, "solve_care");
    require_finite(Q, "solve_care");
    require_finite(R, "solve_care");
    const Eigen::Index n = A.rows();
    if (A.cols() != n || B.rows() != n || Q.rows() != n || Q.cols() != n ||
        R.rows() != B.cols() || R.cols() != B.cols())
        throw InvalidInputError("solve_care: dimension mismatch");

    const Mat Rinv = R.inverse();
    const Mat S = B * Rinv * B.transpose();
    const auto residual_of = [&](const Mat& P) {
        return induced_norm_2(A.transpose() * P + P * A - P * S * P + Q);
    };
    const double resid_tol = tol.care_residual * std::max(1.0, induced_norm_2(Q));

    Mat P;
    bool have_seed = false;

    // Stable invariant subspace of the Hamiltonian matrix.
    Mat H(2 * n, 2 * n);
    H << A, -S, -Q, -A.transpose();
    Eigen::EigenSolver<Mat> es(H);
    const auto& evals = es.eigenvalues();
    const CMat& evecs = es.eigenvectors();
    std::vector<Eigen::Index> stable;
    for (Eigen::Index i = 0; i < 2 * n; ++i)
        if (evals(i).real() < 0) stable.push_back(i);
    if (static_cast<Eigen::Index>(stable.size()) == n) {
        CMat X1(n, n), X2(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            X1.col(k) = evecs.col(stable[k]).head(n);
            X2.col(k) = evecs.col(stable[k]).tail(n);
        }
        Eigen::JacobiSVD<CMat> svd(X1);
        const double smin = svd.singularValues()(n - 1);
        const double cond = smin > 0 ? svd.singularValues()(0) / smin
                                     : std::numeric_limits<double>::infinity();
        if (cond <= tol.subspace_cond) {
            P = (X2 * X1.inverse()).real();
            P = 0.5 * (P + P.transpose());
            have_seed = spectral_abscissa(A - S * P) < 0;
        }
    }

    if (!have_seed) {
        // Bass seed: (A + bI) X + X (A + bI)^T = 2 B B^T gives a stabilizing
        // gain K0 = B^T X^-1 whenever (A, B) is controllable.
        const double beta = 1.0 + A.norm();
        const Mat As = -(A + beta * Mat::Identity(n, n)).transpose();
        const Mat X = lyap_kron(As, 2.0 * B * B.transpose());
        const Mat K0 = B.transpose() * X.inverse();
        if (spectral_abscissa(A - B * K0) >= 0)
            throw SynthesisError("solve_care: no stabilizing seed found");
        const Mat Acl = A - B * K0;
        P = lyap_kron(Acl, Q + K0.transpose() * R * K0);
    }

    // Newton-Kleinman polish (quadratically convergent from a stabilizing P).
    double best = residual_of(P);
    for (int it = 0; it < 25 && best > 1e-2 * resid_tol; ++it) {
        const Mat K = Rinv * B.transpose() * P;
        const Mat Acl = A - B * K;
        if (spectral_abscissa(Acl) >= 0) break;
        const Mat Pn = lyap_kron(Acl, Q + K.transpose() * R * K);
        const double r = residual_of(Pn);
        if (!Pn.allFinite() || r >= best) break;
        P = Pn;
        best = r;
    }

    const double resid = residual_of(P);
    if (resid > resid_tol)
        throw ConvergenceError("solve_care: residual " + std::to_string(resid) +
                               " above tolerance");
    CareResult out{P, Rinv * B.transpose() * P, resid};
    if (spectral_abscissa(A - B * out.K) >= 0)
        throw SynthesisError("solve_care: closed loop not Hurwitz");
    return out;
}

}  // namespace vsp::linalg
