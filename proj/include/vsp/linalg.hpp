#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vsp/errors.hpp"

namespace vsp {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

namespace linalg {

// Solver tolerances; defaults satisfy the library-wide certification bounds.
struct Tolerances {
    double lyap_residual = 1e-9;    // relative to ||Q||_2
    double care_residual = 1e-8;    // relative to max(1, ||Q||_2)
    double subspace_cond = 1e8;     // Hamiltonian basis conditioning trigger
    double symmetry_check = 1e-10;  // relative to ||S||_2
};

// Singular values of a nonempty real matrix, sorted descending.
std::vector<double> singular_values(const Mat& A);

// Largest singular value (the 2-norm induced by the Euclidean vector norm).
double induced_norm_2(const Mat& A);

// Smallest eigenvalue of the symmetrized (S + S^T)/2. S must be square and
// symmetric within tol.symmetry_check relative to ||S||_2.
double min_eig_sym(const Mat& S, const Tolerances& tol = {});

// Count of singular values strictly above tol. tol = 0 selects the default
// max(rows, cols) * sigma_max * machine_epsilon.
int rank_svd(const Mat& A, double tol = 0.0);

// Solve A^T P + P A = -Q for symmetric P via Kronecker vectorization.
// Requires A Hurwitz and Q symmetric positive definite.
Mat solve_lyapunov(const Mat& A, const Mat& Q, const Tolerances& tol = {});

struct CareResult {
    Mat P;            // stabilizing symmetric PSD solution
    Mat K;            // R^-1 B^T P
    double residual;  // ||A^T P + P A - P B R^-1 B^T P + Q||_2
};

// Solve A^T P + P A - P B R^-1 B^T P + Q = 0 via the stable invariant
// subspace of the Hamiltonian matrix, with a Newton-Kleinman fallback when
// the subspace basis is ill-conditioned. A - B K is verified Hurwitz.
CareResult solve_care(const Mat& A, const Mat& B, const Mat& Q, const Mat& R,
                      const Tolerances& tol = {});

}  // namespace linalg
}  // namespace vsp
