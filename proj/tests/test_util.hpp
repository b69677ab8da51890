#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "vsp/linalg.hpp"

namespace testutil {

inline double max_abs_diff(const vsp::Mat& a, const vsp::Mat& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    return (a - b).cwiseAbs().maxCoeff();
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1.0e-300, std::abs(a), std::abs(b)});
}

inline vsp::Mat random_mat(std::mt19937& rng, int r, int c, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    vsp::Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

inline vsp::Vec random_vec(std::mt19937& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    vsp::Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = d(rng);
    return v;
}

// Random square matrix shifted so its spectral abscissa is <= -margin.
inline vsp::Mat random_stable(std::mt19937& rng, int n, double margin = 0.5) {
    vsp::Mat A = random_mat(rng, n, n);
    const double abscissa =
        Eigen::EigenSolver<vsp::Mat>(A, false).eigenvalues().real().maxCoeff();
    return A - (abscissa + margin) * vsp::Mat::Identity(n, n);
}

inline vsp::Mat random_spd(std::mt19937& rng, int n, double shift = 0.1) {
    const vsp::Mat L = random_mat(rng, n, n);
    return L * L.transpose() + shift * vsp::Mat::Identity(n, n);
}

// Random orthogonal matrix (Q factor of a Gaussian matrix).
inline vsp::Mat random_orthogonal(std::mt19937& rng, int n) {
    const vsp::Mat A = random_mat(rng, n, n);
    Eigen::HouseholderQR<vsp::Mat> qr(A);
    vsp::Mat Q = qr.householderQ();
    return Q;
}

inline double spectral_abscissa(const vsp::Mat& A) {
    return Eigen::EigenSolver<vsp::Mat>(A, false).eigenvalues().real().maxCoeff();
}

}  // namespace testutil
