#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hypermode::linalg {

/// Orthonormal basis of the numerical kernel of `m`: right singular vectors
/// whose singular value is <= rel_tol * sigma_max. Returns an (cols x 0)
/// matrix for a numerically injective map.
/// Singular values at or below rel_tol * max(sigma_max, scale) count as zero.
/// Pass the norm of the terms a matrix was assembled from as `scale` when
/// cancellation can make the whole matrix tiny.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_tol, double scale = 0.0);

/// Orthonormal basis of {l : l^T m = 0}.
Eigen::MatrixXd left_null_space(const Eigen::MatrixXd& m, double rel_tol, double scale = 0.0);

/// Right and left kernels of a - lambda b, rank judged against |a| + |lambda| |b|.
Eigen::MatrixXd pencil_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double lambda, double rel_tol);
Eigen::MatrixXd pencil_left_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double lambda, double rel_tol);

/// Thin orthonormal basis for the column span (columns assumed independent).
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m);

/// Sine of the largest principal angle between the spans of two orthonormal
/// bases. Returns 1 when the dimensions differ.
double subspace_distance(const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2);

/// Eigenvalues lambda of a v = lambda b v for invertible b. Throws
/// ConditioningError when b is numerically singular.
std::vector<std::complex<double>> pencil_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct RealCluster {
    double value = 0.0;      // mean of the real parts in the cluster
    int multiplicity = 0;
    double max_imag = 0.0;   // largest |Im| among members
};

/// Sort by real part and merge neighbours closer than `tol`.
std::vector<RealCluster> cluster_real(std::vector<std::complex<double>> values, double tol);

inline double spectral_radius(const std::vector<std::complex<double>>& values) {
    double r = 0.0;
    for (const auto& v : values) r = std::max(r, std::abs(v));
    return r;
}

}  // namespace hypermode::linalg
