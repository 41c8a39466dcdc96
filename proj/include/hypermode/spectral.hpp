#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypermode/linalg.hpp"
#include "hypermode/systems.hpp"

namespace hypermode {

/// Numerical thresholds. All are relative: imag and cluster scale with the
/// spectral radius of the pencil, rank with the largest singular value.
struct Tolerances {
    double imag_rel = 1e-8;
    double cluster_rel = 1e-6;
    double rank_rel = 1e-10;
};

/// B(xi0, xi)(U) = xi0^2 B00(U) + xi0 C^j(U) xi_j + B^{jk}(U) xi_j xi_k.
struct SymbolMatrix {
    Eigen::MatrixXd value;
    Eigen::VectorXd u;
    double xi0 = 0.0;
    Eigen::VectorXd xi;
    double scale = 0.0;  // |xi0^2 B00| + |xi0 C| + |B|, the rank reference
};

SymbolMatrix symbol_matrix(const SecondOrderSystem& sos, const StateVector& u, double xi0, const Direction& xi);

struct DispersionRoot {
    double root = 0.0;
    int multiplicity = 0;
};

/// Zeros of det B(., xi) with multiplicities, computed as eigenvalues of the
/// pencil of the frozen first-order reduction (speeds lambda = -xi0). The
/// (d-1)n structural zeros of that pencil are discarded.
std::vector<DispersionRoot> dispersion_roots(const SecondOrderSystem& sos, const StateVector& u, const Direction& xi,
                                             const Tolerances& tol = {});

/// Orthonormal basis of ker B(xi0, xi). Throws HyperbolicityViolation when its
/// dimension differs from the multiplicity of the root cluster containing xi0.
Eigen::MatrixXd amplitude_space(const SecondOrderSystem& sos, const StateVector& u, double xi0, const Direction& xi,
                                const Tolerances& tol = {});

struct HyperbolicityReport {
    bool b00_negdef = false;
    double b00_min_eigenvalue = 0.0;  // smallest eigenvalue of -sym(B00)

    bool roots_real_nonzero = false;
    double worst_imag = 0.0;
    double smallest_abs_root = 0.0;

    bool multiplicity_constant = false;
    std::vector<std::vector<int>> multiplicity_patterns;  // one sorted multiset per sample

    bool kernel_dims_match = false;
    int worst_multiplicity = 0;  // (nu, dim ker) of the worst cluster
    int worst_kernel_dim = 0;

    std::vector<Eigen::VectorXd> samples;
    std::vector<std::string> notes;
    bool verdict = false;
};

HyperbolicityReport check_hyperbolicity(const SecondOrderSystem& sos, const StateVector& u,
                                        const std::vector<Direction>& samples, const Tolerances& tol = {});

/// Characteristic mode: speed, multiplicity and orthonormal kernel basis of
/// -speed A0 + A(xi).
struct Mode {
    double speed = 0.0;
    int multiplicity = 0;
    Eigen::MatrixXd basis;
};

struct ModeSet {
    Eigen::VectorXd xi;
    std::vector<Mode> modes;  // sorted by speed; excludes the structural zero mode
    std::optional<Mode> zero_mode;

    int nonzero_multiplicity() const;
};

/// Speeds of the pencil (A(xi)(V), A0(V)), clustered, as used for mode
/// continuation. Throws NotHyperbolicError on a complex speed.
struct SpeedSpectrum {
    std::vector<linalg::RealCluster> clusters;
    double radius = 0.0;
};
SpeedSpectrum speed_spectrum(const FirstOrderSystem& fos, const Eigen::VectorXd& state, const Direction& xi,
                             const Tolerances& tol = {});

ModeSet first_order_modes(const FirstOrderSystem& fos, const StateVector& state, const Direction& xi,
                          const Tolerances& tol = {});

/// max over samples of |q - xi0^{(d-1)n} p| / (1 + |q|) with q the determinant
/// of the reduced symbol and p the determinant of B(xi0, xi).
double verify_lemma1_factorization(const SecondOrderSystem& sos, const StateVector& u, const Direction& xi,
                                   std::span<const double> xi0_samples);

/// `count` sample frequencies: Chebyshev points on [0.1, 3] with alternating sign.
std::vector<double> default_xi0_samples(int count = 10);

struct KernelReport {
    int modes_checked = 0;
    int nonzero_multiplicity = 0;
    double max_subspace_angle = 0.0;      // sin of the largest principal angle
    double max_structure_residual = 0.0;  // |x_alpha - xi_alpha x| / |v|
    double max_symbol_residual = 0.0;     // |B(xi0,xi) x| / (|B| |x|)
    int zero_mode_dim = 0;
    int expected_zero_mode_dim = 0;
    double max_left_kernel_residual = 0.0;
};

/// Checks that every non-zero first-order mode is the lift of an amplitude
/// space and that the zero mode has dimension (d-1)n. Throws LemmaViolation.
KernelReport verify_lemma1_kernels(const SecondOrderSystem& sos, const StateVector& u, const Direction& xi,
                                   const Tolerances& tol = {});

inline constexpr double kSubspaceAngleTol = 1e-8;
inline constexpr double kStructureTol = 1e-8;

}  // namespace hypermode
