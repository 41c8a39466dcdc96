#include "hypermode/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypermode/errors.hpp"
#include "hypermode/reduction.hpp"

namespace hypermode {

namespace {

double scale_or_one(double radius) { return radius > 0.0 ? radius : 1.0; }

struct RawRoots {
    std::vector<std::complex<double>> roots;  // xi0 values, structural zeros removed
    double radius = 0.0;
};

RawRoots raw_dispersion_roots(const SecondOrderSystem& sos, const StateVector& u, const Direction& xi) {
    if (xi.dim() != sos.d) throw DimensionError("direction dimension differs from d");
    const FirstOrderSystem fos = reduce_linear(sos, u);
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(fos.m);
    auto speeds = linalg::pencil_eigenvalues(fos.symbol(origin, xi), fos.A0(origin));

    RawRoots out;
    out.radius = linalg::spectral_radius(speeds);
    std::sort(speeds.begin(), speeds.end(), [](const auto& a, const auto& b) { return std::abs(a) < std::abs(b); });
    const auto structural = static_cast<std::size_t>(fos.structural_zero_dim);
    for (std::size_t i = structural; i < speeds.size(); ++i) out.roots.push_back(-speeds[i]);
    return out;
}

}  // namespace

SymbolMatrix symbol_matrix(const SecondOrderSystem& sos, const StateVector& u, double xi0, const Direction& xi) {
    if (xi.dim() != sos.d) throw DimensionError("direction dimension differs from d");
    const Eigen::VectorXd& uv = u.values();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(sos.n, sos.n);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(sos.n, sos.n);
    for (int j = 0; j < sos.d; ++j) {
        c += xi[j] * sos.C[j].eval(uv);
        for (int k = 0; k < sos.d; ++k) b += xi[j] * xi[k] * sos.Bjk(j, k).eval(uv);
    }
    const Eigen::MatrixXd b00 = sos.B00.eval(uv);
    const double scale = xi0 * xi0 * b00.norm() + std::abs(xi0) * c.norm() + b.norm();
    return SymbolMatrix{xi0 * xi0 * b00 + xi0 * c + b, uv, xi0, xi.xi(), scale};
}

std::vector<DispersionRoot> dispersion_roots(const SecondOrderSystem& sos, const StateVector& u, const Direction& xi,
                                             const Tolerances& tol) {
    const RawRoots raw = raw_dispersion_roots(sos, u, xi);
    const double scale = scale_or_one(raw.radius);
    for (const auto& r : raw.roots) {
        if (std::abs(r.imag()) > tol.imag_rel * scale) {
            throw NotHyperbolicError("non-real dispersion root " + std::to_string(r.real()) + " + " +
                                         std::to_string(r.imag()) + "i",
                                     r.real(), r.imag());
        }
    }
    std::vector<DispersionRoot> out;
    for (const auto& c : linalg::cluster_real(raw.roots, tol.cluster_rel * scale)) {
        out.push_back(DispersionRoot{c.value, c.multiplicity});
    }
    return out;
}

Eigen::MatrixXd amplitude_space(const SecondOrderSystem& sos, const StateVector& u, double xi0, const Direction& xi,
                                const Tolerances& tol) {
    const auto roots = dispersion_roots(sos, u, xi, tol);
    double radius = 0.0;
    for (const auto& r : roots) radius = std::max(radius, std::abs(r.root));
    const double match_tol = tol.cluster_rel * scale_or_one(radius);
    const DispersionRoot* match = nullptr;
    for (const auto& r : roots) {
        if (std::abs(r.root - xi0) <= match_tol && (!match || std::abs(r.root - xi0) < std::abs(match->root - xi0))) {
            match = &r;
        }
    }
    if (!match) throw ValidationError("xi0 = " + std::to_string(xi0) + " is not a dispersion root");
    const SymbolMatrix sm = symbol_matrix(sos, u, xi0, xi);
    Eigen::MatrixXd basis = linalg::null_space(sm.value, tol.rank_rel, sm.scale);
    if (basis.cols() != match->multiplicity) {
        throw HyperbolicityViolation("amplitude space at xi0 = " + std::to_string(xi0) + " has dimension " +
                                     std::to_string(basis.cols()) + " but the root has multiplicity " +
                                     std::to_string(match->multiplicity));
    }
    return basis;
}

HyperbolicityReport check_hyperbolicity(const SecondOrderSystem& sos, const StateVector& u,
                                        const std::vector<Direction>& samples, const Tolerances& tol) {
    sos.validate();
    std::vector<Direction> dirs = samples;
    if (dirs.empty() && sos.d == 1) dirs = sample_directions(1, 2, 0);
    if (sos.d >= 2 && dirs.size() < 8) throw ValidationError("check_hyperbolicity needs at least 8 directions for d >= 2");

    HyperbolicityReport rep;
    const Eigen::MatrixXd b00 = sos.B00.eval(u.values());
    const Eigen::MatrixXd neg_sym = -0.5 * (b00 + b00.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym(neg_sym, Eigen::EigenvaluesOnly);
    rep.b00_min_eigenvalue = sym.eigenvalues()[0];
    rep.b00_negdef = rep.b00_min_eigenvalue > 0.0;

    rep.roots_real_nonzero = true;
    rep.kernel_dims_match = true;
    rep.smallest_abs_root = std::numeric_limits<double>::infinity();
    int worst_gap = -1;

    for (const auto& xi : dirs) {
        rep.samples.push_back(xi.xi());
        RawRoots raw;
        try {
            raw = raw_dispersion_roots(sos, u, xi);
        } catch (const ConditioningError& e) {
            rep.roots_real_nonzero = false;
            rep.kernel_dims_match = false;
            rep.notes.emplace_back(e.what());
            rep.multiplicity_patterns.emplace_back();
            continue;
        }
        const double scale = scale_or_one(raw.radius);
        bool real = true;
        for (const auto& r : raw.roots) {
            rep.worst_imag = std::max(rep.worst_imag, std::abs(r.imag()));
            rep.smallest_abs_root = std::min(rep.smallest_abs_root, std::abs(r));
            if (std::abs(r.imag()) > tol.imag_rel * scale) real = false;
            if (std::abs(r) < tol.cluster_rel * scale) rep.roots_real_nonzero = false;
        }
        if (!real) {
            rep.roots_real_nonzero = false;
            rep.kernel_dims_match = false;
            rep.multiplicity_patterns.emplace_back();
            continue;
        }
        const auto clusters = linalg::cluster_real(raw.roots, tol.cluster_rel * scale);
        std::vector<int> pattern;
        for (const auto& c : clusters) {
            pattern.push_back(c.multiplicity);
            const SymbolMatrix sm = symbol_matrix(sos, u, c.value, xi);
            const auto dim = static_cast<int>(linalg::null_space(sm.value, tol.rank_rel, sm.scale).cols());
            const int gap = std::abs(dim - c.multiplicity);
            if (gap > worst_gap) {
                worst_gap = gap;
                rep.worst_multiplicity = c.multiplicity;
                rep.worst_kernel_dim = dim;
            }
            if (dim != c.multiplicity) rep.kernel_dims_match = false;
        }
        std::sort(pattern.begin(), pattern.end());
        rep.multiplicity_patterns.push_back(std::move(pattern));
    }
    if (!std::isfinite(rep.smallest_abs_root)) rep.smallest_abs_root = 0.0;

    rep.multiplicity_constant = rep.roots_real_nonzero;
    for (const auto& p : rep.multiplicity_patterns) {
        if (p != rep.multiplicity_patterns.front()) rep.multiplicity_constant = false;
    }
    rep.verdict = rep.b00_negdef && rep.roots_real_nonzero && rep.multiplicity_constant && rep.kernel_dims_match;
    return rep;
}

int ModeSet::nonzero_multiplicity() const {
    int total = 0;
    for (const auto& m : modes) total += m.multiplicity;
    return total;
}

SpeedSpectrum speed_spectrum(const FirstOrderSystem& fos, const Eigen::VectorXd& state, const Direction& xi,
                             const Tolerances& tol) {
    const auto speeds = linalg::pencil_eigenvalues(fos.symbol(state, xi), fos.A0(state));
    SpeedSpectrum out;
    out.radius = linalg::spectral_radius(speeds);
    const double scale = scale_or_one(out.radius);
    for (const auto& s : speeds) {
        if (std::abs(s.imag()) > tol.imag_rel * scale) {
            throw NotHyperbolicError("complex characteristic speed " + std::to_string(s.real()) + " + " +
                                         std::to_string(s.imag()) + "i",
                                     s.real(), s.imag());
        }
    }
    out.clusters = linalg::cluster_real(speeds, tol.cluster_rel * scale);
    return out;
}

ModeSet first_order_modes(const FirstOrderSystem& fos, const StateVector& state, const Direction& xi,
                          const Tolerances& tol) {
    const Eigen::VectorXd& v = state.values();
    if (v.size() != fos.m) throw DimensionError("state length differs from m");
    const SpeedSpectrum spec = speed_spectrum(fos, v, xi, tol);
    const Eigen::MatrixXd a0 = fos.A0(v);
    const Eigen::MatrixXd axi = fos.symbol(v, xi);
    const double zero_tol = tol.cluster_rel * scale_or_one(spec.radius);

    ModeSet out;
    out.xi = xi.xi();
    for (const auto& c : spec.clusters) {
        const bool structural_zero = fos.structural_zero_dim > 0 && std::abs(c.value) <= zero_tol;
        const double speed = structural_zero ? 0.0 : c.value;
        Mode mode{speed, c.multiplicity, linalg::pencil_kernel(axi, a0, speed, tol.rank_rel)};
        if (mode.basis.cols() != c.multiplicity) {
            throw HyperbolicityViolation("speed " + std::to_string(speed) + " has multiplicity " +
                                         std::to_string(c.multiplicity) + " but a kernel of dimension " +
                                         std::to_string(mode.basis.cols()));
        }
        if (structural_zero) {
            out.zero_mode = std::move(mode);
        } else {
            out.modes.push_back(std::move(mode));
        }
    }
    return out;
}

double verify_lemma1_factorization(const SecondOrderSystem& sos, const StateVector& u, const Direction& xi,
                                   std::span<const double> xi0_samples) {
    const FirstOrderSystem fos = reduce_linear(sos, u);
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(fos.m);
    const Eigen::MatrixXd a0 = fos.A0(origin);
    const Eigen::MatrixXd axi = fos.symbol(origin, xi);
    const int power = (sos.d - 1) * sos.n;
    double worst = 0.0;
    for (double xi0 : xi0_samples) {
        const double q = (xi0 * a0 + axi).partialPivLu().determinant();
        const double p = symbol_matrix(sos, u, xi0, xi).value.partialPivLu().determinant();
        const double residual = std::abs(q - std::pow(xi0, power) * p) / (1.0 + std::abs(q));
        worst = std::max(worst, residual);
    }
    return worst;
}

std::vector<double> default_xi0_samples(int count) {
    std::vector<double> out;
    const double lo = 0.1;
    const double hi = 3.0;
    for (int i = 0; i < count; ++i) {
        const double t = std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * count));
        const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
        out.push_back(i % 2 == 0 ? x : -x);
    }
    return out;
}

KernelReport verify_lemma1_kernels(const SecondOrderSystem& sos, const StateVector& u, const Direction& xi,
                                   const Tolerances& tol) {
    const int n = sos.n;
    const int d = sos.d;
    const FirstOrderSystem fos = reduce_linear(sos, u);
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(fos.m);
    const ModeSet modes = first_order_modes(fos, StateVector::generic(origin), xi, tol);

    KernelReport rep;
    rep.expected_zero_mode_dim = (d - 1) * n;
    rep.zero_mode_dim = modes.zero_mode ? static_cast<int>(modes.zero_mode->basis.cols()) : 0;
    rep.nonzero_multiplicity = modes.nonzero_multiplicity();

    for (const auto& mode : modes.modes) {
        const double xi0 = -mode.speed;
        const Eigen::MatrixXd x = amplitude_space(sos, u, xi0, xi, tol);
        const Eigen::MatrixXd lifted = linalg::orthonormalize(lift_amplitude_space(x, xi0, xi));
        rep.max_subspace_angle = std::max(rep.max_subspace_angle, linalg::subspace_distance(lifted, mode.basis));

        const SymbolMatrix sm = symbol_matrix(sos, u, xi0, xi);
        const double symbol_norm = std::max(sm.scale, 1e-300);
        for (Eigen::Index c = 0; c < mode.basis.cols(); ++c) {
            const Eigen::VectorXd v = mode.basis.col(c);
            const Eigen::VectorXd amp = v.head(n) / xi0;
            for (int j = 0; j < d; ++j) {
                const double r = (v.segment((1 + j) * n, n) - xi[j] * amp).norm() / v.norm();
                rep.max_structure_residual = std::max(rep.max_structure_residual, r);
            }
            const double amp_norm = amp.norm();
            if (amp_norm > 0.0) {
                rep.max_symbol_residual =
                    std::max(rep.max_symbol_residual, (sm.value * amp).norm() / (symbol_norm * amp_norm));
            }
        }
        ++rep.modes_checked;
    }

    // Left kernel of A(xi): {(0, l_1..l_d) : xi_k l_k = 0}.
    const Eigen::MatrixXd left = linalg::left_null_space(fos.symbol(origin, xi), tol.rank_rel);
    for (Eigen::Index c = 0; c < left.cols(); ++c) {
        const Eigen::VectorXd l = left.col(c);
        Eigen::VectorXd contracted = Eigen::VectorXd::Zero(n);
        for (int k = 0; k < d; ++k) contracted += xi[k] * l.segment((1 + k) * n, n);
        rep.max_left_kernel_residual =
            std::max({rep.max_left_kernel_residual, l.head(n).norm(), contracted.norm()});
    }

    std::string failure;
    if (rep.zero_mode_dim != rep.expected_zero_mode_dim) {
        failure = "zero-mode dimension " + std::to_string(rep.zero_mode_dim) + " != (d-1)n = " +
                  std::to_string(rep.expected_zero_mode_dim);
    } else if (left.cols() != rep.expected_zero_mode_dim) {
        failure = "left kernel of A(xi) has dimension " + std::to_string(left.cols());
    } else if (rep.nonzero_multiplicity != 2 * n) {
        failure = "non-zero modes have total multiplicity " + std::to_string(rep.nonzero_multiplicity) + " != 2n";
    } else if (rep.max_subspace_angle > kSubspaceAngleTol) {
        failure = "lifted amplitude space deviates from first-order kernel (sin angle " +
                  std::to_string(rep.max_subspace_angle) + ")";
    } else if (rep.max_structure_residual > kStructureTol || rep.max_symbol_residual > kStructureTol) {
        failure = "first-order kernel vector lacks the structure x_alpha = xi_alpha x";
    } else if (rep.max_left_kernel_residual > kStructureTol) {
        failure = "left kernel of A(xi) is not of the form (0, l) with xi_k l_k = 0";
    }
    if (!failure.empty()) throw LemmaViolation(failure);
    return rep;
}

}  // namespace hypermode
