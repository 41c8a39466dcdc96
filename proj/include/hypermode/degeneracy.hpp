#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypermode/parallel.hpp"
#include "hypermode/reduction.hpp"
#include "hypermode/spectral.hpp"
#include "hypermode/systems.hpp"

namespace hypermode {

struct DegeneracyConfig {
    Tolerances spectral;
    double theta_ld = 1e-5;   // indicator below: linearly degenerate
    double theta_gnl = 1e-3;  // indicator above: genuinely nonlinear
    double prop1_tol = 1e-6;  // pass bound reported by verify
    double u_block_tol = 1e-8;
    std::optional<double> step;  // finite-difference step override
};

/// One characteristic field of a first-order system, identified by its index
/// among the sorted speed clusters at a reference state. The system must
/// outlive the field.
class ModeField {
public:
    ModeField(const FirstOrderSystem& system, Direction xi, Eigen::VectorXd v_ref, int mode_index,
              std::optional<double> radius = {}, Tolerances tol = {});

    const FirstOrderSystem& system() const { return *system_; }
    const Direction& direction() const { return xi_; }
    const Eigen::VectorXd& reference_state() const { return v_ref_; }
    int mode_index() const { return mode_index_; }
    double radius() const { return radius_; }
    double reference_speed() const { return ref_clusters_[static_cast<std::size_t>(mode_index_)].value; }
    int multiplicity() const { return ref_clusters_[static_cast<std::size_t>(mode_index_)].multiplicity; }
    const Tolerances& tolerances() const { return tol_; }

    /// Multiplicities of all clusters at the reference state, in speed order.
    std::vector<int> pattern() const;
    const std::vector<linalg::RealCluster>& reference_clusters() const { return ref_clusters_; }

private:
    const FirstOrderSystem* system_;
    Direction xi_;
    Eigen::VectorXd v_ref_;
    int mode_index_;
    double radius_;
    Tolerances tol_;
    std::vector<linalg::RealCluster> ref_clusters_;
};

/// Speed of the field at `state`, continued from the reference mode by
/// nearest-speed matching. Throws TrackingLoss on a pattern change, an
/// unstable matching, or a state outside the tracking radius.
double tracked_speed(const ModeField& field, const Eigen::VectorXd& state);

struct GnlIndicator {
    double value = 0.0;  // max over kernel basis vectors of |central difference|
    double lower = 0.0;
    double upper = 0.0;
    bool interval = false;  // central and one-sided differences disagree by > 10%
    double step = 0.0;
};

/// max over an orthonormal kernel basis r of |d/ds lambda(V + s r)| at s = 0.
GnlIndicator gnl_indicator(const ModeField& field, const Eigen::VectorXd& state, std::optional<double> step = {});

/// |l^T (dA(xi) - lambda dA0)[r] r| / |l^T A0 r| for a simple speed; the
/// cross-check for gnl_indicator. Throws Unsupported for multiple speeds.
double analytic_gnl_indicator(const FirstOrderSystem& fos, const Eigen::VectorXd& state, const Direction& xi,
                              int mode_index, const Tolerances& tol = {});

enum class ModeClass { GNL, LD, Inconclusive };
const char* to_string(ModeClass c);
ModeClass classify(double indicator, const DegeneracyConfig& cfg);

struct DegeneracyRow {
    int state_index = 0;
    int dir_index = 0;
    int mode_index = 0;
    double speed = 0.0;
    int multiplicity = 0;
    bool zero_mode = false;
    GnlIndicator indicator;
    ModeClass cls = ModeClass::Inconclusive;
};

struct GridError {
    int state_index = 0;
    int dir_index = 0;
    std::string message;
};

struct DegeneracyReport {
    double theta_ld = 0.0;
    double theta_gnl = 0.0;
    std::vector<DegeneracyRow> rows;
    std::vector<GridError> errors;
};

DegeneracyReport classify_modes(const FirstOrderSystem& fos, const std::vector<Eigen::VectorXd>& states,
                                const std::vector<Direction>& dirs, const DegeneracyConfig& cfg = {},
                                Execution exec = Execution::Parallel);

struct Prop1Result {
    double max_indicator = 0.0;
    double max_u_block_norm = 0.0;
    int n_states = 0;
    int n_dirs = 0;
    int modes_checked = 0;
};

/// Max GNL indicator over the non-zero modes at every (state, direction);
/// with a layout, also the largest U-block norm of a non-zero-mode kernel
/// vector. Throws PropositionViolation when the indicator exceeds theta_gnl
/// or the U-block norm exceeds u_block_tol.
Prop1Result verify_linear_degeneracy(const FirstOrderSystem& fos, const std::optional<BlockLayout>& layout,
                                     const std::vector<Eigen::VectorXd>& states, const std::vector<Direction>& dirs,
                                     const DegeneracyConfig& cfg = {}, Execution exec = Execution::Parallel);

/// Reduce a quasisemilinear system and check that every non-zero mode is
/// linearly degenerate at `n_states` random extended states in [-box, box]^m.
Prop1Result verify_prop1(const SecondOrderSystem& sos, int n_states, int n_dirs, std::uint64_t seed,
                         const DegeneracyConfig& cfg = {}, double box = 0.5, Execution exec = Execution::Parallel);

/// Uniform samples in [-box, box]^m.
std::vector<Eigen::VectorXd> sample_states(int m, int count, double box, std::uint64_t seed);

struct EquilibriumCheck {
    bool holds = false;
    double norm = 0.0;
};

/// G(V*) = 0 up to 1e-12 (1 + |V*|).
EquilibriumCheck check_equilibrium(const FirstOrderSystem& fos, const StateVector& v_star);

}  // namespace hypermode
