#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypermode/systems.hpp"

namespace hypermode {

/// Block order of a reduced state: (P, Q_1, ..., Q_d) or (P, Q_1, ..., Q_d, U).
struct BlockLayout {
    int n = 0;
    int d = 0;
    bool has_u_block = false;

    int m() const { return (d + 1 + (has_u_block ? 1 : 0)) * n; }
    int p_offset() const { return 0; }
    int q_offset(int j) const { return (1 + j) * n; }
    int u_offset() const { return (d + 1) * n; }
    std::vector<std::string> labels() const;
};

struct Reduction {
    SecondOrderSystem source;
    FirstOrderSystem target;
    BlockLayout layout;
};

/// Constant-coefficient first-order system obtained by freezing the
/// coefficients at u_star and substituting P = U_t, Q_j = U_{x^j}.
FirstOrderSystem reduce_linear(const SecondOrderSystem& sos, const StateVector& u_star);

/// First-order system in V = (P, Q_1..Q_d, U), augmented by U_t = P, whose
/// coefficients depend on the trailing U block only.
Reduction reduce_quasisemilinear(const SecondOrderSystem& sos);

/// Stack (xi0 x, xi_1 x, ..., xi_d x) for every column x of `x_basis`.
Eigen::MatrixXd lift_amplitude_space(const Eigen::MatrixXd& x_basis, double xi0, const Eigen::VectorXd& xi);
inline Eigen::MatrixXd lift_amplitude_space(const Eigen::MatrixXd& x_basis, double xi0, const Direction& xi) {
    return lift_amplitude_space(x_basis, xi0, xi.xi());
}

}  // namespace hypermode
