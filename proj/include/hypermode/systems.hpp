#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "hypermode/matrix_fn.hpp"
#include "hypermode/poly.hpp"

namespace hypermode {

enum class StateRole { U, Extended, Generic };

/// A point in state space tagged with the role it plays.
class StateVector {
public:
    /// U-state of a second-order system with n components.
    static StateVector u_state(Eigen::VectorXd values, int n);
    /// Extended state (P, Q_1..Q_d, U) of length (d+2)n.
    static StateVector extended(Eigen::VectorXd values, int n, int d);
    static StateVector generic(Eigen::VectorXd values);

    const Eigen::VectorXd& values() const { return values_; }
    StateRole role() const { return role_; }
    int size() const { return static_cast<int>(values_.size()); }

private:
    StateVector(Eigen::VectorXd values, StateRole role) : values_(std::move(values)), role_(role) {}

    Eigen::VectorXd values_;
    StateRole role_;
};

/// Unit covector xi in S^{d-1}.
class Direction {
public:
    /// Throws ValidationError unless | |xi| - 1 | <= 1e-12.
    explicit Direction(Eigen::VectorXd xi);
    static Direction normalized(const Eigen::VectorXd& v);

    const Eigen::VectorXd& xi() const { return xi_; }
    int dim() const { return static_cast<int>(xi_.size()); }
    double operator[](int k) const { return xi_[k]; }
    Direction operator-() const { return Direction(-xi_); }

private:
    Eigen::VectorXd xi_;
};

/// B00(U) U_tt + C^j(U) U_{t x^j} + B^{jk}(U) U_{x^j x^k} = H(U, U_t, U_x).
///
/// Coefficients are polynomials in the n components of U. H is an n x 1
/// polynomial column over (U, P, Q_1, ..., Q_d), i.e. (d+2)n variables.
struct SecondOrderSystem {
    std::string name;
    int n = 0;
    int d = 0;
    PolyMatrixFn B00;
    std::vector<PolyMatrixFn> C;  // d entries, C[j] = C^{j+1}
    std::vector<PolyMatrixFn> B;  // d*d entries, B[j*d+k] = B^{(j+1)(k+1)}
    PolyMatrixFn H;

    const PolyMatrixFn& Bjk(int j, int k) const { return B[static_cast<std::size_t>(j) * d + k]; }
    PolyMatrixFn& Bjk(int j, int k) { return B[static_cast<std::size_t>(j) * d + k]; }

    /// True iff every coefficient entry has total degree 0.
    bool constant_coefficients() const;
    /// Throws ValidationError naming the offending matrix.
    void validate() const;
};

/// A^0(V) V_t + A^k(V) V_{x^k} = G(V) with V in R^m.
struct FirstOrderSystem {
    std::string name;
    int m = 0;
    int d = 0;
    MatrixFn A0;
    std::vector<MatrixFn> A;  // d entries
    MatrixFn G;               // m x 1
    /// Dimension of the identically-zero speed mode built in by a reduction;
    /// 0 for systems given directly.
    int structural_zero_dim = 0;

    void validate() const;
    bool constant_coefficients() const;
    /// A(xi)(V) = A^k(V) xi_k.
    Eigen::MatrixXd symbol(const Eigen::VectorXd& state, const Direction& xi) const;
};

using System = std::variant<SecondOrderSystem, FirstOrderSystem>;

Eigen::MatrixXd eval_matrix(const PolyMatrixFn& f, const StateVector& s);

/// wave1d, wave2d-iso, burgers, burgers-damped, p-system, nlwave-qsl, random-qsl.
/// `seed` is used only by random-qsl.
System builtin_model(const std::string& name, std::uint64_t seed = 42);
std::vector<std::string> builtin_model_names();

/// Constant-coefficient system with -B00 SPD, symmetric C^j and
/// B(xi) = W(xi)^T W(xi) + eps I; rejection-sampled until it has simple
/// roots at the sampled directions.
SecondOrderSystem random_hyperbolic_system(int n, int d, std::uint64_t seed);

/// Quasisemilinear analogue with coefficients of degree <= 2 in U.
SecondOrderSystem random_quasisemilinear_system(int n, int d, std::uint64_t seed);

/// Deterministic sample directions: d = 1 gives {+1, -1}; d = 2 equispaced
/// angles with a seeded offset; d >= 3 seeded Gaussian samples.
std::vector<Direction> sample_directions(int d, int count, std::uint64_t seed);

}  // namespace hypermode
