#include "hypermode/systems.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hypermode/errors.hpp"

namespace hypermode {

StateVector StateVector::u_state(Eigen::VectorXd values, int n) {
    if (values.size() != n) throw DimensionError("U-state must have length n = " + std::to_string(n));
    return StateVector(std::move(values), StateRole::U);
}

StateVector StateVector::extended(Eigen::VectorXd values, int n, int d) {
    if (values.size() != (d + 2) * n) {
        throw DimensionError("extended state must have length (d+2)n = " + std::to_string((d + 2) * n));
    }
    return StateVector(std::move(values), StateRole::Extended);
}

StateVector StateVector::generic(Eigen::VectorXd values) { return StateVector(std::move(values), StateRole::Generic); }

Direction::Direction(Eigen::VectorXd xi) : xi_(std::move(xi)) {
    if (xi_.size() == 0) throw ValidationError("direction must have d >= 1 components");
    if (std::abs(xi_.norm() - 1.0) > 1e-12) throw ValidationError("direction is not a unit vector");
}

Direction Direction::normalized(const Eigen::VectorXd& v) {
    const double norm = v.norm();
    if (!(norm > 0.0)) throw ValidationError("cannot normalize a zero direction");
    return Direction(v / norm);
}

bool SecondOrderSystem::constant_coefficients() const {
    if (!B00.is_constant()) return false;
    for (const auto& c : C) {
        if (!c.is_constant()) return false;
    }
    for (const auto& b : B) {
        if (!b.is_constant()) return false;
    }
    return true;
}

namespace {

void require_square(const PolyMatrixFn& f, int n, int nvars, const std::string& label) {
    if (f.rows() != n || f.cols() != n) {
        throw ValidationError(label + " must be " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                              std::to_string(f.rows()) + "x" + std::to_string(f.cols()));
    }
    if (f.nvars() != nvars) {
        throw ValidationError(label + " must be a function of " + std::to_string(nvars) + " state components");
    }
}

void require_square(const MatrixFn& f, int m, const std::string& label) {
    if (f.rows() != m || f.cols() != m || f.nvars() != m) {
        throw ValidationError(label + " must be an " + std::to_string(m) + "x" + std::to_string(m) +
                              " function of " + std::to_string(m) + " state components");
    }
}

}  // namespace

void SecondOrderSystem::validate() const {
    if (n <= 0 || d <= 0) throw ValidationError("n and d must be positive");
    require_square(B00, n, n, "B00");
    if (static_cast<int>(C.size()) != d) {
        throw ValidationError("C must have d = " + std::to_string(d) + " entries, got " + std::to_string(C.size()));
    }
    if (static_cast<int>(B.size()) != d * d) {
        throw ValidationError("B must have d*d = " + std::to_string(d * d) + " entries, got " +
                              std::to_string(B.size()));
    }
    for (int j = 0; j < d; ++j) require_square(C[j], n, n, "C" + std::to_string(j + 1));
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) require_square(Bjk(j, k), n, n, "B" + std::to_string(j + 1) + std::to_string(k + 1));
    }
    if (H.rows() != n || H.cols() != 1 || H.nvars() != (d + 2) * n) {
        throw ValidationError("H must be an n x 1 function of (U, P, Q_1..Q_d), i.e. " +
                              std::to_string((d + 2) * n) + " variables");
    }
}

void FirstOrderSystem::validate() const {
    if (m <= 0 || d <= 0) throw ValidationError("m and d must be positive");
    require_square(A0, m, "A0");
    if (static_cast<int>(A.size()) != d) {
        throw ValidationError("A must have d = " + std::to_string(d) + " entries, got " + std::to_string(A.size()));
    }
    for (int k = 0; k < d; ++k) require_square(A[k], m, "A" + std::to_string(k + 1));
    if (G.rows() != m || G.cols() != 1 || G.nvars() != m) {
        throw ValidationError("G must be an m x 1 function of the m state components");
    }
    if (structural_zero_dim < 0 || structural_zero_dim > m) throw ValidationError("structural_zero_dim out of range");
}

bool FirstOrderSystem::constant_coefficients() const {
    if (!A0.is_constant()) return false;
    for (const auto& a : A) {
        if (!a.is_constant()) return false;
    }
    return true;
}

Eigen::MatrixXd FirstOrderSystem::symbol(const Eigen::VectorXd& state, const Direction& xi) const {
    if (xi.dim() != d) throw DimensionError("direction has wrong dimension");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < d; ++k) out += xi[k] * A[k](state);
    return out;
}

Eigen::MatrixXd eval_matrix(const PolyMatrixFn& f, const StateVector& s) { return f.eval(s.values()); }

std::vector<Direction> sample_directions(int d, int count, std::uint64_t seed) {
    if (d <= 0) throw ValidationError("d must be positive");
    std::vector<Direction> out;
    if (d == 1) {
        out.emplace_back(Eigen::VectorXd::Constant(1, 1.0));
        out.emplace_back(Eigen::VectorXd::Constant(1, -1.0));
        return out;
    }
    std::mt19937_64 rng(seed);
    if (d == 2) {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double offset = unif(rng);
        for (int i = 0; i < count; ++i) {
            const double angle = 2.0 * std::numbers::pi * (i + offset) / count;
            Eigen::VectorXd v(2);
            v << std::cos(angle), std::sin(angle);
            out.push_back(Direction::normalized(v));
        }
        return out;
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    while (static_cast<int>(out.size()) < count) {
        Eigen::VectorXd v(d);
        for (int k = 0; k < d; ++k) v[k] = normal(rng);
        if (v.norm() > 1e-3) out.push_back(Direction::normalized(v));
    }
    return out;
}

}  // namespace hypermode
