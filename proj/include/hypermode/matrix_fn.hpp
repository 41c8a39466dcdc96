#pragma once

#include <functional>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "hypermode/poly.hpp"

namespace hypermode {

/// State-dependent coefficient matrix.
///
/// Either polynomial (serializable, exactly differentiable) or backed by a
/// closure with a caller-supplied partial derivative. Closures exist for
/// built-in models whose coefficients are not polynomial.
class MatrixFn {
public:
    using EvalFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
    using PartialFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&, int)>;

    MatrixFn() = default;
    MatrixFn(PolyMatrixFn poly);  // NOLINT: implicit by intent

    static MatrixFn custom(int rows, int cols, int nvars, std::string label, EvalFn eval, PartialFn partial);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }

    Eigen::MatrixXd operator()(const Eigen::VectorXd& state) const;
    Eigen::MatrixXd partial(const Eigen::VectorXd& state, int index) const;

    /// nullptr for closure-backed functions.
    const PolyMatrixFn* polynomial() const { return poly_.get(); }
    bool is_constant() const { return poly_ && poly_->is_constant(); }
    const std::string& label() const { return label_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    int nvars_ = 0;
    std::shared_ptr<const PolyMatrixFn> poly_;
    EvalFn eval_;
    PartialFn partial_;
    std::string label_;
};

}  // namespace hypermode
