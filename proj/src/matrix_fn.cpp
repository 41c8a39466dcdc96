#include "hypermode/matrix_fn.hpp"

#include "hypermode/errors.hpp"

namespace hypermode {

MatrixFn::MatrixFn(PolyMatrixFn poly)
    : rows_(poly.rows()), cols_(poly.cols()), nvars_(poly.nvars()),
      poly_(std::make_shared<const PolyMatrixFn>(std::move(poly))), label_("polynomial") {}

MatrixFn MatrixFn::custom(int rows, int cols, int nvars, std::string label, EvalFn eval, PartialFn partial) {
    MatrixFn out;
    out.rows_ = rows;
    out.cols_ = cols;
    out.nvars_ = nvars;
    out.eval_ = std::move(eval);
    out.partial_ = std::move(partial);
    out.label_ = std::move(label);
    return out;
}

Eigen::MatrixXd MatrixFn::operator()(const Eigen::VectorXd& state) const {
    if (state.size() != nvars_) {
        throw DimensionError("state has length " + std::to_string(state.size()) + ", expected " +
                             std::to_string(nvars_));
    }
    if (poly_) return poly_->eval(state);
    return eval_(state);
}

Eigen::MatrixXd MatrixFn::partial(const Eigen::VectorXd& state, int index) const {
    if (state.size() != nvars_) throw DimensionError("partial: state length mismatch");
    if (index < 0 || index >= nvars_) throw DimensionError("partial: variable index out of range");
    if (poly_) return poly_->partial(index).eval(state);
    return partial_(state, index);
}

}  // namespace hypermode
