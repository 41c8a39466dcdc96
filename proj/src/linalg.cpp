#include "hypermode/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "hypermode/errors.hpp"

namespace hypermode::linalg {

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_tol, double scale) {
    const Eigen::Index cols = m.cols();
    if (m.rows() == 0 || cols == 0) return Eigen::MatrixXd::Identity(cols, cols);
    // Pad to square so the full right singular basis is always available.
    Eigen::MatrixXd square = Eigen::MatrixXd::Zero(std::max(m.rows(), cols), cols);
    square.topRows(m.rows()) = m;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(square, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double threshold = rel_tol * std::max(sv.size() > 0 ? sv[0] : 0.0, scale);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > threshold) ++rank;
    }
    return svd.matrixV().rightCols(cols - rank);
}

Eigen::MatrixXd left_null_space(const Eigen::MatrixXd& m, double rel_tol, double scale) {
    return null_space(m.transpose(), rel_tol, scale);
}

Eigen::MatrixXd pencil_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double lambda, double rel_tol) {
    return null_space(a - lambda * b, rel_tol, a.norm() + std::abs(lambda) * b.norm());
}

Eigen::MatrixXd pencil_left_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double lambda,
                                   double rel_tol) {
    return left_null_space(a - lambda * b, rel_tol, a.norm() + std::abs(lambda) * b.norm());
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
    if (m.cols() == 0) return m;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

double subspace_distance(const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2) {
    if (q1.cols() != q2.cols() || q1.rows() != q2.rows()) return 1.0;
    if (q1.cols() == 0) return 0.0;
    const Eigen::MatrixXd r12 = q1 - q2 * (q2.transpose() * q1);
    const Eigen::MatrixXd r21 = q2 - q1 * (q1.transpose() * q2);
    Eigen::JacobiSVD<Eigen::MatrixXd> s12(r12), s21(r21);
    return std::min(1.0, std::max(s12.singularValues()[0], s21.singularValues()[0]));
}

std::vector<std::complex<double>> pencil_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DimensionError("pencil matrices must be square and of equal size");
    }
    const Eigen::Index m = a.rows();
    std::vector<std::complex<double>> out;
    if (m == 1) {
        if (b(0, 0) == 0.0) throw ConditioningError("leading coefficient is singular");
        out.emplace_back(a(0, 0) / b(0, 0), 0.0);
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
    const auto& sv = svd.singularValues();
    if (!(sv[m - 1] > 1e-12 * sv[0])) {
        throw ConditioningError("leading coefficient is numerically singular (condition number > 1e12)");
    }
    const Eigen::MatrixXd reduced = b.partialPivLu().solve(a);
    Eigen::EigenSolver<Eigen::MatrixXd> es(reduced, false);
    if (es.info() != Eigen::Success) throw Error("eigenvalue iteration did not converge");
    out.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

std::vector<RealCluster> cluster_real(std::vector<std::complex<double>> values, double tol) {
    std::sort(values.begin(), values.end(),
              [](const auto& x, const auto& y) { return x.real() < y.real(); });
    std::vector<RealCluster> out;
    double sum = 0.0;
    double last = 0.0;
    for (const auto& v : values) {
        if (out.empty() || v.real() - last > tol) {
            if (!out.empty()) out.back().value = sum / out.back().multiplicity;
            out.push_back(RealCluster{v.real(), 0, 0.0});
            sum = 0.0;
        }
        auto& c = out.back();
        c.multiplicity += 1;
        c.max_imag = std::max(c.max_imag, std::abs(v.imag()));
        sum += v.real();
        last = v.real();
    }
    if (!out.empty()) out.back().value = sum / out.back().multiplicity;
    return out;
}

}  // namespace hypermode::linalg
