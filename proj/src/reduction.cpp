#include "hypermode/reduction.hpp"

#include <numeric>

#include "hypermode/errors.hpp"

namespace hypermode {

std::vector<std::string> BlockLayout::labels() const {
    std::vector<std::string> out{"P"};
    for (int j = 0; j < d; ++j) out.push_back("Q" + std::to_string(j + 1));
    if (has_u_block) out.emplace_back("U");
    return out;
}

FirstOrderSystem reduce_linear(const SecondOrderSystem& sos, const StateVector& u_star) {
    sos.validate();
    const int n = sos.n;
    const int d = sos.d;
    const int m = (d + 1) * n;
    const Eigen::VectorXd& u = u_star.values();
    if (u.size() != n) throw DimensionError("reduce_linear: U* must have length n");

    Eigen::MatrixXd a0 = Eigen::MatrixXd::Identity(m, m);
    a0.topLeftCorner(n, n) = sos.B00.eval(u);

    FirstOrderSystem fos;
    fos.name = sos.name + "/linear";
    fos.m = m;
    fos.d = d;
    fos.A0 = PolyMatrixFn::constant(a0, m);
    for (int k = 0; k < d; ++k) {
        Eigen::MatrixXd ak = Eigen::MatrixXd::Zero(m, m);
        ak.block(0, 0, n, n) = sos.C[k].eval(u);
        for (int j = 0; j < d; ++j) ak.block(0, (1 + j) * n, n, n) = sos.Bjk(j, k).eval(u);
        ak.block((1 + k) * n, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
        fos.A.push_back(PolyMatrixFn::constant(ak, m));
    }
    fos.G = PolyMatrixFn(m, 1, m);
    fos.structural_zero_dim = (d - 1) * n;
    return fos;
}

Reduction reduce_quasisemilinear(const SecondOrderSystem& sos) {
    sos.validate();
    const int n = sos.n;
    const int d = sos.d;
    BlockLayout layout{n, d, true};
    const int m = layout.m();

    // U_i lives at u_offset + i in the extended state.
    std::vector<int> u_map(static_cast<std::size_t>(n));
    std::iota(u_map.begin(), u_map.end(), layout.u_offset());

    PolyMatrixFn a0 = PolyMatrixFn::identity(m, m);
    a0.set_block(0, 0, sos.B00.reindexed(m, u_map));

    std::vector<MatrixFn> ak;
    const PolyMatrixFn minus_identity = PolyMatrixFn::constant(-Eigen::MatrixXd::Identity(n, n), m);
    for (int k = 0; k < d; ++k) {
        PolyMatrixFn a(m, m, m);
        a.set_block(0, 0, sos.C[k].reindexed(m, u_map));
        for (int j = 0; j < d; ++j) a.set_block(0, layout.q_offset(j), sos.Bjk(j, k).reindexed(m, u_map));
        a.set_block(layout.q_offset(k), 0, minus_identity);
        ak.emplace_back(std::move(a));
    }

    // H is ordered (U, P, Q_1..Q_d); the extended state is (P, Q_1..Q_d, U).
    std::vector<int> h_map(static_cast<std::size_t>((d + 2) * n));
    for (int i = 0; i < n; ++i) {
        h_map[i] = layout.u_offset() + i;
        h_map[n + i] = layout.p_offset() + i;
        for (int j = 0; j < d; ++j) h_map[(2 + j) * n + i] = layout.q_offset(j) + i;
    }
    PolyMatrixFn g(m, 1, m);
    g.set_block(0, 0, sos.H.reindexed(m, h_map));
    for (int i = 0; i < n; ++i) g(layout.u_offset() + i, 0) = Polynomial::variable(m, layout.p_offset() + i);

    Reduction out{sos, FirstOrderSystem{}, layout};
    out.target.name = sos.name + "/quasisemilinear";
    out.target.m = m;
    out.target.d = d;
    out.target.A0 = std::move(a0);
    out.target.A = std::move(ak);
    out.target.G = std::move(g);
    out.target.structural_zero_dim = d * n;
    return out;
}

Eigen::MatrixXd lift_amplitude_space(const Eigen::MatrixXd& x_basis, double xi0, const Eigen::VectorXd& xi) {
    if (xi0 == 0.0 && (xi.size() == 0 || xi.norm() == 0.0)) {
        throw ValidationError("degenerate covector: xi0 and xi are both zero");
    }
    const Eigen::Index n = x_basis.rows();
    const Eigen::Index d = xi.size();
    Eigen::MatrixXd out((d + 1) * n, x_basis.cols());
    out.topRows(n) = xi0 * x_basis;
    for (Eigen::Index j = 0; j < d; ++j) out.middleRows((1 + j) * n, n) = xi[j] * x_basis;
    return out;
}

}  // namespace hypermode
