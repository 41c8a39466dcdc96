#include <algorithm>
#include <cmath>
#include <random>

#include "hypermode/errors.hpp"
#include "hypermode/spectral.hpp"
#include "hypermode/systems.hpp"

namespace hypermode {

namespace {

SecondOrderSystem empty_second_order(std::string name, int n, int d) {
    SecondOrderSystem s;
    s.name = std::move(name);
    s.n = n;
    s.d = d;
    s.B00 = PolyMatrixFn(n, n, n);
    s.C.assign(static_cast<std::size_t>(d), PolyMatrixFn(n, n, n));
    s.B.assign(static_cast<std::size_t>(d * d), PolyMatrixFn(n, n, n));
    s.H = PolyMatrixFn(n, 1, (d + 2) * n);
    return s;
}

Eigen::MatrixXd constant_1x1(double v) { return Eigen::MatrixXd::Constant(1, 1, v); }

SecondOrderSystem wave1d() {
    constexpr double c = 2.0;
    auto s = empty_second_order("wave1d", 1, 1);
    s.B00 = PolyMatrixFn::constant(constant_1x1(-1.0), 1);
    s.Bjk(0, 0) = PolyMatrixFn::constant(constant_1x1(c * c), 1);
    return s;
}

SecondOrderSystem wave2d_iso() {
    constexpr double c = 1.0;
    auto s = empty_second_order("wave2d-iso", 1, 2);
    s.B00 = PolyMatrixFn::constant(constant_1x1(-1.0), 1);
    s.Bjk(0, 0) = PolyMatrixFn::constant(constant_1x1(c * c), 1);
    s.Bjk(1, 1) = PolyMatrixFn::constant(constant_1x1(c * c), 1);
    return s;
}

SecondOrderSystem nlwave_qsl() {
    // U_tt = (1 + U^2) U_xx
    auto s = empty_second_order("nlwave-qsl", 1, 1);
    s.B00 = PolyMatrixFn::constant(constant_1x1(-1.0), 1);
    s.Bjk(0, 0)(0, 0) = Polynomial(1, {Term{1.0, {0}}, Term{1.0, {2}}});
    return s;
}

FirstOrderSystem burgers(bool damped) {
    FirstOrderSystem f;
    f.name = damped ? "burgers-damped" : "burgers";
    f.m = 1;
    f.d = 1;
    f.A0 = PolyMatrixFn::identity(1, 1);
    PolyMatrixFn a(1, 1, 1);
    a(0, 0) = Polynomial::variable(1, 0);
    f.A = {MatrixFn(std::move(a))};
    PolyMatrixFn g(1, 1, 1);
    if (damped) g(0, 0) = Polynomial::variable(1, 0, -1.0);
    f.G = std::move(g);
    return f;
}

FirstOrderSystem p_system() {
    // v_t - u_x = 0, u_t + p(v)_x = 0 with p'(v) = -exp(-v); V = (v, u).
    FirstOrderSystem f;
    f.name = "p-system";
    f.m = 2;
    f.d = 1;
    f.A0 = PolyMatrixFn::identity(2, 2);
    auto eval = [](const Eigen::VectorXd& v) {
        Eigen::MatrixXd a(2, 2);
        a << 0.0, -1.0, -std::exp(-v[0]), 0.0;
        return a;
    };
    auto partial = [](const Eigen::VectorXd& v, int index) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
        if (index == 0) a(1, 0) = std::exp(-v[0]);
        return a;
    };
    f.A = {MatrixFn::custom(2, 2, 2, "p-system A1: [[0,-1],[-exp(-v),0]]", eval, partial)};
    f.G = PolyMatrixFn(2, 1, 2);
    return f;
}

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols, double scale) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = scale * unif(rng);
    }
    return m;
}

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n, double scale) {
    const Eigen::MatrixXd r = random_matrix(rng, n, n, scale);
    return 0.5 * (r + r.transpose());
}

Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n, double shift) {
    const Eigen::MatrixXd l = random_matrix(rng, n, n, 0.7);
    return l * l.transpose() + shift * Eigen::MatrixXd::Identity(n, n);
}

/// Distinct real roots at every sampled direction, separated by at least
/// 1e-3 of the spectral radius.
bool has_simple_separated_roots(const SecondOrderSystem& sos, const StateVector& u,
                                const std::vector<Direction>& dirs) {
    const auto rep = check_hyperbolicity(sos, u, dirs);
    if (!rep.verdict) return false;
    for (const auto& xi : dirs) {
        const auto roots = dispersion_roots(sos, u, xi);
        double radius = 0.0;
        for (const auto& r : roots) radius = std::max(radius, std::abs(r.root));
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (roots[i].multiplicity != 1) return false;
            if (i > 0 && roots[i].root - roots[i - 1].root < 1e-3 * radius) return false;
        }
    }
    return true;
}

constexpr int kMaxRejections = 1000;

}  // namespace

SecondOrderSystem random_hyperbolic_system(int n, int d, std::uint64_t seed) {
    if (n <= 0 || d <= 0) throw ValidationError("random system needs n, d >= 1");
    std::mt19937_64 rng(seed);
    const auto dirs = sample_directions(d, 8, seed ^ 0x9e3779b97f4a7c15ULL);
    const StateVector origin = StateVector::u_state(Eigen::VectorXd::Zero(n), n);
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        auto s = empty_second_order("random-hyperbolic", n, d);
        s.B00 = PolyMatrixFn::constant(-random_spd(rng, n, 0.5), n);
        for (int j = 0; j < d; ++j) s.C[j] = PolyMatrixFn::constant(random_symmetric(rng, n, 0.8), n);
        std::vector<Eigen::MatrixXd> w;
        for (int j = 0; j < d; ++j) w.push_back(random_matrix(rng, n, n, 1.0));
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                Eigen::MatrixXd b = 0.5 * (w[j].transpose() * w[k] + w[k].transpose() * w[j]);
                if (j == k) b += 0.5 * Eigen::MatrixXd::Identity(n, n);
                s.Bjk(j, k) = PolyMatrixFn::constant(b, n);
            }
        }
        if (has_simple_separated_roots(s, origin, dirs)) return s;
    }
    throw Error("random_hyperbolic_system: rejection sampling exhausted");
}

SecondOrderSystem random_quasisemilinear_system(int n, int d, std::uint64_t seed) {
    if (n <= 0 || d <= 0) throw ValidationError("random system needs n, d >= 1");
    std::mt19937_64 rng(seed);
    const auto dirs = sample_directions(d, 8, seed ^ 0x9e3779b97f4a7c15ULL);

    // Hyperbolicity is checked at U = 0 and at sampled states in [-1, 1]^n.
    std::vector<StateVector> states{StateVector::u_state(Eigen::VectorXd::Zero(n), n)};
    {
        std::mt19937_64 srng(seed + 1);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (int i = 0; i < 16; ++i) {
            Eigen::VectorXd u(n);
            for (int k = 0; k < n; ++k) u[k] = unif(srng);
            states.push_back(StateVector::u_state(u, n));
        }
    }

    const auto linear_in_u = [&](double const_scale, double slope_scale, bool symmetric) {
        PolyMatrixFn out = PolyMatrixFn::constant(
            symmetric ? random_symmetric(rng, n, const_scale) : random_matrix(rng, n, n, const_scale), n);
        for (int i = 0; i < n; ++i) {
            const Eigen::MatrixXd slope =
                symmetric ? random_symmetric(rng, n, slope_scale) : random_matrix(rng, n, n, slope_scale);
            PolyMatrixFn term(n, n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) term(r, c) = Polynomial::variable(n, i, slope(r, c));
            }
            out += term;
        }
        return out.simplified();
    };

    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        auto s = empty_second_order("random-qsl", n, d);

        // B00(U) = -(M + |U|^2 I)
        PolyMatrixFn b00 = PolyMatrixFn::constant(-random_spd(rng, n, 0.5), n);
        for (int r = 0; r < n; ++r) {
            for (int i = 0; i < n; ++i) {
                std::vector<int> powers(n, 0);
                powers[i] = 2;
                b00(r, r) += Polynomial(n, {Term{-1.0, powers}});
            }
        }
        s.B00 = b00.simplified();

        for (int j = 0; j < d; ++j) s.C[j] = linear_in_u(0.6, 0.3, true);

        // B^{jk}(U) = sym(W_j(U)^T W_k(U)) + 0.5 delta_jk I keeps B(xi)(U) positive definite.
        std::vector<PolyMatrixFn> w;
        for (int j = 0; j < d; ++j) w.push_back(linear_in_u(1.0, 0.3, false));
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                PolyMatrixFn b = 0.5 * (w[j].transposed() * w[k] + w[k].transposed() * w[j]);
                if (j == k) b += PolyMatrixFn::constant(0.5 * Eigen::MatrixXd::Identity(n, n), n);
                s.Bjk(j, k) = b.simplified();
            }
        }

        // H = -0.1 P: linear damping source.
        for (int i = 0; i < n; ++i) s.H(i, 0) = Polynomial::variable((d + 2) * n, n + i, -0.1);

        const bool ok = std::all_of(states.begin(), states.end(),
                                    [&](const StateVector& u) { return has_simple_separated_roots(s, u, dirs); });
        if (ok) return s;
    }
    throw Error("random_quasisemilinear_system: rejection sampling exhausted");
}

std::vector<std::string> builtin_model_names() {
    return {"wave1d", "wave2d-iso", "burgers", "burgers-damped", "p-system", "nlwave-qsl", "random-qsl"};
}

System builtin_model(const std::string& name, std::uint64_t seed) {
    if (name == "wave1d") return wave1d();
    if (name == "wave2d-iso") return wave2d_iso();
    if (name == "burgers") return burgers(false);
    if (name == "burgers-damped") return burgers(true);
    if (name == "p-system") return p_system();
    if (name == "nlwave-qsl") return nlwave_qsl();
    if (name == "random-qsl") return random_quasisemilinear_system(2, 2, seed);
    std::string list;
    for (const auto& n : builtin_model_names()) list += (list.empty() ? "" : ", ") + n;
    throw ValidationError("unknown model '" + name + "'; available: " + list);
}

}  // namespace hypermode
