#include <doctest.h>

#include <cmath>

#include "hypermode/errors.hpp"
#include "hypermode/simulate.hpp"

using namespace hypermode;

namespace {

FirstOrderSystem advection(double speed) {
    FirstOrderSystem f;
    f.name = "advection";
    f.m = 1;
    f.d = 1;
    f.A0 = PolyMatrixFn::identity(1, 1);
    f.A = {PolyMatrixFn::constant(Eigen::MatrixXd::Constant(1, 1, speed), 1)};
    f.G = PolyMatrixFn(1, 1, 1);
    return f;
}

ScalarProfile sine(double a) {
    return ScalarProfile{[a](double x) { return a * std::sin(x); }, [a](double x) { return a * std::cos(x); },
                         2.0 * M_PI};
}

/// Integrate w' = -w^2 - kappa w with RK4 until w passes -1e8.
std::optional<double> integrate_slope(double w0, double kappa, double horizon) {
    auto f = [kappa](double w) { return -w * w - kappa * w; };
    double w = w0;
    double t = 0.0;
    double h = 1e-4;
    while (t < horizon) {
        h = std::min(1e-4, 1e-3 / std::max(1.0, std::abs(w)));
        const double k1 = f(w);
        const double k2 = f(w + 0.5 * h * k1);
        const double k3 = f(w + 0.5 * h * k2);
        const double k4 = f(w + h * k3);
        w += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        t += h;
        if (w < -1e8) return t;
    }
    return std::nullopt;
}

double advection_error(int N) {
    const Grid1D grid{N, 2.0 * M_PI};
    EvolveOptions opts;
    opts.T = 1.0;
    opts.max_frames = 4;
    const auto traj = evolve(advection(1.0), grid, initial_data(advection(1.0), std::nullopt, grid, 1.0), opts);
    double err = 0.0;
    for (int i = 0; i < N; ++i) err = std::max(err, std::abs(traj.states.back()(0, i) - std::sin(grid.x(i) - 1.0)));
    return err;
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("Riccati blowup time agrees with direct integration of the slope equation") {
    for (double kappa : {0.0, 0.5, 1.0, 2.0}) {
        for (double s : {-4.0, -2.5, -1.2, -0.9, -0.4}) {
            const auto closed = riccati_blowup_time(s, kappa);
            const auto numeric = integrate_slope(s, kappa, 20.0);
            CAPTURE(kappa);
            CAPTURE(s);
            REQUIRE(closed.has_value() == numeric.has_value());
            if (closed) CHECK(*closed == doctest::Approx(*numeric).epsilon(1e-3));
        }
    }
    CHECK(*riccati_blowup_time(-1.0, 0.0) == doctest::Approx(1.0));
    CHECK_FALSE(riccati_blowup_time(0.5, 0.0).has_value());
}

TEST_CASE("characteristics oracle for sine data") {
    const auto burgers = std::get<FirstOrderSystem>(builtin_model("burgers"));
    CHECK(min_slope(sine(2.0)) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(*characteristics_oracle(burgers, sine(1.0)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(*characteristics_oracle(burgers, sine(2.0)) == doctest::Approx(0.5).epsilon(1e-10));
    const auto damped = std::get<FirstOrderSystem>(builtin_model("burgers-damped"));
    CHECK(*characteristics_oracle(damped, sine(4.0)) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-10));
    CHECK_FALSE(characteristics_oracle(damped, sine(0.9)).has_value());
    CHECK_THROWS_AS(characteristics_oracle(advection(1.0), sine(1.0)), Unsupported);
}

TEST_CASE("max gradient of sampled sine") {
    const Grid1D grid{512, 2.0 * M_PI};
    const auto v = initial_data(advection(1.0), std::nullopt, grid, 3.0);
    CHECK(max_gradient(v, grid) == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("linear advection converges at first order") {
    double prev = advection_error(128);
    for (int N : {256, 512, 1024}) {
        const double err = advection_error(N);
        CAPTURE(N);
        CHECK(prev / err >= 1.8);
        prev = err;
    }
}

TEST_CASE("Burgers blowup estimate tracks the characteristics oracle") {
    const auto burgers = std::get<FirstOrderSystem>(builtin_model("burgers"));
    const Grid1D grid{2048, 2.0 * M_PI};
    EvolveOptions opts;
    opts.T = 2.0;
    const auto traj = evolve(burgers, grid, initial_data(burgers, std::nullopt, grid, 1.0), opts);
    CHECK(traj.status == RunStatus::BlowupDetected);
    const auto est = blowup_estimate(traj);
    REQUIRE(est.detected);
    CHECK(est.method == BlowupMethod::InverseGradientExtrapolation);
    CHECK(std::abs(est.t_est - 1.0) <= 0.05);
}

TEST_CASE("damped Burgers follows the Riccati threshold") {
    const auto fos = std::get<FirstOrderSystem>(builtin_model("burgers-damped"));
    const Grid1D grid{1024, 2.0 * M_PI};
    EvolveOptions opts;
    opts.T = 4.0;
    const auto super = evolve(fos, grid, initial_data(fos, std::nullopt, grid, 4.0), opts);
    CHECK(super.status == RunStatus::BlowupDetected);
    const auto sub = evolve(fos, grid, initial_data(fos, std::nullopt, grid, 0.9), opts);
    CHECK(sub.status == RunStatus::Completed);
    CHECK(sub.maxgrad.back() < sub.initial_maxgrad);
}

TEST_CASE("blowup estimate extrapolates an exact 1/(T - t) history") {
    Trajectory traj;
    for (int i = 0; i <= 40; ++i) {
        const double t = 0.02 * i;
        traj.times.push_back(t);
        traj.maxgrad.push_back(1.0 / (1.3 - t));
        traj.states.emplace_back(Eigen::MatrixXd::Zero(1, 1));
    }
    traj.initial_maxgrad = traj.maxgrad.front();
    traj.status = RunStatus::BlowupDetected;
    traj.detection_time = traj.times.back();
    const auto est = blowup_estimate(traj);
    CHECK(est.t_est == doctest::Approx(1.3).epsilon(1e-10));
    CHECK(est.frames_used == 20);

    traj.status = RunStatus::Completed;
    CHECK_FALSE(blowup_estimate(traj).detected);
}

TEST_CASE("wave and linearly degenerate reductions complete the horizon") {
    for (const char* name : {"wave1d", "nlwave-qsl"}) {
        const auto sos = std::get<SecondOrderSystem>(builtin_model(name));
        const auto res = qsl_contrast_experiment(sos, 0.5, 1.0, 256);
        CAPTURE(name);
        CHECK(res.trajectory.status == RunStatus::Completed);
        CHECK(res.summary.bounded);
        CHECK(res.summary.label.rfind("EXPLORATORY", 0) == 0);
    }
}

TEST_CASE("evolve preconditions and failure modes") {
    const auto burgers = std::get<FirstOrderSystem>(builtin_model("burgers"));
    const Grid1D grid{64, 2.0 * M_PI};
    const auto v0 = initial_data(burgers, std::nullopt, grid, 1.0);
    EvolveOptions bad_cfl;
    bad_cfl.cfl = 1.5;
    CHECK_THROWS_AS(evolve(burgers, grid, v0, bad_cfl), ValidationError);
    CHECK_THROWS_AS(evolve(burgers, grid, Eigen::MatrixXd::Zero(1, 10)), DimensionError);

    EvolveOptions collapse;
    collapse.min_dt = 1.0;
    CHECK(evolve(burgers, grid, v0, collapse).status == RunStatus::CflCollapse);

    // A = [[0, 1], [V1, 0]] loses hyperbolicity where V1 < 0.
    FirstOrderSystem f;
    f.name = "switch";
    f.m = 2;
    f.d = 1;
    f.A0 = PolyMatrixFn::identity(2, 2);
    PolyMatrixFn a(2, 2, 2);
    a(0, 1) = Polynomial::constant(2, 1.0);
    a(1, 0) = Polynomial::variable(2, 0);
    f.A = {MatrixFn(a)};
    f.G = PolyMatrixFn(2, 1, 2);
    try {
        evolve(f, grid, initial_data(f, std::nullopt, grid, 1.0));
        FAIL("expected SimulationAborted");
    } catch (const SimulationAborted& e) {
        CHECK(e.partial().states.size() == 1);
    }
}

TEST_CASE("serial and parallel step kernels are bitwise identical") {
    const auto sos = std::get<SecondOrderSystem>(builtin_model("nlwave-qsl"));
    const Reduction red = reduce_quasisemilinear(sos);
    const Grid1D grid{777, 2.0 * M_PI};
    const Eigen::MatrixXd v = initial_data(red.target, red.layout, grid, 0.8);

    CellOperators s_ops, p_ops;
    compute_cell_operators(red.target, v, {}, s_ops, Execution::Serial);
    compute_cell_operators(red.target, v, {}, p_ops, Execution::Parallel);
    CHECK(s_ops.radius == p_ops.radius);
    for (std::size_t i = 0; i < s_ops.transport.size(); ++i) REQUIRE(s_ops.transport[i] == p_ops.transport[i]);

    Eigen::MatrixXd s_out, p_out;
    transport_step(v, s_ops, 1e-3, grid.dx(), s_out, Execution::Serial);
    transport_step(v, p_ops, 1e-3, grid.dx(), p_out, Execution::Parallel);
    CHECK(s_out == p_out);
    source_step(red.target, v, 1e-3, s_out, Execution::Serial);
    source_step(red.target, v, 1e-3, p_out, Execution::Parallel);
    CHECK(s_out == p_out);

    const auto damped = std::get<FirstOrderSystem>(builtin_model("burgers-damped"));
    const auto v0 = initial_data(damped, std::nullopt, grid, 2.0);
    EvolveOptions serial, parallel;
    serial.exec = Execution::Serial;
    serial.T = parallel.T = 1.0;
    const auto a = evolve(damped, grid, v0, serial);
    const auto b = evolve(damped, grid, v0, parallel);
    CHECK(a.maxgrad == b.maxgrad);
    CHECK(a.states.back() == b.states.back());
}

}
