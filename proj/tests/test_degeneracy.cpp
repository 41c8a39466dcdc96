#include <doctest.h>

#include <cmath>

#include "hypermode/degeneracy.hpp"
#include "hypermode/errors.hpp"

using namespace hypermode;

namespace {

const Direction kPlus(Eigen::VectorXd::Ones(1));

Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

/// Closed-form p-system GNL indicator: lambda = +-exp(-v/2), r = (1, -lambda)
/// normalized, grad lambda = (-lambda/2, 0).
double p_system_indicator(double v) {
    const double lambda = std::exp(-0.5 * v);
    return lambda / (2.0 * std::sqrt(1.0 + lambda * lambda));
}

FirstOrderSystem scaled_burgers(double a0) {
    auto f = std::get<FirstOrderSystem>(builtin_model("burgers"));
    f.A0 = PolyMatrixFn::constant(Eigen::MatrixXd::Constant(1, 1, a0), 1);
    return f;
}

}  // namespace

TEST_SUITE("degeneracy") {

TEST_CASE("Burgers is genuinely nonlinear with unit indicator") {
    const auto fos = std::get<FirstOrderSystem>(builtin_model("burgers"));
    const auto states = sample_states(1, 50, 2.0, 17);
    const auto rep = classify_modes(fos, states, {kPlus, -kPlus});
    CHECK(rep.errors.empty());
    REQUIRE(rep.rows.size() == 100);
    for (const auto& row : rep.rows) {
        CHECK(std::abs(row.indicator.value - 1.0) <= 1e-8);
        CHECK(row.cls == ModeClass::GNL);
    }
}

TEST_CASE("p-system indicator matches the closed-form eigensystem") {
    const auto fos = std::get<FirstOrderSystem>(builtin_model("p-system"));
    for (double v : {-1.0, -0.3, 0.0, 0.4, 1.2}) {
        for (double u : {-0.5, 0.7}) {
            const Eigen::Vector2d state(v, u);
            for (int mode = 0; mode < 2; ++mode) {
                const ModeField field(fos, kPlus, state, mode);
                CHECK(std::abs(gnl_indicator(field, state).value - p_system_indicator(v)) <= 1e-6);
                CHECK(std::abs(analytic_gnl_indicator(fos, state, kPlus, mode) - p_system_indicator(v)) <= 1e-10);
            }
        }
    }
    CHECK(p_system_indicator(0.0) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
}

TEST_CASE("constant coefficients are linearly degenerate") {
    const auto sos = std::get<SecondOrderSystem>(builtin_model("wave2d-iso"));
    const auto fos = reduce_linear(sos, StateVector::u_state(Eigen::VectorXd::Zero(1), 1));
    const auto rep = classify_modes(fos, sample_states(fos.m, 5, 1.0, 2), sample_directions(2, 8, 3));
    CHECK(rep.errors.empty());
    for (const auto& row : rep.rows) {
        CHECK(row.indicator.value <= 1e-12);
        CHECK(row.cls == ModeClass::LD);
    }
}

TEST_CASE("indicator is stable across finite-difference steps") {
    const auto fos = std::get<FirstOrderSystem>(builtin_model("p-system"));
    const Eigen::Vector2d state(0.3, 0.1);
    const ModeField field(fos, kPlus, state, 1);
    const double expect = p_system_indicator(0.3);
    for (double h : {1e-3, 1e-4, 1e-5, 1e-6}) {
        CAPTURE(h);
        CHECK(std::abs(gnl_indicator(field, state, h).value - expect) <= 1e-6);
    }
}

TEST_CASE("scaling A0 scales the indicator and keeps the class") {
    for (double c : {0.5, 2.0, 4.0}) {
        const auto fos = scaled_burgers(c);
        const ModeField field(fos, kPlus, scalar(0.3), 0);
        CHECK(gnl_indicator(field, scalar(0.3)).value == doctest::Approx(1.0 / c).epsilon(1e-8));
        CHECK(classify(gnl_indicator(field, scalar(0.3)).value, {}) == ModeClass::GNL);
    }
}

TEST_CASE("classification thresholds") {
    const DegeneracyConfig cfg;
    CHECK(classify(1e-7, cfg) == ModeClass::LD);
    CHECK(classify(1e-4, cfg) == ModeClass::Inconclusive);
    CHECK(classify(0.5, cfg) == ModeClass::GNL);
    CHECK(std::string(to_string(ModeClass::Inconclusive)) == "inconclusive");
}

TEST_CASE("quasisemilinear reductions are linearly degenerate") {
    for (const char* name : {"nlwave-qsl", "random-qsl"}) {
        const auto sos = std::get<SecondOrderSystem>(builtin_model(name, 3));
        const Prop1Result res = verify_prop1(sos, 100, 8, 3);
        CAPTURE(name);
        CHECK(res.n_states == 100);
        CHECK(res.max_indicator <= 1e-6);
        CHECK(res.max_u_block_norm <= 1e-8);
        CHECK(res.modes_checked > 0);
    }
}

TEST_CASE("linear degeneracy verification rejects a genuinely nonlinear system") {
    const auto fos = std::get<FirstOrderSystem>(builtin_model("burgers"));
    try {
        verify_linear_degeneracy(fos, std::nullopt, sample_states(1, 4, 1.0, 1), {kPlus});
        FAIL("expected PropositionViolation");
    } catch (const PropositionViolation& e) {
        CHECK(e.indicator() == doctest::Approx(1.0));
    }
}

TEST_CASE("tracking is refused outside the radius") {
    const auto fos = std::get<FirstOrderSystem>(builtin_model("burgers"));
    const ModeField field(fos, kPlus, scalar(0.0), 0, 0.1);
    CHECK(tracked_speed(field, scalar(0.05)) == doctest::Approx(0.05));
    CHECK_THROWS_AS(tracked_speed(field, scalar(0.5)), TrackingLoss);
}

TEST_CASE("equilibrium check") {
    const auto fos = std::get<FirstOrderSystem>(builtin_model("burgers-damped"));
    CHECK(check_equilibrium(fos, StateVector::generic(scalar(0.0))).holds);
    CHECK_FALSE(check_equilibrium(fos, StateVector::generic(scalar(1.0))).holds);
}

TEST_CASE("serial and parallel classification are identical") {
    const auto sos = std::get<SecondOrderSystem>(builtin_model("random-qsl", 5));
    const Reduction red = reduce_quasisemilinear(sos);
    const auto states = sample_states(red.target.m, 12, 0.5, 9);
    const auto dirs = sample_directions(2, 8, 10);
    const auto a = classify_modes(red.target, states, dirs, {}, Execution::Serial);
    const auto b = classify_modes(red.target, states, dirs, {}, Execution::Parallel);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].indicator.value == b.rows[i].indicator.value);
        CHECK(a.rows[i].speed == b.rows[i].speed);
        CHECK(a.rows[i].cls == b.rows[i].cls);
    }
    CHECK(a.errors.size() == b.errors.size());
}

}
