#include <doctest.h>

#include <set>

#include "hypermode/errors.hpp"
#include "hypermode/systems.hpp"

using namespace hypermode;

TEST_SUITE("systems") {

TEST_CASE("direction must be a unit covector") {
    CHECK_NOTHROW(Direction(Eigen::Vector2d(0.6, 0.8)));
    CHECK_THROWS_AS(Direction(Eigen::Vector2d(1.0, 1.0)), ValidationError);
    const Direction d = Direction::normalized(Eigen::Vector2d(3.0, 4.0));
    CHECK(d[0] == doctest::Approx(0.6));
    CHECK((-d)[1] == doctest::Approx(-0.8));
}

TEST_CASE("every builtin validates and has the advertised shape") {
    for (const auto& name : builtin_model_names()) {
        const System sys = builtin_model(name);
        std::visit([](const auto& s) { CHECK_NOTHROW(s.validate()); }, sys);
    }
    CHECK(std::get<SecondOrderSystem>(builtin_model("wave2d-iso")).d == 2);
    CHECK(std::get<FirstOrderSystem>(builtin_model("p-system")).m == 2);
    CHECK(std::get<SecondOrderSystem>(builtin_model("wave1d")).constant_coefficients());
    CHECK_FALSE(std::get<SecondOrderSystem>(builtin_model("nlwave-qsl")).constant_coefficients());
    CHECK_THROWS_AS(builtin_model("no-such-model"), ValidationError);
}

TEST_CASE("random-qsl depends on the seed and is reproducible") {
    const auto a = std::get<SecondOrderSystem>(builtin_model("random-qsl", 3));
    const auto b = std::get<SecondOrderSystem>(builtin_model("random-qsl", 3));
    const auto c = std::get<SecondOrderSystem>(builtin_model("random-qsl", 4));
    CHECK(a.B00 == b.B00);
    CHECK_FALSE(a.B00 == c.B00);
}

TEST_CASE("random hyperbolic systems have negative definite B00 and symmetric C") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto s = random_hyperbolic_system(1 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 2), seed);
        const Eigen::VectorXd u = Eigen::VectorXd::Zero(s.n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-s.B00.eval(u));
        CHECK(es.eigenvalues().minCoeff() > 0.0);
        for (const auto& c : s.C) CHECK((c.eval(u) - c.eval(u).transpose()).norm() < 1e-14);
    }
}

TEST_CASE("validation rejects inconsistent shapes") {
    auto s = std::get<SecondOrderSystem>(builtin_model("wave1d"));
    s.C.clear();
    CHECK_THROWS_AS(s.validate(), ValidationError);
    auto f = std::get<FirstOrderSystem>(builtin_model("burgers"));
    f.m = 2;
    CHECK_THROWS_AS(f.validate(), ValidationError);
}

TEST_CASE("sample directions are unit, reproducible and distinct") {
    const auto d1 = sample_directions(1, 8, 1);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0][0] == 1.0);
    CHECK(d1[1][0] == -1.0);
    for (int d : {2, 3}) {
        const auto a = sample_directions(d, 8, 5);
        const auto b = sample_directions(d, 8, 5);
        REQUIRE(a.size() == 8);
        std::set<double> first;
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(a[i].xi().norm() - 1.0) < 1e-12);
            CHECK(a[i].xi() == b[i].xi());
            first.insert(a[i][0]);
        }
        CHECK(first.size() == 8);
    }
}

}
