#include <doctest.h>

#include "hypermode/poly.hpp"

using namespace hypermode;

TEST_SUITE("poly") {

TEST_CASE("evaluation and partial derivatives of a bivariate polynomial") {
    // 3 x^2 y - 2 y + 5
    const Polynomial p(2, {{3.0, {2, 1}}, {-2.0, {0, 1}}, {5.0, {0, 0}}});
    const Eigen::Vector2d s(1.5, -2.0);
    CHECK(p(s) == doctest::Approx(3.0 * 2.25 * -2.0 + 4.0 + 5.0));
    CHECK(p.partial(0)(s) == doctest::Approx(6.0 * 1.5 * -2.0));
    CHECK(p.partial(1)(s) == doctest::Approx(3.0 * 2.25 - 2.0));
    CHECK(p.total_degree() == 3);
    CHECK_FALSE(p.is_constant());
    CHECK(Polynomial::constant(2, 4.0).is_constant());
}

TEST_CASE("products and sums agree with pointwise arithmetic") {
    const Polynomial x = Polynomial::variable(2, 0);
    const Polynomial y = Polynomial::variable(2, 1, 2.0);
    const Polynomial q = (x + y) * (x + Polynomial::constant(2, -1.0));
    for (double a : {-1.0, 0.3, 2.0}) {
        for (double b : {-0.5, 1.7}) {
            const Eigen::Vector2d s(a, b);
            CHECK(q(s) == doctest::Approx((a + 2.0 * b) * (a - 1.0)));
            CHECK(q.simplified()(s) == doctest::Approx(q(s)));
        }
    }
}

TEST_CASE("simplified merges like terms and drops cancellations") {
    const Polynomial p(1, {{1.0, {2}}, {2.0, {2}}, {1.0, {1}}, {-1.0, {1}}});
    const Polynomial s = p.simplified();
    REQUIRE(s.terms().size() == 1);
    CHECK(s.terms()[0].coeff == 3.0);
    CHECK(s.terms()[0].powers == std::vector<int>{2});
}

TEST_CASE("reindexing moves variables") {
    const Polynomial p(2, {{1.0, {1, 2}}});
    const int map[] = {3, 0};
    const Polynomial r = p.reindexed(4, map);
    Eigen::Vector4d s(2.0, 9.0, 9.0, 5.0);
    CHECK(r(s) == doctest::Approx(5.0 * 4.0));
}

TEST_CASE("matrix product of polynomial matrices") {
    PolyMatrixFn a(2, 2, 1);
    a(0, 0) = Polynomial::variable(1, 0);
    a(0, 1) = Polynomial::constant(1, 1.0);
    a(1, 1) = Polynomial::variable(1, 0, -1.0);
    const PolyMatrixFn b = PolyMatrixFn::identity(2, 1) + 2.0 * a;
    const Eigen::VectorXd s = Eigen::VectorXd::Constant(1, 0.7);
    const Eigen::MatrixXd expect = a.eval(s) * b.eval(s);
    CHECK((( a * b).eval(s) - expect).norm() < 1e-14);
    CHECK(a.transposed().eval(s) == a.eval(s).transpose());
    CHECK(a.partial(0).eval(s)(1, 1) == -1.0);
}

}
