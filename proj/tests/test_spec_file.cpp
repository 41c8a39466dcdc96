#include <doctest.h>

#include "hypermode/errors.hpp"
#include "hypermode/spec_file.hpp"

using namespace hypermode;

namespace {

const char* kWave = R"({
  "kind": "second-order",
  "name": "w",
  "n": 1,
  "d": 1,
  "B00": [[[{"coeff": -1.0, "powers": [0]}]]],
  "C": [[[[]]]],
  "B": [[[[[{"coeff": 1.0, "powers": [0]}, {"coeff": 1.0, "powers": [2]}]]]]],
  "H": [[{"coeff": -0.5, "powers": [0, 1, 0]}]]
})";

}  // namespace

TEST_SUITE("spec_file") {

TEST_CASE("second-order document parses into coefficient polynomials") {
    const System sys = parse_system(kWave);
    const auto& s = std::get<SecondOrderSystem>(sys);
    CHECK(s.n == 1);
    CHECK(s.d == 1);
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(1, 2.0);
    CHECK(s.B00.eval(u)(0, 0) == -1.0);
    CHECK(s.C[0].eval(u)(0, 0) == 0.0);
    CHECK(s.Bjk(0, 0).eval(u)(0, 0) == 5.0);
    CHECK(s.H.nvars() == 3);
}

TEST_CASE("print then parse reproduces every builtin polynomial system") {
    for (const auto& name : builtin_model_names()) {
        if (name == "p-system") continue;
        const System sys = builtin_model(name);
        const std::string once = print_system(sys);
        const std::string twice = print_system(parse_system(once));
        CHECK_MESSAGE(once == twice, name);
    }
}

TEST_CASE("closure-backed systems cannot be printed") {
    CHECK_THROWS_AS(print_system(builtin_model("p-system")), Unsupported);
}

TEST_CASE("malformed text reports line and column") {
    const std::string text = "{\n  \"kind\": \"first-order\",\n  \"m\": 1,,\n}";
    try {
        parse_system(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("schema violations are validation errors") {
    std::string wrong_rows = kWave;
    wrong_rows.replace(wrong_rows.find("\"n\": 1"), 6, "\"n\": 2");
    CHECK_THROWS_AS(parse_system(wrong_rows), ValidationError);

    std::string unknown = kWave;
    unknown.replace(unknown.find("\"name\""), 6, "\"nmae\"");
    CHECK_THROWS_AS(parse_system(unknown), ValidationError);

    CHECK_THROWS_AS(parse_system(R"({"kind": "third-order"})"), ValidationError);
    CHECK_THROWS_AS(parse_system(R"([1, 2])"), ValidationError);
}

TEST_CASE("powers must match the variable count") {
    std::string bad = kWave;
    bad.replace(bad.find("[0, 1, 0]"), 9, "[0, 1]");
    CHECK_THROWS_AS(parse_system(bad), ValidationError);
}

}
