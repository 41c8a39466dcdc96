#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hypermode/cli.hpp"
#include "hypermode/errors.hpp"

using namespace hypermode;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content = {}) {
    const fs::path p = fs::temp_directory_path() / ("hypermode_test_" + name);
    if (!content.empty()) std::ofstream(p) << content;
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes over every builtin and subcommand") {
    // 0 success, 2 precondition: first-order input where a second-order
    // system is required, or d != 1 for simulate.
    const std::map<std::string, std::map<std::string, int>> expect = {
        {"wave1d", {{"check", 0}, {"spectrum", 0}, {"reduce", 0}, {"degeneracy", 0}, {"verify", 0}, {"simulate", 0}}},
        {"wave2d-iso",
         {{"check", 0}, {"spectrum", 0}, {"reduce", 0}, {"degeneracy", 0}, {"verify", 0}, {"simulate", 2}}},
        {"nlwave-qsl",
         {{"check", 0}, {"spectrum", 0}, {"reduce", 0}, {"degeneracy", 0}, {"verify", 0}, {"simulate", 0}}},
        {"random-qsl",
         {{"check", 0}, {"spectrum", 0}, {"reduce", 0}, {"degeneracy", 0}, {"verify", 0}, {"simulate", 2}}},
        {"burgers", {{"check", 2}, {"spectrum", 0}, {"reduce", 2}, {"degeneracy", 0}, {"verify", 2}, {"simulate", 0}}},
        {"burgers-damped",
         {{"check", 2}, {"spectrum", 0}, {"reduce", 2}, {"degeneracy", 0}, {"verify", 2}, {"simulate", 0}}},
        {"p-system", {{"check", 2}, {"spectrum", 0}, {"reduce", 2}, {"degeneracy", 0}, {"verify", 2}, {"simulate", 0}}},
    };
    for (const auto& [model, per_cmd] : expect) {
        for (const auto& [cmd, code] : per_cmd) {
            std::vector<std::string> args{cmd, "--model", model};
            if (cmd == "simulate") args.insert(args.end(), {"--N", "128", "--T", "0.5"});
            if (cmd == "verify") args.insert(args.end(), {"--states", "20"});
            const Result r = run(args);
            CAPTURE(model);
            CAPTURE(cmd);
            CAPTURE(r.err);
            CHECK(r.code == code);
            if (code == 0 && cmd != "reduce") CHECK(nlohmann::json::parse(r.out).at("schema_version") == 1);
            if (code == 2) CHECK_FALSE(r.err.empty());
        }
    }
}

TEST_CASE("elliptic and positive B00 overrides fail check") {
    const Result elliptic = run({"check", "--model", "wave1d", "--override", "B11=-4"});
    CHECK(elliptic.code == 1);
    const auto doc = nlohmann::json::parse(elliptic.out);
    CHECK(doc["hyperbolicity"]["roots_real_nonzero"]["ok"] == false);

    const Result positive = run({"check", "--model", "wave1d", "--override", "B00=1"});
    CHECK(positive.code == 1);
    CHECK(nlohmann::json::parse(positive.out)["hyperbolicity"]["b00_negdef"]["ok"] == false);

    CHECK(run({"check", "--model", "wave1d", "--override", "B11(1,1)=9"}).code == 0);
    CHECK(run({"check", "--model", "wave1d", "--override", "X=1"}).code == 2);
    CHECK(run({"check", "--model", "wave1d", "--override", "B22=1"}).code == 2);
    CHECK(run({"check", "--model", "burgers", "--override", "B11=1"}).code == 2);
}

TEST_CASE("override grammar") {
    auto sos = std::get<SecondOrderSystem>(builtin_model("random-qsl", 2));
    const Eigen::VectorXd u = Eigen::VectorXd::Zero(2);
    cli::apply_override(sos, "C2=3");
    CHECK(sos.C[1].eval(u) == 3.0 * Eigen::MatrixXd::Identity(2, 2));
    cli::apply_override(sos, "B12(2,1)=-0.5");
    CHECK(sos.Bjk(0, 1).eval(u)(1, 0) == -0.5);
    CHECK_THROWS_AS(cli::apply_override(sos, "B12(3,1)=1"), ValidationError);
    CHECK_THROWS_AS(cli::apply_override(sos, "B00=abc"), ValidationError);
}

TEST_CASE("spec-file inputs and input errors") {
    const fs::path broken = temp_file("broken.json", R"({"kind": "second-order", "n": 2, "d": 1,
        "B00": [[[{"coeff": -1, "powers": [0]}]]], "C": [[[[]]]], "B": [[[[{"coeff": 1, "powers": [0]}]]]]})");
    const Result r = run({"check", "--spec", broken.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("B00") != std::string::npos);

    const fs::path syntax = temp_file("syntax.json", "{\n  \"kind\": ,\n}");
    const Result s = run({"check", "--spec", syntax.string()});
    CHECK(s.code == 2);
    CHECK(s.err.find("line 2") != std::string::npos);

    CHECK(run({"check", "--spec", "/nonexistent/system.json"}).code == 2);
    CHECK(run({"check"}).code == 2);
    CHECK(run({"check", "--model", "wave1d", "--spec", broken.string()}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);

    // A reduced system printed by `reduce` is a valid first-order spec.
    const Result red = run({"reduce", "--model", "nlwave-qsl"});
    REQUIRE(red.code == 0);
    const fs::path reduced = temp_file("reduced.json", red.out);
    const Result deg = run({"degeneracy", "--spec", reduced.string(), "--states", "5"});
    CHECK(deg.code == 0);
    CHECK(deg.out.find("GNL") == std::string::npos);

    const Result frozen = run({"reduce", "--model", "nlwave-qsl", "--frozen", "--state", "0.5"});
    REQUIRE(frozen.code == 0);
    const auto doc = nlohmann::json::parse(frozen.out);
    CHECK(doc["m"] == 2);
    CHECK(run({"reduce", "--model", "nlwave-qsl", "--frozen", "--state", "0.5,1"}).code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"check", "--model", "random-qsl", "--seed", "4"},
             {"spectrum", "--model", "wave2d-iso"},
             {"degeneracy", "--model", "random-qsl", "--states", "10"},
             {"verify", "--model", "random-qsl", "--seed", "7", "--states", "20"},
             {"simulate", "--model", "burgers", "--N", "128"}}) {
        CHECK(run(args).out == run(args).out);
    }
}

TEST_CASE("seed precedence: flag over environment over default") {
    CHECK(cli::default_seed() == 42);
    const auto seed_of = [](const Result& r) { return nlohmann::json::parse(r.out)["seed"].get<std::uint64_t>(); };
    CHECK(seed_of(run({"check", "--model", "wave1d"})) == 42);
    ::setenv("HYPERMODE_SEED", "9", 1);
    CHECK(cli::default_seed() == 9);
    CHECK(seed_of(run({"check", "--model", "wave1d"})) == 9);
    CHECK(seed_of(run({"check", "--model", "wave1d", "--seed", "3"})) == 3);
    const std::string a = run({"degeneracy", "--model", "random-qsl", "--states", "5"}).out;
    ::unsetenv("HYPERMODE_SEED");
    CHECK(a == run({"degeneracy", "--model", "random-qsl", "--states", "5", "--seed", "9"}).out);
}

TEST_CASE("verify reports every residual") {
    const Result r = run({"verify", "--model", "nlwave-qsl"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["factorization"]["max_relative_residual"].get<double>() <= 1e-9);
    CHECK(doc["kernels"]["ok"] == true);
    CHECK(doc["linear_degeneracy"]["states"].get<int>() >= 100);
    CHECK(doc["linear_degeneracy"]["max_indicator"].get<double>() <= 1e-6);
    CHECK(doc["linear_degeneracy"]["max_u_block_norm"].get<double>() <= 1e-8);
}

TEST_CASE("verify fails on a tightened tolerance") {
    // A negative pass bound cannot be met, so every verifier path reports failure.
    const Result r = run({"verify", "--model", "wave1d", "--theta-gnl", "-1"});
    CHECK(r.code == 1);
    CHECK_FALSE(nlohmann::json::parse(r.out)["failures"].empty());
}

TEST_CASE("simulate writes the trajectory and summary files") {
    const fs::path csv = temp_file("traj.csv");
    const fs::path summary = temp_file("summary.json");
    const Result r = run({"simulate", "--model", "burgers", "--N", "1024", "--csv-stride", "8", "--out", csv.string(), "--summary",
                          summary.string()});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(read_file(summary));
    CHECK(doc["status"] == "blowup-detected");
    CHECK(doc["blowup"]["detected"] == true);
    CHECK(std::abs(doc["blowup"]["T_est"].get<double>() - 1.0) < 0.1);
    CHECK(doc["maxgrad_history"].size() > 2);

    std::ifstream in(csv);
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "t,x,V1");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    const int frames = static_cast<int>(doc["maxgrad_history"].size());
    CHECK(rows == 1024 * ((frames + 7) / 8));

    const Result wave = run({"simulate", "--model", "wave1d", "--N", "128", "--T", "0.5"});
    CHECK(nlohmann::json::parse(wave.out)["status"] == "completed");
    CHECK(nlohmann::json::parse(wave.out).contains("contrast"));
    CHECK(run({"simulate", "--model", "burgers", "--cfl", "2"}).code == 2);
}

TEST_CASE("verbose diagnostics go to stderr only") {
    const Result quiet = run({"check", "--model", "wave1d"});
    const Result loud = run({"check", "--model", "wave1d", "-v"});
    CHECK(quiet.err.empty());
    CHECK(loud.err.find("wave1d") != std::string::npos);
    CHECK(quiet.out == loud.out);
}

}
