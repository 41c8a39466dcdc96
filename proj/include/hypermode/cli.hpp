#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hypermode/degeneracy.hpp"
#include "hypermode/spectral.hpp"

namespace hypermode::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct RunConfig {
    std::string subcommand;
    std::string model;      // builtin name, or empty
    std::string spec_path;  // spec file, or empty
    std::vector<std::string> overrides;
    std::vector<double> state;
    Tolerances tol;
    DegeneracyConfig degeneracy;
    int n_states = 0;
    int n_dirs = 8;
    std::uint64_t seed = kDefaultSeed;
    double box = 0.5;
    bool frozen = false;
    // simulate
    int N = 1024;
    double L = 6.283185307179586;
    double cfl = 0.5;
    double T = 2.0;
    double amplitude = 1.0;
    int csv_stride = 1;
    std::string out_path;
    std::string summary_path;
    int verbosity = 0;
};

/// Seed from HYPERMODE_SEED when set, otherwise kDefaultSeed.
std::uint64_t default_seed();

/// Apply "NAME=value" or "NAME(i,j)=value" overrides (NAME in B00, Cj, Bjk,
/// indices 1-based) to a second-order system. A whole-matrix override sets
/// value * I.
void apply_override(SecondOrderSystem& sos, const std::string& spec);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Exit codes: 0 success, 1 check/verifier failure, 2 usage,
/// parse, validation or precondition error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypermode::cli
