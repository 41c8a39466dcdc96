#include "hypermode/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "hypermode/errors.hpp"
#include "hypermode/reduction.hpp"
#include "hypermode/report.hpp"
#include "hypermode/simulate.hpp"
#include "hypermode/spec_file.hpp"

namespace hypermode::cli {

namespace {

using report::Json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Precondition failures that map to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

Json system_summary(const System& sys) {
    if (const auto* s = std::get_if<SecondOrderSystem>(&sys))
        return Json{{"kind", "second-order"}, {"name", s->name}, {"n", s->n}, {"d", s->d}};
    const auto& f = std::get<FirstOrderSystem>(sys);
    return Json{{"kind", "first-order"},
                {"name", f.name},
                {"m", f.m},
                {"d", f.d},
                {"structural_zero_dim", f.structural_zero_dim}};
}

Json header(const RunConfig& cfg, const System& sys) {
    return Json{{"schema_version", report::kSchemaVersion},
                {"command", cfg.subcommand},
                {"system", system_summary(sys)},
                {"seed", cfg.seed}};
}

System load_input(const RunConfig& cfg) {
    if (cfg.model.empty() == cfg.spec_path.empty()) throw UsageError("exactly one of --model or --spec is required");
    try {
        System sys = cfg.model.empty() ? load_system(cfg.spec_path) : builtin_model(cfg.model, cfg.seed);
        if (!cfg.overrides.empty()) {
            auto* sos = std::get_if<SecondOrderSystem>(&sys);
            if (!sos) throw UsageError("--override applies to second-order systems only");
            for (const auto& o : cfg.overrides) apply_override(*sos, o);
            sos->validate();
        }
        return sys;
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

const SecondOrderSystem& require_second_order(const System& sys, const std::string& cmd) {
    const auto* sos = std::get_if<SecondOrderSystem>(&sys);
    if (!sos) throw UsageError(cmd + " requires a second-order system");
    return *sos;
}

Eigen::VectorXd state_or_zero(const RunConfig& cfg, int size) {
    if (cfg.state.empty()) return Eigen::VectorXd::Zero(size);
    if (static_cast<int>(cfg.state.size()) != size)
        throw UsageError("--state has " + std::to_string(cfg.state.size()) + " components, expected " +
                         std::to_string(size));
    return Eigen::Map<const Eigen::VectorXd>(cfg.state.data(), size);
}

Json directions_json(const std::vector<Direction>& dirs) {
    Json out = Json::array();
    for (const auto& xi : dirs) out.push_back(report::to_json(xi.xi()));
    return out;
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

int cmd_check(const RunConfig& cfg, const System& sys, std::ostream& out) {
    const auto& sos = require_second_order(sys, "check");
    const auto u = StateVector::u_state(state_or_zero(cfg, sos.n), sos.n);
    const auto dirs = sample_directions(sos.d, cfg.n_dirs, cfg.seed);
    const auto rep = check_hyperbolicity(sos, u, dirs, cfg.tol);
    Json doc = header(cfg, sys);
    doc["state"] = report::to_json(u.values());
    doc["tolerances"] = report::to_json(cfg.tol);
    doc["hyperbolicity"] = report::to_json(rep);
    emit(out, doc);
    return rep.verdict ? kExitOk : kExitFail;
}

int cmd_spectrum(const RunConfig& cfg, const System& sys, std::ostream& out) {
    Json doc = header(cfg, sys);
    doc["tolerances"] = report::to_json(cfg.tol);
    Json per_dir = Json::array();
    if (const auto* sos = std::get_if<SecondOrderSystem>(&sys)) {
        const auto u = StateVector::u_state(state_or_zero(cfg, sos->n), sos->n);
        const auto dirs = sample_directions(sos->d, cfg.n_dirs, cfg.seed);
        const auto rep = check_hyperbolicity(*sos, u, dirs, cfg.tol);
        doc["state"] = report::to_json(u.values());
        doc["hyperbolicity"] = report::to_json(rep);
        if (!rep.roots_real_nonzero) {
            emit(out, doc);
            return kExitFail;
        }
        const FirstOrderSystem lin = reduce_linear(*sos, u);
        const auto v = StateVector::generic(Eigen::VectorXd::Zero(lin.m));
        for (const auto& xi : dirs) {
            const auto roots = dispersion_roots(*sos, u, xi, cfg.tol);
            Json amp = Json::array();
            for (const auto& r : roots) {
                const Eigen::MatrixXd x = amplitude_space(*sos, u, r.root, xi, cfg.tol);
                amp.push_back(Json{{"xi0", r.root}, {"basis", report::to_json(x)}});
            }
            per_dir.push_back(Json{{"direction", report::to_json(xi.xi())},
                                   {"roots", report::to_json(roots)},
                                   {"amplitude_spaces", amp},
                                   {"first_order_modes", report::to_json(first_order_modes(lin, v, xi, cfg.tol))}});
        }
    } else {
        const auto& fos = std::get<FirstOrderSystem>(sys);
        const auto v = StateVector::generic(state_or_zero(cfg, fos.m));
        doc["state"] = report::to_json(v.values());
        for (const auto& xi : sample_directions(fos.d, cfg.n_dirs, cfg.seed))
            per_dir.push_back(report::to_json(first_order_modes(fos, v, xi, cfg.tol)));
    }
    doc["directions"] = per_dir;
    emit(out, doc);
    return kExitOk;
}

int cmd_reduce(const RunConfig& cfg, const System& sys, std::ostream& out) {
    const auto& sos = require_second_order(sys, "reduce");
    if (cfg.frozen) {
        const auto u = StateVector::u_state(state_or_zero(cfg, sos.n), sos.n);
        out << print_system(System{reduce_linear(sos, u)}) << '\n';
    } else {
        out << print_system(System{reduce_quasisemilinear(sos).target}) << '\n';
    }
    return kExitOk;
}

int cmd_degeneracy(const RunConfig& cfg, const System& sys, std::ostream& out) {
    FirstOrderSystem fos;
    std::optional<BlockLayout> layout;
    if (const auto* sos = std::get_if<SecondOrderSystem>(&sys)) {
        Reduction red = reduce_quasisemilinear(*sos);
        fos = std::move(red.target);
        layout = red.layout;
    } else {
        fos = std::get<FirstOrderSystem>(sys);
    }
    const int n_states = cfg.n_states > 0 ? cfg.n_states : 20;
    const auto states = sample_states(fos.m, n_states, cfg.box, cfg.seed);
    const auto dirs = sample_directions(fos.d, cfg.n_dirs, cfg.seed + 1);
    const auto rep = classify_modes(fos, states, dirs, cfg.degeneracy);

    Json doc = header(cfg, sys);
    doc["box"] = cfg.box;
    doc["tolerances"] = report::to_json(cfg.tol);
    if (layout) doc["layout"] = layout->labels();
    Json st = Json::array();
    for (const auto& s : states) st.push_back(report::to_json(s));
    doc["states"] = st;
    doc["directions"] = directions_json(dirs);
    doc["degeneracy"] = report::to_json(rep);
    emit(out, doc);
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const System& sys, std::ostream& out) {
    const auto& sos = require_second_order(sys, "verify");
    const auto u = StateVector::u_state(state_or_zero(cfg, sos.n), sos.n);
    const auto dirs = sample_directions(sos.d, cfg.n_dirs, cfg.seed);
    const auto xi0 = default_xi0_samples(10);

    Json doc = header(cfg, sys);
    doc["state"] = report::to_json(u.values());
    doc["tolerances"] = report::to_json(cfg.tol);
    doc["directions"] = directions_json(dirs);
    bool ok = true;
    std::vector<std::string> failures;

    double fact = 0.0;
    for (const auto& xi : dirs) fact = std::max(fact, verify_lemma1_factorization(sos, u, xi, xi0));
    const bool fact_ok = fact <= 1e-9;
    doc["factorization"] = Json{{"max_relative_residual", fact}, {"bound", 1e-9}, {"ok", fact_ok}};
    if (!fact_ok) failures.push_back("factorization residual " + std::to_string(fact));

    Json kernels = Json::array();
    bool kernels_ok = true;
    for (const auto& xi : dirs) {
        try {
            kernels.push_back(report::to_json(verify_lemma1_kernels(sos, u, xi, cfg.tol)));
        } catch (const Error& e) {
            kernels_ok = false;
            kernels.push_back(Json{{"error", e.what()}});
            failures.push_back(std::string("kernels: ") + e.what());
        }
    }
    doc["kernels"] = Json{{"per_direction", kernels}, {"ok", kernels_ok}};

    const int n_states = cfg.n_states > 0 ? cfg.n_states : 100;
    bool prop_ok = false;
    try {
        const auto res = verify_prop1(sos, n_states, cfg.n_dirs, cfg.seed, cfg.degeneracy, cfg.box);
        prop_ok = res.max_indicator <= cfg.degeneracy.prop1_tol && res.max_u_block_norm <= cfg.degeneracy.u_block_tol;
        Json j = report::to_json(res);
        j["indicator_bound"] = cfg.degeneracy.prop1_tol;
        j["u_block_bound"] = cfg.degeneracy.u_block_tol;
        j["ok"] = prop_ok;
        doc["linear_degeneracy"] = j;
        if (!prop_ok)
            failures.push_back("max GNL indicator " + std::to_string(res.max_indicator) + ", U-block norm " +
                               std::to_string(res.max_u_block_norm));
    } catch (const PropositionViolation& e) {
        doc["linear_degeneracy"] = Json{{"error", e.what()}, {"indicator", e.indicator()}, {"ok", false}};
        failures.push_back(e.what());
    } catch (const Error& e) {
        doc["linear_degeneracy"] = Json{{"error", e.what()}, {"ok", false}};
        failures.push_back(e.what());
    }

    ok = fact_ok && kernels_ok && prop_ok;
    doc["failures"] = failures;
    doc["ok"] = ok;
    emit(out, doc);
    return ok ? kExitOk : kExitFail;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << content;
}

int cmd_simulate(const RunConfig& cfg, const System& sys, std::ostream& out) {
    FirstOrderSystem fos;
    std::optional<BlockLayout> layout;
    if (const auto* sos = std::get_if<SecondOrderSystem>(&sys)) {
        if (sos->d != 1) throw UsageError("simulate requires d = 1, got d = " + std::to_string(sos->d));
        Reduction red = reduce_quasisemilinear(*sos);
        fos = std::move(red.target);
        layout = red.layout;
    } else {
        fos = std::get<FirstOrderSystem>(sys);
        if (fos.d != 1) throw UsageError("simulate requires d = 1, got d = " + std::to_string(fos.d));
    }
    Grid1D grid{cfg.N, cfg.L};
    EvolveOptions opts;
    opts.T = cfg.T;
    opts.cfl = cfg.cfl;
    opts.tol = cfg.tol;
    try {
        grid.validate();
        if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.9)) throw ValidationError("cfl must lie in (0, 0.9]");
        if (!(cfg.T > 0.0)) throw ValidationError("T must be positive");
    } catch (const Error& e) {
        throw UsageError(e.what());
    }

    const Eigen::MatrixXd v0 = initial_data(fos, layout, grid, cfg.amplitude);
    Trajectory traj;
    int code = kExitOk;
    std::string abort_reason;
    try {
        traj = evolve(fos, grid, v0, opts);
        if (traj.status == RunStatus::CflCollapse) code = kExitFail;
    } catch (const SimulationAborted& e) {
        traj = e.partial();
        abort_reason = e.what();
        code = kExitFail;
    }

    Json doc = header(cfg, sys);
    doc["parameters"] = Json{{"N", cfg.N}, {"L", cfg.L}, {"cfl", cfg.cfl}, {"T", cfg.T}, {"amplitude", cfg.amplitude}};
    if (layout) doc["layout"] = layout->labels();
    const Json summary = report::trajectory_summary(traj);
    for (const auto& [k, v] : summary.items()) doc[k] = v;
    if (!abort_reason.empty()) doc["aborted"] = abort_reason;
    if (layout) doc["contrast"] = report::to_json(summarize(traj));

    if (!cfg.out_path.empty()) {
        std::ostringstream csv;
        report::write_trajectory_csv(csv, traj, cfg.csv_stride);
        write_file(cfg.out_path, csv.str());
    }
    if (!cfg.summary_path.empty()) write_file(cfg.summary_path, doc.dump(2) + "\n");
    emit(out, doc);
    return code;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const System sys = load_input(cfg);
    if (cfg.verbosity > 0) {
        const Json s = system_summary(sys);
        err << "hypermode " << cfg.subcommand << ": " << s["name"].get<std::string>() << " ("
            << s["kind"].get<std::string>() << "), seed " << cfg.seed << '\n';
    }
    if (cfg.subcommand == "check") return cmd_check(cfg, sys, out);
    if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg, sys, out);
    if (cfg.subcommand == "reduce") return cmd_reduce(cfg, sys, out);
    if (cfg.subcommand == "degeneracy") return cmd_degeneracy(cfg, sys, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, sys, out);
    if (cfg.subcommand == "simulate") return cmd_simulate(cfg, sys, out);
    throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
}

void add_common(CLI::App& sub, RunConfig& cfg) {
    auto* model = sub.add_option("--model", cfg.model, "builtin model name");
    auto* spec = sub.add_option("--spec", cfg.spec_path, "system spec file");
    model->excludes(spec);
    sub.add_option("--seed", cfg.seed, "RNG seed (default 42 or $HYPERMODE_SEED)");
    sub.add_option("--tol-imag", cfg.tol.imag_rel, "relative imaginary-part tolerance");
    sub.add_option("--tol-cluster", cfg.tol.cluster_rel, "relative clustering tolerance");
    sub.add_option("--tol-rank", cfg.tol.rank_rel, "relative SVD rank tolerance");
    sub.add_option("--state", cfg.state, "state vector (U, or V for first-order input)")->delimiter(',');
    sub.add_option("--dirs", cfg.n_dirs, "number of sample directions")->check(CLI::PositiveNumber);
    sub.add_flag_function(
        "-v,--verbose", [&cfg](std::int64_t count) { cfg.verbosity += static_cast<int>(count); },
        "diagnostics on stderr");
}

void add_degeneracy_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--states", cfg.n_states, "number of sampled states")->check(CLI::PositiveNumber);
    sub.add_option("--box", cfg.box, "half-width of the state sampling box")->check(CLI::PositiveNumber);
    sub.add_option("--theta-ld", cfg.degeneracy.theta_ld, "LD threshold");
    sub.add_option("--theta-gnl", cfg.degeneracy.theta_gnl, "GNL threshold");
}

}  // namespace

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HYPERMODE_SEED")) {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(env, &pos);
            if (pos == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
    }
    return kDefaultSeed;
}

void apply_override(SecondOrderSystem& sos, const std::string& spec) {
    static const std::regex re(R"(^\s*(B00|C(\d)|B(\d)(\d))(?:\((\d+),(\d+)\))?\s*=\s*(\S+)\s*$)");
    std::smatch m;
    if (!std::regex_match(spec, m, re)) throw ValidationError("malformed override '" + spec + "'");
    double value = 0.0;
    try {
        std::size_t pos = 0;
        value = std::stod(m[7].str(), &pos);
        if (pos != m[7].str().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ValidationError("override value in '" + spec + "' is not a number");
    }

    auto index = [&](const std::ssub_match& s) {
        const int k = std::stoi(s.str());
        if (k < 1 || k > sos.d) throw ValidationError("override index out of range in '" + spec + "'");
        return k - 1;
    };
    PolyMatrixFn* target = nullptr;
    if (m[1] == "B00") {
        target = &sos.B00;
    } else if (m[2].matched) {
        target = &sos.C[static_cast<std::size_t>(index(m[2]))];
    } else {
        target = &sos.Bjk(index(m[3]), index(m[4]));
    }

    if (m[5].matched) {
        const int i = std::stoi(m[5].str()) - 1;
        const int j = std::stoi(m[6].str()) - 1;
        if (i < 0 || j < 0 || i >= sos.n || j >= sos.n)
            throw ValidationError("override entry out of range in '" + spec + "'");
        (*target)(i, j) = Polynomial::constant(sos.n, value);
    } else {
        *target = PolyMatrixFn::constant(value * Eigen::MatrixXd::Identity(sos.n, sos.n), sos.n);
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    cfg.seed = default_seed();

    CLI::App app{"Hyperbolicity, reduction and mode-degeneracy analysis of quasilinear systems", "hypermode"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "semi-strict definite hyperbolicity check");
    add_common(*check, cfg);
    check->add_option("--override", cfg.overrides, "coefficient override NAME=v or NAME(i,j)=v");

    auto* spectrum = app.add_subcommand("spectrum", "dispersion roots, amplitude spaces and first-order modes");
    add_common(*spectrum, cfg);
    spectrum->add_option("--override", cfg.overrides, "coefficient override NAME=v or NAME(i,j)=v");

    auto* reduce = app.add_subcommand("reduce", "emit the first-order reduction as a spec document");
    add_common(*reduce, cfg);
    reduce->add_flag("--frozen", cfg.frozen, "freeze coefficients at --state (linear reduction)");

    auto* degeneracy = app.add_subcommand("degeneracy", "classify every mode as GNL, LD or inconclusive");
    add_common(*degeneracy, cfg);
    add_degeneracy_options(*degeneracy, cfg);

    auto* verify = app.add_subcommand("verify", "factorization, kernel-lift and linear-degeneracy verifiers");
    add_common(*verify, cfg);
    add_degeneracy_options(*verify, cfg);

    auto* simulate = app.add_subcommand("simulate", "1-D periodic evolution with blowup detection");
    add_common(*simulate, cfg);
    simulate->add_option("--N", cfg.N, "grid cells")->check(CLI::PositiveNumber);
    simulate->add_option("--L", cfg.L, "period length")->check(CLI::PositiveNumber);
    simulate->add_option("--cfl", cfg.cfl, "CFL number in (0, 0.9]");
    simulate->add_option("--T", cfg.T, "final time");
    simulate->add_option("--amplitude", cfg.amplitude, "amplitude of the sine initial data");
    simulate->add_option("--out", cfg.out_path, "trajectory CSV (t, x, V components)");
    simulate->add_option("--summary", cfg.summary_path, "summary JSON");
    simulate->add_option("--csv-stride", cfg.csv_stride, "write every k-th frame")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.degeneracy.spectral = cfg.tol;

    try {
        return dispatch(cfg, out, err);
    } catch (const UsageError& e) {
        err << "hypermode " << cfg.subcommand << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "hypermode " << cfg.subcommand << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "hypermode " << cfg.subcommand << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const DimensionError& e) {
        err << "hypermode " << cfg.subcommand << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const Unsupported& e) {
        err << "hypermode " << cfg.subcommand << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "hypermode " << cfg.subcommand << ": " << e.what() << '\n';
        return kExitFail;
    }
}

}  // namespace hypermode::cli
