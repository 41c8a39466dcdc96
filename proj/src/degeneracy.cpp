#include "hypermode/degeneracy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hypermode/errors.hpp"

namespace hypermode {

namespace {

std::size_t nearest_cluster(const std::vector<linalg::RealCluster>& clusters, double speed) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < clusters.size(); ++i) {
        if (std::abs(clusters[i].value - speed) < std::abs(clusters[best].value - speed)) best = i;
    }
    return best;
}

std::vector<int> multiplicities(const std::vector<linalg::RealCluster>& clusters) {
    std::vector<int> out;
    for (const auto& c : clusters) out.push_back(c.multiplicity);
    return out;
}

double default_step(const Eigen::VectorXd& state) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + state.norm());
}

bool is_structural_zero(const FirstOrderSystem& fos, const SpeedSpectrum& spec, std::size_t index,
                        const Tolerances& tol) {
    const double scale = spec.radius > 0.0 ? spec.radius : 1.0;
    return fos.structural_zero_dim > 0 && std::abs(spec.clusters[index].value) <= tol.cluster_rel * scale;
}

}  // namespace

ModeField::ModeField(const FirstOrderSystem& system, Direction xi, Eigen::VectorXd v_ref, int mode_index,
                     std::optional<double> radius, Tolerances tol)
    : system_(&system), xi_(std::move(xi)), v_ref_(std::move(v_ref)), mode_index_(mode_index),
      radius_(radius.value_or(0.1 * (1.0 + v_ref_.norm()))), tol_(tol) {
    if (v_ref_.size() != system.m) throw DimensionError("reference state length differs from m");
    ref_clusters_ = speed_spectrum(system, v_ref_, xi_, tol_).clusters;
    if (mode_index < 0 || mode_index >= static_cast<int>(ref_clusters_.size())) {
        throw ValidationError("mode index " + std::to_string(mode_index) + " out of range; the reference state has " +
                              std::to_string(ref_clusters_.size()) + " distinct speeds");
    }
}

std::vector<int> ModeField::pattern() const { return multiplicities(ref_clusters_); }

double tracked_speed(const ModeField& field, const Eigen::VectorXd& state) {
    if (state.size() != field.system().m) throw DimensionError("state length differs from m");
    if ((state - field.reference_state()).norm() > field.radius()) {
        throw TrackingLoss("state lies outside the tracking radius of the mode field");
    }
    const auto spec = speed_spectrum(field.system(), state, field.direction(), field.tolerances());
    if (multiplicities(spec.clusters) != field.pattern()) {
        throw TrackingLoss("speed clusters merged or split along the continuation");
    }
    const auto index = static_cast<std::size_t>(field.mode_index());
    const double candidate = spec.clusters[index].value;
    // Stable matching: each side must pick the other as its nearest speed.
    if (nearest_cluster(spec.clusters, field.reference_speed()) != index) {
        throw TrackingLoss("mode swap: another speed is nearer to the reference speed");
    }
    if (nearest_cluster(field.reference_clusters(), candidate) != index) {
        throw TrackingLoss("mode swap: continued speed is nearer to another reference speed");
    }
    return candidate;
}

GnlIndicator gnl_indicator(const ModeField& field, const Eigen::VectorXd& state, std::optional<double> step) {
    const FirstOrderSystem& fos = field.system();
    const double speed = tracked_speed(field, state);
    const Eigen::MatrixXd basis =
        linalg::pencil_kernel(fos.symbol(state, field.direction()), fos.A0(state), speed, field.tolerances().rank_rel);
    if (basis.cols() != field.multiplicity()) {
        throw HyperbolicityViolation("kernel dimension " + std::to_string(basis.cols()) + " differs from multiplicity " +
                                     std::to_string(field.multiplicity()));
    }
    const double h = step.value_or(default_step(state));
    const double noise = 1e3 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(speed)) / h;

    GnlIndicator out;
    out.step = h;
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        const Eigen::VectorXd r = basis.col(c);
        const double plus = tracked_speed(field, state + h * r);
        const double minus = tracked_speed(field, state - h * r);
        const double central = std::abs((plus - minus) / (2.0 * h));
        const double forward = std::abs((plus - speed) / h);
        out.value = std::max(out.value, central);
        out.lower = std::max(out.lower, std::min(central, forward));
        out.upper = std::max(out.upper, std::max(central, forward));
        if (std::max(central, forward) > noise && std::abs(forward - central) > 0.1 * central) out.interval = true;
    }
    if (!out.interval) out.lower = out.upper = out.value;
    return out;
}

double analytic_gnl_indicator(const FirstOrderSystem& fos, const Eigen::VectorXd& state, const Direction& xi,
                              int mode_index, const Tolerances& tol) {
    const auto spec = speed_spectrum(fos, state, xi, tol);
    if (mode_index < 0 || mode_index >= static_cast<int>(spec.clusters.size())) {
        throw ValidationError("mode index out of range");
    }
    const auto& cluster = spec.clusters[static_cast<std::size_t>(mode_index)];
    if (cluster.multiplicity != 1) throw Unsupported("analytic indicator is defined for simple speeds only");
    const double speed = cluster.value;
    const Eigen::MatrixXd a0 = fos.A0(state);
    const Eigen::MatrixXd axi = fos.symbol(state, xi);
    const Eigen::MatrixXd right = linalg::pencil_kernel(axi, a0, speed, tol.rank_rel);
    const Eigen::MatrixXd left = linalg::pencil_left_kernel(axi, a0, speed, tol.rank_rel);
    if (right.cols() != 1 || left.cols() != 1) throw HyperbolicityViolation("simple speed without a 1-d kernel");
    const Eigen::VectorXd r = right.col(0);
    const Eigen::VectorXd l = left.col(0);

    Eigen::MatrixXd directional = Eigen::MatrixXd::Zero(fos.m, fos.m);
    for (int k = 0; k < fos.m; ++k) {
        if (r[k] == 0.0) continue;
        Eigen::MatrixXd dsym = Eigen::MatrixXd::Zero(fos.m, fos.m);
        for (int j = 0; j < fos.d; ++j) dsym += xi[j] * fos.A[j].partial(state, k);
        directional += r[k] * (dsym - speed * fos.A0.partial(state, k));
    }
    return std::abs(l.dot(directional * r) / l.dot(a0 * r));
}

const char* to_string(ModeClass c) {
    switch (c) {
        case ModeClass::GNL: return "GNL";
        case ModeClass::LD: return "LD";
        case ModeClass::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ModeClass classify(double indicator, const DegeneracyConfig& cfg) {
    if (indicator > cfg.theta_gnl) return ModeClass::GNL;
    if (indicator < cfg.theta_ld) return ModeClass::LD;
    return ModeClass::Inconclusive;
}

DegeneracyReport classify_modes(const FirstOrderSystem& fos, const std::vector<Eigen::VectorXd>& states,
                                const std::vector<Direction>& dirs, const DegeneracyConfig& cfg, Execution exec) {
    if (!(cfg.theta_ld < cfg.theta_gnl)) throw ValidationError("theta_ld must be smaller than theta_gnl");
    const std::size_t n_points = states.size() * dirs.size();
    std::vector<std::vector<DegeneracyRow>> rows(n_points);
    std::vector<std::string> failures(n_points);

    for_each_index(n_points, exec, [&](std::size_t p) {
        const int si = static_cast<int>(p / dirs.size());
        const int di = static_cast<int>(p % dirs.size());
        const Eigen::VectorXd& state = states[static_cast<std::size_t>(si)];
        const Direction& xi = dirs[static_cast<std::size_t>(di)];
        try {
            const auto spec = speed_spectrum(fos, state, xi, cfg.spectral);
            for (std::size_t i = 0; i < spec.clusters.size(); ++i) {
                DegeneracyRow row;
                row.state_index = si;
                row.dir_index = di;
                row.mode_index = static_cast<int>(i);
                row.multiplicity = spec.clusters[i].multiplicity;
                if (is_structural_zero(fos, spec, i, cfg.spectral)) {
                    // lambda == 0 identically: linearly degenerate without differentiation.
                    row.zero_mode = true;
                    row.speed = 0.0;
                    row.cls = ModeClass::LD;
                } else {
                    const ModeField field(fos, xi, state, static_cast<int>(i), {}, cfg.spectral);
                    row.speed = field.reference_speed();
                    row.indicator = gnl_indicator(field, state, cfg.step);
                    row.cls = classify(row.indicator.value, cfg);
                }
                rows[p].push_back(row);
            }
        } catch (const Error& e) {
            rows[p].clear();
            failures[p] = e.what();
        }
    });

    DegeneracyReport rep;
    rep.theta_ld = cfg.theta_ld;
    rep.theta_gnl = cfg.theta_gnl;
    for (std::size_t p = 0; p < n_points; ++p) {
        rep.rows.insert(rep.rows.end(), rows[p].begin(), rows[p].end());
        if (!failures[p].empty()) {
            rep.errors.push_back(GridError{static_cast<int>(p / dirs.size()), static_cast<int>(p % dirs.size()),
                                           failures[p]});
        }
    }
    return rep;
}

Prop1Result verify_linear_degeneracy(const FirstOrderSystem& fos, const std::optional<BlockLayout>& layout,
                                     const std::vector<Eigen::VectorXd>& states, const std::vector<Direction>& dirs,
                                     const DegeneracyConfig& cfg, Execution exec) {
    const std::size_t n_points = states.size() * dirs.size();
    std::vector<double> indicator(n_points, 0.0);
    std::vector<double> u_norm(n_points, 0.0);
    std::vector<int> checked(n_points, 0);

    for_each_index(n_points, exec, [&](std::size_t p) {
        const Eigen::VectorXd& state = states[p / dirs.size()];
        const Direction& xi = dirs[p % dirs.size()];
        const auto spec = speed_spectrum(fos, state, xi, cfg.spectral);
        for (std::size_t i = 0; i < spec.clusters.size(); ++i) {
            if (is_structural_zero(fos, spec, i, cfg.spectral)) continue;
            const ModeField field(fos, xi, state, static_cast<int>(i), {}, cfg.spectral);
            indicator[p] = std::max(indicator[p], gnl_indicator(field, state, cfg.step).value);
            if (layout) {
                const Eigen::MatrixXd basis = linalg::pencil_kernel(fos.symbol(state, xi), fos.A0(state),
                                                                   field.reference_speed(), cfg.spectral.rank_rel);
                for (Eigen::Index c = 0; c < basis.cols(); ++c) {
                    u_norm[p] = std::max(u_norm[p], basis.col(c).segment(layout->u_offset(), layout->n).norm());
                }
            }
            ++checked[p];
        }
    });

    Prop1Result out;
    out.n_states = static_cast<int>(states.size());
    out.n_dirs = static_cast<int>(dirs.size());
    for (std::size_t p = 0; p < n_points; ++p) {
        out.max_indicator = std::max(out.max_indicator, indicator[p]);
        out.max_u_block_norm = std::max(out.max_u_block_norm, u_norm[p]);
        out.modes_checked += checked[p];
    }
    if (out.max_indicator > cfg.theta_gnl) {
        throw PropositionViolation("a non-zero mode is genuinely nonlinear (indicator " +
                                       std::to_string(out.max_indicator) + ")",
                                   out.max_indicator);
    }
    if (out.max_u_block_norm > cfg.u_block_tol) {
        throw PropositionViolation("a non-zero-mode kernel vector has a non-zero U block (norm " +
                                       std::to_string(out.max_u_block_norm) + ")",
                                   out.max_indicator);
    }
    return out;
}

std::vector<Eigen::VectorXd> sample_states(int m, int count, double box, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-box, box);
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd v(m);
        for (int k = 0; k < m; ++k) v[k] = unif(rng);
        out.push_back(std::move(v));
    }
    return out;
}

Prop1Result verify_prop1(const SecondOrderSystem& sos, int n_states, int n_dirs, std::uint64_t seed,
                         const DegeneracyConfig& cfg, double box, Execution exec) {
    const Reduction red = reduce_quasisemilinear(sos);
    const auto states = sample_states(red.target.m, n_states, box, seed);
    const auto dirs = sample_directions(sos.d, n_dirs, seed + 1);
    return verify_linear_degeneracy(red.target, red.layout, states, dirs, cfg, exec);
}

EquilibriumCheck check_equilibrium(const FirstOrderSystem& fos, const StateVector& v_star) {
    const Eigen::VectorXd& v = v_star.values();
    const double norm = fos.G(v).norm();
    return EquilibriumCheck{norm <= 1e-12 * (1.0 + v.norm()), norm};
}

}  // namespace hypermode
