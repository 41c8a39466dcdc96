#include "hypermode/report.hpp"

#include <iomanip>

namespace hypermode::report {

Json to_json(const Eigen::VectorXd& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Json to_json(const Eigen::MatrixXd& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Eigen::VectorXd(m.row(i).transpose())));
    return out;
}

Json to_json(const Tolerances& tol) {
    return Json{{"imag_rel", tol.imag_rel}, {"cluster_rel", tol.cluster_rel}, {"rank_rel", tol.rank_rel}};
}

Json to_json(const HyperbolicityReport& rep) {
    Json samples = Json::array();
    for (const auto& s : rep.samples) samples.push_back(to_json(s));
    return Json{
        {"b00_negdef", {{"ok", rep.b00_negdef}, {"min_eigenvalue_of_minus_b00", rep.b00_min_eigenvalue}}},
        {"roots_real_nonzero",
         {{"ok", rep.roots_real_nonzero}, {"worst_imag", rep.worst_imag}, {"smallest_abs_root", rep.smallest_abs_root}}},
        {"multiplicity_constant", {{"ok", rep.multiplicity_constant}, {"patterns", rep.multiplicity_patterns}}},
        {"kernel_dims_match",
         {{"ok", rep.kernel_dims_match},
          {"worst_pair", {{"multiplicity", rep.worst_multiplicity}, {"kernel_dim", rep.worst_kernel_dim}}}}},
        {"samples", samples},
        {"notes", rep.notes},
        {"verdict", rep.verdict},
    };
}

Json to_json(const std::vector<DispersionRoot>& roots) {
    Json out = Json::array();
    for (const auto& r : roots) out.push_back(Json{{"root", r.root}, {"multiplicity", r.multiplicity}});
    return out;
}

namespace {

Json mode_json(const Mode& m) {
    return Json{{"speed", m.speed}, {"multiplicity", m.multiplicity}, {"basis", to_json(m.basis)}};
}

}  // namespace

Json to_json(const ModeSet& modes) {
    Json list = Json::array();
    for (const auto& m : modes.modes) list.push_back(mode_json(m));
    Json out{{"direction", to_json(modes.xi)}, {"modes", list}};
    out["zero_mode"] = modes.zero_mode ? mode_json(*modes.zero_mode) : Json(nullptr);
    return out;
}

Json to_json(const KernelReport& rep) {
    return Json{
        {"modes_checked", rep.modes_checked},
        {"nonzero_multiplicity", rep.nonzero_multiplicity},
        {"max_subspace_angle_sin", rep.max_subspace_angle},
        {"max_structure_residual", rep.max_structure_residual},
        {"max_symbol_residual", rep.max_symbol_residual},
        {"zero_mode_dim", rep.zero_mode_dim},
        {"expected_zero_mode_dim", rep.expected_zero_mode_dim},
        {"max_left_kernel_residual", rep.max_left_kernel_residual},
    };
}

Json to_json(const Prop1Result& res) {
    return Json{
        {"max_indicator", res.max_indicator}, {"max_u_block_norm", res.max_u_block_norm},
        {"states", res.n_states},             {"directions", res.n_dirs},
        {"modes_checked", res.modes_checked},
    };
}

Json to_json(const DegeneracyReport& rep) {
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json row{
            {"state", r.state_index},
            {"direction", r.dir_index},
            {"mode", r.mode_index},
            {"speed", r.speed},
            {"multiplicity", r.multiplicity},
            {"zero_mode", r.zero_mode},
            {"indicator", r.indicator.value},
            {"class", to_string(r.cls)},
        };
        if (r.indicator.interval) row["indicator_interval"] = Json::array({r.indicator.lower, r.indicator.upper});
        rows.push_back(std::move(row));
    }
    Json errors = Json::array();
    for (const auto& e : rep.errors) {
        errors.push_back(Json{{"state", e.state_index}, {"direction", e.dir_index}, {"error", e.message}});
    }
    return Json{{"thresholds", {{"theta_ld", rep.theta_ld}, {"theta_gnl", rep.theta_gnl}}},
                {"rows", rows},
                {"errors", errors}};
}

Json to_json(const BlowupEstimate& est) {
    Json out{{"detected", est.detected}, {"method", to_string(est.method)}};
    if (est.detected) {
        out["T_est"] = est.t_est;
        out["threshold"] = est.threshold;
        out["crossing_time"] = est.crossing_time;
        out["frames_used"] = est.frames_used;
    } else {
        out["T_est"] = nullptr;
    }
    return out;
}

Json to_json(const ContrastSummary& s) {
    return Json{{"label", s.label},
                {"initial_maxgrad", s.initial_maxgrad},
                {"peak_maxgrad", s.peak_maxgrad},
                {"final_maxgrad", s.final_maxgrad},
                {"growth_ratio", s.growth_ratio},
                {"bounded", s.bounded}};
}

Json trajectory_summary(const Trajectory& traj) {
    Json history = Json::array();
    for (std::size_t i = 0; i < traj.times.size(); ++i) history.push_back(Json::array({traj.times[i], traj.maxgrad[i]}));
    Json out{
        {"status", to_string(traj.status)},
        {"grid", {{"N", traj.grid.N}, {"L", traj.grid.L}}},
        {"steps", traj.steps},
        {"final_time", traj.times.back()},
        {"initial_maxgrad", traj.initial_maxgrad},
    };
    out["detection_time"] = traj.detection_time ? Json(*traj.detection_time) : Json(nullptr);
    out["detection_rule"] = traj.detection_rule.empty() ? Json(nullptr) : Json(traj.detection_rule);
    out["blowup"] = to_json(blowup_estimate(traj));
    out["maxgrad_history"] = std::move(history);
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, int stride) {
    if (traj.states.empty()) return;
    const auto m = traj.states.front().rows();
    out << "t,x";
    for (Eigen::Index c = 0; c < m; ++c) out << ",V" << (c + 1);
    out << '\n' << std::setprecision(17);
    for (std::size_t f = 0; f < traj.states.size(); f += static_cast<std::size_t>(std::max(stride, 1))) {
        const auto& v = traj.states[f];
        for (Eigen::Index i = 0; i < v.cols(); ++i) {
            out << traj.times[f] << ',' << traj.grid.x(static_cast<int>(i));
            for (Eigen::Index c = 0; c < m; ++c) out << ',' << v(c, i);
            out << '\n';
        }
    }
}

}  // namespace hypermode::report
