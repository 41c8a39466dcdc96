#pragma once

#include <ostream>

#include <json.hpp>

#include "hypermode/degeneracy.hpp"
#include "hypermode/simulate.hpp"
#include "hypermode/spectral.hpp"

namespace hypermode::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Eigen::VectorXd& v);
Json to_json(const Eigen::MatrixXd& m);  // array of rows
Json to_json(const Tolerances& tol);
Json to_json(const HyperbolicityReport& rep);
Json to_json(const std::vector<DispersionRoot>& roots);
Json to_json(const ModeSet& modes);
Json to_json(const KernelReport& rep);
Json to_json(const Prop1Result& res);
Json to_json(const DegeneracyReport& rep);
Json to_json(const BlowupEstimate& est);
Json to_json(const ContrastSummary& s);

/// maxgrad history, status and blowup estimate.
Json trajectory_summary(const Trajectory& traj);

/// Rows "t,x,V1,...,Vm" for every `stride`-th stored frame.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, int stride = 1);

}  // namespace hypermode::report
