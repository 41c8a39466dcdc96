#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypermode/errors.hpp"
#include "hypermode/parallel.hpp"
#include "hypermode/reduction.hpp"
#include "hypermode/spectral.hpp"
#include "hypermode/systems.hpp"

namespace hypermode {

/// Periodic grid x_i = i L / N, i = 0..N-1.
struct Grid1D {
    int N = 1024;
    double L = 6.283185307179586;

    double dx() const { return L / N; }
    double x(int i) const { return i * L / N; }
    void validate() const;
};

enum class RunStatus { Completed, BlowupDetected, CflCollapse };
const char* to_string(RunStatus s);

struct Trajectory {
    Grid1D grid;
    std::vector<double> times;
    std::vector<Eigen::MatrixXd> states;  // m x N per frame
    std::vector<double> maxgrad;
    RunStatus status = RunStatus::Completed;
    double initial_maxgrad = 0.0;
    std::optional<double> detection_time;
    std::string detection_rule;  // "growth", "grid-saturation" or "non-finite"
    long long steps = 0;
};

struct EvolveOptions {
    double T = 2.0;
    double cfl = 0.5;
    int max_frames = 512;
    /// Blowup when maxgrad exceeds growth_factor * initial maxgrad ...
    double growth_factor = 1e3;
    /// ... or when it exceeds saturation_min_growth * initial maxgrad and the
    /// front is resolved by only a few cells: maxgrad * dx >= saturation * osc(V).
    double saturation = 0.05;
    double saturation_min_growth = 10.0;
    double min_dt = 1e-12;
    Tolerances tol;
    Execution exec = Execution::Parallel;
};

/// Thrown when a state with complex speeds is reached; carries the frames up
/// to the last valid state.
class SimulationAborted : public NotHyperbolicError {
public:
    SimulationAborted(const NotHyperbolicError& cause, Trajectory partial);
    const Trajectory& partial() const { return partial_; }

private:
    Trajectory partial_;
};

/// max_i |V_{i+1} - V_{i-1}| N / (2L), periodic.
double max_gradient(const Eigen::MatrixXd& v, const Grid1D& grid);

// Step kernels. Each has a serial reference and an OpenMP path; both produce
// bitwise identical results.

/// Per-cell transport matrix A0(V_i)^{-1} A1(V_i) and its spectral radius.
struct CellOperators {
    std::vector<Eigen::MatrixXd> transport;
    Eigen::VectorXd radius;
};
void compute_cell_operators(const FirstOrderSystem& fos, const Eigen::MatrixXd& v, const Tolerances& tol,
                            CellOperators& out, Execution exec);

/// Local Lax-Friedrichs step on the quasilinear form:
/// V_i - dt/(2dx) [M_i (V_{i+1} - V_{i-1}) - a_i (V_{i+1} - 2V_i + V_{i-1})]
/// with a_i the largest radius over cells i-1, i, i+1.
void transport_step(const Eigen::MatrixXd& v, const CellOperators& ops, double dt, double dx, Eigen::MatrixXd& out,
                    Execution exec);

/// Heun step of A0(V) V_t = G(V).
void source_step(const FirstOrderSystem& fos, const Eigen::MatrixXd& v, double dt, Eigen::MatrixXd& out,
                 Execution exec);

/// V_t + A0^{-1} A(V) V_x = A0^{-1} G(V) on a periodic grid (d = 1 only),
/// Strang-split source, dt = cfl dx / max|lambda|.
Trajectory evolve(const FirstOrderSystem& fos, const Grid1D& grid, const Eigen::MatrixXd& v0,
                  const EvolveOptions& opts = {});

enum class BlowupMethod { NotDetected, ThresholdCrossing, InverseGradientExtrapolation };
const char* to_string(BlowupMethod m);

struct BlowupEstimate {
    bool detected = false;
    double t_est = 0.0;
    BlowupMethod method = BlowupMethod::NotDetected;
    double threshold = 0.0;      // maxgrad at detection
    double crossing_time = 0.0;  // first detection time
    int frames_used = 0;
};

/// Linear extrapolation of 1/maxgrad to zero over the last 20 frames, with
/// the detection time as fallback.
BlowupEstimate blowup_estimate(const Trajectory& traj);

/// Scalar initial profile on one period.
struct ScalarProfile {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    double period = 6.283185307179586;
};

double min_slope(const ScalarProfile& profile);

/// Exact blowup time of u_t + u u_x = -kappa u from min u0' (kappa = 0 for
/// inviscid Burgers). The slope w = u_x obeys w' = -w^2 - kappa w along
/// characteristics, so 1/w is affine in exp(kappa t).
std::optional<double> riccati_blowup_time(double min_slope, double kappa);

/// For m = 1 systems with A0 = 1, A1(V) = V and G zero or -kappa V.
std::optional<double> characteristics_oracle(const FirstOrderSystem& fos, const ScalarProfile& v0);

/// Smooth periodic data of the given amplitude. With a layout containing a U
/// block (d = 1): U = a sin(2 pi x / L), Q = U_x, P = 0. Otherwise the first
/// component is a sin(2 pi x / L) and the rest are zero.
Eigen::MatrixXd initial_data(const FirstOrderSystem& fos, const std::optional<BlockLayout>& layout, const Grid1D& grid,
                             double amplitude);

struct ContrastSummary {
    std::string label;
    double initial_maxgrad = 0.0;
    double peak_maxgrad = 0.0;
    double final_maxgrad = 0.0;
    double growth_ratio = 0.0;
    bool bounded = false;  // completed the horizon without blowup detection
};

struct ContrastResult {
    Trajectory trajectory;
    ContrastSummary summary;
};

/// Evolve the quasisemilinear reduction of `sos` (d = 1) from smooth data and
/// summarize gradient growth. The result is observational only.
ContrastResult qsl_contrast_experiment(const SecondOrderSystem& sos, double amplitude, double T, int N = 1024,
                                       double cfl = 0.5, Execution exec = Execution::Parallel);

ContrastSummary summarize(const Trajectory& traj);

}  // namespace hypermode
