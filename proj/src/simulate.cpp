#include "hypermode/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <omp.h>

#include "hypermode/errors.hpp"

namespace hypermode {

namespace {

template <class Body>
void for_each_cell(int count, Execution exec, Body&& body) {
    if (exec == Execution::Serial) {
        for (int i = 0; i < count; ++i) body(i);
    } else {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < count; ++i) body(i);
    }
}

bool has_source(const FirstOrderSystem& fos) {
    const PolyMatrixFn* g = fos.G.polynomial();
    if (!g) return true;
    return std::any_of(g->entries().begin(), g->entries().end(), [](const Polynomial& p) { return !p.terms().empty(); });
}

double oscillation(const Eigen::MatrixXd& v) {
    const Eigen::VectorXd range = v.rowwise().maxCoeff() - v.rowwise().minCoeff();
    return range.norm();
}

}  // namespace

void Grid1D::validate() const {
    if (N < 16) throw ValidationError("grid needs N >= 16 cells");
    if (!(L > 0.0)) throw ValidationError("grid period L must be positive");
}

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return "completed";
        case RunStatus::BlowupDetected: return "blowup-detected";
        case RunStatus::CflCollapse: return "cfl-collapse";
    }
    return "completed";
}

const char* to_string(BlowupMethod m) {
    switch (m) {
        case BlowupMethod::NotDetected: return "not-detected";
        case BlowupMethod::ThresholdCrossing: return "threshold-crossing";
        case BlowupMethod::InverseGradientExtrapolation: return "inverse-gradient-extrapolation";
    }
    return "not-detected";
}

SimulationAborted::SimulationAborted(const NotHyperbolicError& cause, Trajectory partial)
    : NotHyperbolicError(std::string("simulation aborted: ") + cause.what(), cause.root_real(), cause.root_imag()),
      partial_(std::move(partial)) {}

double max_gradient(const Eigen::MatrixXd& v, const Grid1D& grid) {
    const int n = static_cast<int>(v.cols());
    double g = 0.0;
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1) % n;
        const int im = (i + n - 1) % n;
        g = std::max(g, (v.col(ip) - v.col(im)).norm());
    }
    return g * grid.N / (2.0 * grid.L);
}

void compute_cell_operators(const FirstOrderSystem& fos, const Eigen::MatrixXd& v, const Tolerances& tol,
                            CellOperators& out, Execution exec) {
    const int n = static_cast<int>(v.cols());
    const int m = fos.m;
    out.transport.resize(static_cast<std::size_t>(n));
    out.radius.resize(n);
    std::vector<std::complex<double>> bad(static_cast<std::size_t>(n));
    std::vector<char> failed(static_cast<std::size_t>(n), 0);
    const bool frozen = fos.A0.is_constant() && fos.A[0].is_constant();

    auto cell = [&](int i) {
        const Eigen::VectorXd state = v.col(i);
        const Eigen::MatrixXd a0 = fos.A0(state);
        const Eigen::MatrixXd a1 = fos.A[0](state);
        auto& transport = out.transport[static_cast<std::size_t>(i)];
        if (m == 1) {
            transport = a1 / a0(0, 0);
            out.radius[i] = std::abs(transport(0, 0));
            return;
        }
        transport = a0.partialPivLu().solve(a1);
        Eigen::EigenSolver<Eigen::MatrixXd> es(transport, false);
        double radius = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) radius = std::max(radius, std::abs(es.eigenvalues()[k]));
        for (Eigen::Index k = 0; k < m; ++k) {
            if (std::abs(es.eigenvalues()[k].imag()) > tol.imag_rel * std::max(radius, 1e-300)) {
                failed[static_cast<std::size_t>(i)] = 1;
                bad[static_cast<std::size_t>(i)] = es.eigenvalues()[k];
            }
        }
        out.radius[i] = radius;
    };
    if (frozen && n > 0) {
        cell(0);
        for_each_cell(n, exec, [&](int i) {
            if (i == 0) return;
            out.transport[static_cast<std::size_t>(i)] = out.transport[0];
            out.radius[i] = out.radius[0];
            failed[static_cast<std::size_t>(i)] = failed[0];
            bad[static_cast<std::size_t>(i)] = bad[0];
        });
    } else {
        for_each_cell(n, exec, cell);
    }

    for (int i = 0; i < n; ++i) {
        if (failed[static_cast<std::size_t>(i)]) {
            const auto z = bad[static_cast<std::size_t>(i)];
            throw NotHyperbolicError("complex speed at cell " + std::to_string(i), z.real(), z.imag());
        }
    }
}

void transport_step(const Eigen::MatrixXd& v, const CellOperators& ops, double dt, double dx, Eigen::MatrixXd& out,
                    Execution exec) {
    const int n = static_cast<int>(v.cols());
    out.resize(v.rows(), v.cols());
    const double ratio = dt / (2.0 * dx);
    for_each_cell(n, exec, [&](int i) {
        const int ip = (i + 1) % n;
        const int im = (i + n - 1) % n;
        const double alpha = std::max({ops.radius[im], ops.radius[i], ops.radius[ip]});
        const Eigen::VectorXd centered = v.col(ip) - v.col(im);
        const Eigen::VectorXd second = v.col(ip) - 2.0 * v.col(i) + v.col(im);
        out.col(i) = v.col(i) - ratio * (ops.transport[static_cast<std::size_t>(i)] * centered - alpha * second);
    });
}

void source_step(const FirstOrderSystem& fos, const Eigen::MatrixXd& v, double dt, Eigen::MatrixXd& out,
                 Execution exec) {
    const int n = static_cast<int>(v.cols());
    out.resize(v.rows(), v.cols());
    auto rate = [&](const Eigen::VectorXd& s) -> Eigen::VectorXd {
        return fos.A0(s).partialPivLu().solve(fos.G(s));
    };
    for_each_cell(n, exec, [&](int i) {
        const Eigen::VectorXd s = v.col(i);
        const Eigen::VectorXd k1 = rate(s);
        const Eigen::VectorXd k2 = rate(s + dt * k1);
        out.col(i) = s + 0.5 * dt * (k1 + k2);
    });
}

Trajectory evolve(const FirstOrderSystem& fos, const Grid1D& grid, const Eigen::MatrixXd& v0,
                  const EvolveOptions& opts) {
    fos.validate();
    grid.validate();
    if (fos.d != 1) throw Unsupported("the simulator handles d = 1 only");
    if (v0.rows() != fos.m || v0.cols() != grid.N) throw DimensionError("initial data must be m x N");
    if (!(opts.cfl > 0.0 && opts.cfl <= 0.9)) throw ValidationError("cfl must lie in (0, 0.9]");
    if (!(opts.T > 0.0) || opts.max_frames < 1) throw ValidationError("horizon and frame count must be positive");

    const bool source = has_source(fos);
    const double dx = grid.dx();
    const double frame_dt = opts.T / opts.max_frames;

    Trajectory traj;
    traj.grid = grid;
    traj.times.push_back(0.0);
    traj.states.push_back(v0);
    traj.initial_maxgrad = max_gradient(v0, grid);
    traj.maxgrad.push_back(traj.initial_maxgrad);

    Eigen::MatrixXd v = v0;
    Eigen::MatrixXd scratch;
    CellOperators ops;
    double t = 0.0;
    int next_frame = 1;

    try {
        while (next_frame <= opts.max_frames) {
            const double t_frame = next_frame * frame_dt;
            compute_cell_operators(fos, v, opts.tol, ops, opts.exec);
            const double speed = ops.radius.maxCoeff();
            double dt = speed > 0.0 ? opts.cfl * dx / speed : std::numeric_limits<double>::infinity();
            if (dt < opts.min_dt) {
                traj.status = RunStatus::CflCollapse;
                break;
            }
            bool at_frame = false;
            if (t + dt >= t_frame) {
                dt = t_frame - t;
                at_frame = true;
            }

            if (source) {
                source_step(fos, v, 0.5 * dt, scratch, opts.exec);
                v.swap(scratch);
                compute_cell_operators(fos, v, opts.tol, ops, opts.exec);
            }
            transport_step(v, ops, dt, dx, scratch, opts.exec);
            v.swap(scratch);
            if (source) {
                source_step(fos, v, 0.5 * dt, scratch, opts.exec);
                v.swap(scratch);
            }
            t = at_frame ? t_frame : t + dt;
            ++traj.steps;

            const double g = max_gradient(v, grid);
            std::string rule;
            if (!v.allFinite() || !std::isfinite(g)) {
                rule = "non-finite";
            } else if (traj.initial_maxgrad > 0.0) {
                if (g >= opts.growth_factor * traj.initial_maxgrad) {
                    rule = "growth";
                } else if (g >= opts.saturation_min_growth * traj.initial_maxgrad &&
                           g * dx >= opts.saturation * oscillation(v)) {
                    rule = "grid-saturation";
                }
            }

            if (at_frame || !rule.empty()) {
                traj.times.push_back(t);
                traj.states.push_back(v);
                traj.maxgrad.push_back(g);
                if (at_frame) ++next_frame;
            }
            if (!rule.empty()) {
                traj.status = RunStatus::BlowupDetected;
                traj.detection_time = t;
                traj.detection_rule = rule;
                break;
            }
        }
    } catch (const NotHyperbolicError& e) {
        throw SimulationAborted(e, std::move(traj));
    }
    return traj;
}

BlowupEstimate blowup_estimate(const Trajectory& traj) {
    BlowupEstimate est;
    if (traj.status != RunStatus::BlowupDetected || !traj.detection_time) return est;
    est.detected = true;
    est.crossing_time = *traj.detection_time;
    est.threshold = traj.maxgrad.back();
    est.t_est = est.crossing_time;
    est.method = BlowupMethod::ThresholdCrossing;

    constexpr std::size_t kWindow = 20;
    const std::size_t count = std::min(kWindow, traj.maxgrad.size());
    if (count < 3) return est;
    const std::size_t first = traj.maxgrad.size() - count;
    for (std::size_t i = first + 1; i < traj.maxgrad.size(); ++i) {
        if (!(traj.maxgrad[i] > traj.maxgrad[i - 1]) || !std::isfinite(traj.maxgrad[i])) return est;
    }

    // Least-squares line through (t, 1/maxgrad).
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = first; i < traj.maxgrad.size(); ++i) {
        const double t = traj.times[i];
        const double y = 1.0 / traj.maxgrad[i];
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double k = static_cast<double>(count);
    const double denom = k * stt - st * st;
    if (denom == 0.0) return est;
    const double slope = (k * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / k;
    if (!(slope < 0.0)) return est;
    const double t_zero = -intercept / slope;
    if (!std::isfinite(t_zero) || t_zero <= 0.0) return est;
    est.t_est = t_zero;
    est.method = BlowupMethod::InverseGradientExtrapolation;
    est.frames_used = static_cast<int>(count);
    return est;
}

double min_slope(const ScalarProfile& profile) {
    constexpr int kSamples = 4096;
    const double h = profile.period / kSamples;
    int best = 0;
    double best_value = profile.derivative(0.0);
    for (int i = 1; i < kSamples; ++i) {
        const double value = profile.derivative(i * h);
        if (value < best_value) {
            best_value = value;
            best = i;
        }
    }
    // Golden-section refinement on the bracketing cells.
    double a = (best - 1) * h;
    double b = (best + 1) * h;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    for (int it = 0; it < 100; ++it) {
        if (profile.derivative(c) < profile.derivative(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - phi * (b - a);
        d = a + phi * (b - a);
    }
    return std::min(best_value, profile.derivative(0.5 * (a + b)));
}

std::optional<double> riccati_blowup_time(double slope, double kappa) {
    if (!(slope < 0.0)) return std::nullopt;
    if (kappa == 0.0) return -1.0 / slope;
    // 1/w(t) = (1/w0 + 1/kappa) e^{kappa t} - 1/kappa vanishes at
    // e^{kappa t} = 1 / (1 + kappa / w0).
    const double arg = 1.0 + kappa / slope;
    if (!(arg > 0.0)) return std::nullopt;
    const double t = -std::log(arg) / kappa;
    if (!(t > 0.0) || !std::isfinite(t)) return std::nullopt;
    return t;
}

std::optional<double> characteristics_oracle(const FirstOrderSystem& fos, const ScalarProfile& v0) {
    if (fos.m != 1 || fos.d != 1) throw Unsupported("characteristics oracle needs a scalar 1-d system");
    auto at = [](double x) { return Eigen::VectorXd::Constant(1, x); };
    const double pts[] = {-1.5, 0.0, 0.75, 2.0};
    for (double x : pts) {
        if (fos.A0(at(x))(0, 0) != 1.0 || std::abs(fos.A[0](at(x))(0, 0) - x) > 1e-14 * (1.0 + std::abs(x))) {
            throw Unsupported("characteristics oracle needs A0 = 1 and A1(V) = V");
        }
    }
    const double kappa = -fos.G(at(1.0))(0, 0);
    for (double x : pts) {
        if (std::abs(fos.G(at(x))(0, 0) + kappa * x) > 1e-14 * (1.0 + std::abs(x))) {
            throw Unsupported("characteristics oracle needs G = 0 or G = -kappa V");
        }
    }
    return riccati_blowup_time(min_slope(v0), kappa);
}

Eigen::MatrixXd initial_data(const FirstOrderSystem& fos, const std::optional<BlockLayout>& layout, const Grid1D& grid,
                             double amplitude) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(fos.m, grid.N);
    const double k = 2.0 * std::numbers::pi / grid.L;
    for (int i = 0; i < grid.N; ++i) {
        const double x = grid.x(i);
        if (layout && layout->has_u_block) {
            if (layout->d != 1) throw Unsupported("initial data for reduced systems needs d = 1");
            for (int c = 0; c < layout->n; ++c) {
                v(layout->u_offset() + c, i) = amplitude * std::sin(k * x);
                v(layout->q_offset(0) + c, i) = amplitude * k * std::cos(k * x);
            }
        } else {
            v(0, i) = amplitude * std::sin(k * x);
        }
    }
    return v;
}

ContrastSummary summarize(const Trajectory& traj) {
    ContrastSummary s;
    s.label = "EXPLORATORY: observed gradient history only; no regularity claim";
    s.initial_maxgrad = traj.initial_maxgrad;
    s.peak_maxgrad = *std::max_element(traj.maxgrad.begin(), traj.maxgrad.end());
    s.final_maxgrad = traj.maxgrad.back();
    s.growth_ratio = s.initial_maxgrad > 0.0 ? s.peak_maxgrad / s.initial_maxgrad : 0.0;
    s.bounded = traj.status == RunStatus::Completed;
    return s;
}

ContrastResult qsl_contrast_experiment(const SecondOrderSystem& sos, double amplitude, double T, int N, double cfl,
                                       Execution exec) {
    if (sos.d != 1) throw Unsupported("contrast experiment needs d = 1");
    const Reduction red = reduce_quasisemilinear(sos);
    const Grid1D grid{N, 2.0 * std::numbers::pi};
    EvolveOptions opts;
    opts.T = T;
    opts.cfl = cfl;
    opts.exec = exec;
    Trajectory traj = evolve(red.target, grid, initial_data(red.target, red.layout, grid, amplitude), opts);
    ContrastSummary summary = summarize(traj);
    return ContrastResult{std::move(traj), std::move(summary)};
}

}  // namespace hypermode
