// Explicit time marching: classic RK4 and TVD-RK2 with a field re-solve
// at every stage, adaptive CFL step selection, and the simulation loop
// with diagnostics and snapshot sinks.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vpdg/diagnostics.hpp"
#include "vpdg/scenarios.hpp"

namespace vpdg {

enum class Integrator { RK4, TVDRK2 };

struct TimeConfig {
    double t_final = 1.0;
    double cfl = 0.3;
    Integrator integrator = Integrator::RK4;
    std::optional<double> fixed_dt;
    int diag_stride = 1;
};

struct SolveConfig {
    PoissonKind poisson = PoissonKind::LDGv;
    FluxVariant flux = FluxVariant::WeightedAverage;
    double penalty_scale = 1.0;  // c in c11 = c (k+1)^2 / h_x
    // Re-solve the field problem at every stage (required for the scheme's
    // accuracy and conservation; switchable only for regression tests).
    bool per_stage_resolve = true;
};

// CFL rule dt = cfl * min(h_x, h_v) / max(||E||_inf, 2L); the sup norm is
// estimated from the nodal + quadrature samples per cell.
double compute_dt(const PhaseMesh& mesh, const FieldPair& field, const NodalBasis1D& basis_e,
                  double cfl);

using OdeRhs = std::function<void(const Distribution&, double, RhsBlock&)>;

struct StageWorkspace {
    RhsBlock k1, k2, k3, k4;
    Distribution stage;
};

void rk4_step(Distribution& f, double t, double dt, const OdeRhs& rhs, StageWorkspace& ws);
void rk2_tvd_step(Distribution& f, double t, double dt, const OdeRhs& rhs, StageWorkspace& ws);

struct RunSinks {
    std::function<void(const DiagRow&)> on_diag;
    std::function<void(double, const Distribution&)> on_snapshot;
    std::vector<double> snapshot_times;  // hit exactly (steps are truncated)
};

struct RunResult {
    Distribution final_state;
    RunDiagnostics diagnostics;
    std::vector<std::pair<double, double>> dt_history;  // (t, dt) at changes
    int steps = 0;
    double background = 0.0;  // effective neutralizing background
};

RunResult run_simulation(const Scenario& scenario, const PhaseMesh& mesh,
                         const NodalBasis1D& basis, const SolveConfig& solve,
                         const TimeConfig& time, const RunSinks* sinks = nullptr);

}  // namespace vpdg
