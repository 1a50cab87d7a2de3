#include "vpdg/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vpdg {

double compute_dt(const PhaseMesh& mesh, const FieldPair& field, const NodalBasis1D& basis_e,
                  double cfl) {
    double e_inf = 0.0;
    for (int i = 0; i < field.e.ncells; ++i) {
        const CellExtrema ex = cell_extrema_estimate(basis_e, field.e.cell(i));
        e_inf = std::max(e_inf, std::max(std::abs(ex.sampled_min), std::abs(ex.sampled_max)));
    }
    double h_min = mesh.x_width(0);
    for (int i = 0; i < mesh.nx; ++i) h_min = std::min(h_min, mesh.x_width(i));
    for (int j = 0; j < mesh.nv; ++j) h_min = std::min(h_min, mesh.v_width(j));
    const double speed = std::max(e_inf, 2.0 * mesh.v_half_width);
    return cfl * h_min / speed;
}

namespace {

void axpy(Distribution& out, const Distribution& base, double a, const Distribution& dir) {
    const size_t n = base.data().size();
    if (out.data().size() != n) out = base;
    const double* b = base.data().data();
    const double* d = dir.data().data();
    double* o = out.data().data();
    for (size_t idx = 0; idx < n; ++idx) o[idx] = b[idx] + a * d[idx];
}

void ensure_like(Distribution& buf, const Distribution& like) {
    if (buf.data().size() != like.data().size()) buf = like;
}

}  // namespace

void rk4_step(Distribution& f, double t, double dt, const OdeRhs& rhs, StageWorkspace& ws) {
    ensure_like(ws.stage, f);
    rhs(f, t, ws.k1);
    axpy(ws.stage, f, 0.5 * dt, ws.k1);
    rhs(ws.stage, t + 0.5 * dt, ws.k2);
    axpy(ws.stage, f, 0.5 * dt, ws.k2);
    rhs(ws.stage, t + 0.5 * dt, ws.k3);
    axpy(ws.stage, f, dt, ws.k3);
    rhs(ws.stage, t + dt, ws.k4);
    double* y = f.data().data();
    const double* k1 = ws.k1.data().data();
    const double* k2 = ws.k2.data().data();
    const double* k3 = ws.k3.data().data();
    const double* k4 = ws.k4.data().data();
    const double c = dt / 6.0;
    for (size_t i = 0; i < f.data().size(); ++i)
        y[i] += c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void rk2_tvd_step(Distribution& f, double t, double dt, const OdeRhs& rhs, StageWorkspace& ws) {
    ensure_like(ws.stage, f);
    rhs(f, t, ws.k1);
    axpy(ws.stage, f, dt, ws.k1);  // Euler predictor
    rhs(ws.stage, t + dt, ws.k2);
    double* y = f.data().data();
    const double* s = ws.stage.data().data();
    const double* k2 = ws.k2.data().data();
    for (size_t i = 0; i < f.data().size(); ++i)
        y[i] = 0.5 * y[i] + 0.5 * s[i] + 0.5 * dt * k2[i];
}

RunResult run_simulation(const Scenario& scenario, const PhaseMesh& mesh,
                         const NodalBasis1D& basis, const SolveConfig& solve,
                         const TimeConfig& time, const RunSinks* sinks) {
    const bool diode = scenario.boundary == BoundaryKind::Diode;
    if (diode == mesh.periodic_x)
        throw std::invalid_argument("run_simulation: mesh topology does not match the scenario");
    if (!time.fixed_dt && !(time.cfl > 0.0 && time.cfl <= 1.0))
        throw std::invalid_argument("run_simulation: cfl must lie in (0, 1]");
    if (time.fixed_dt && *time.fixed_dt <= 0.0)
        throw std::invalid_argument("run_simulation: fixed_dt must be positive");

    RunResult res;
    res.final_state = project_initial(scenario.f0, mesh, basis);
    Distribution& f = res.final_state;

    const PoissonKind kind = diode ? PoissonKind::Dirichlet : solve.poisson;
    const PoissonSolver solver(kind, mesh, basis.degree(), solve.penalty_scale);

    double bg = scenario.background;
    if (!diode && scenario.renormalize_background)
        bg = total_mass(f, basis) / (mesh.x_hi - mesh.x_lo);
    res.background = bg;

    auto fields_for = [&](const Distribution& state, double tcur) -> ElectricField {
        DensityField rho = compute_density(state, basis);
        rho.time = tcur;
        if (diode)
            return evaluate_field(solver.solve_dirichlet(rho, scenario.lambda(tcur)), basis,
                                  solver.basis_e());
        for (double& c : rho.rho.coeffs) c -= bg;
        if (kind == PoissonKind::LDGv)
            return evaluate_field(solver.solve_ldg_v(rho), basis, solver.basis_e());
        return evaluate_field(solver.solve_periodic(rho), basis, solver.basis_e());
    };

    ElectricField step_field;  // step-start field: dt, diagnostics, frozen mode
    ElectricField stage_field;
    const ForcingFn* forcing = scenario.forcing ? &scenario.forcing : nullptr;
    auto rhs = [&](const Distribution& state, double tcur, RhsBlock& out) {
        const ElectricField* e = &step_field;
        if (solve.per_stage_resolve) {
            stage_field = fields_for(state, tcur);
            e = &stage_field;
        }
        if (diode)
            vlasov_rhs_diode(state, *e, tcur, solve.flux, basis, scenario.inflow, out);
        else
            vlasov_rhs_periodic(state, *e, tcur, solve.flux, basis, forcing, out);
    };

    RunDiagnostics& diag = res.diagnostics;
    auto record = [&](double tcur, const ElectricField& field) {
        const double mass = total_mass(f, basis);
        const double l1 = lp_norm(f, basis, 1);
        const double l2 = lp_norm(f, basis, 2);
        const EnergyBreakdown en =
            discrete_total_energy(f, field.primary(), basis, solver.basis_e());
        DiagRow row;
        row.t = tcur;
        row.e_l2 = e_l2_norm(field.primary(), mesh, solver.basis_e());
        row.kinetic = en.kinetic;
        row.potential = en.potential;
        row.penalty = en.penalty;
        if (diag.rows.empty()) {
            diag.mass0 = mass;
            diag.l1_0 = l1;
            diag.l2_0 = l2;
            diag.energy0 = en.total;
        }
        row.mass_dev = (mass - diag.mass0) / diag.mass0;
        row.l1_dev = (l1 - diag.l1_0) / diag.l1_0;
        row.l2_dev = (l2 - diag.l2_0) / diag.l2_0;
        row.energy_dev = std::abs(en.total - diag.energy0) / std::abs(diag.energy0);
        diag.rows.push_back(row);
        if (sinks && sinks->on_diag) sinks->on_diag(row);
    };

    std::vector<double> events;  // snapshot times and t_final, ascending
    if (sinks) events = sinks->snapshot_times;
    std::sort(events.begin(), events.end());
    size_t next_event = 0;

    auto emit_snapshots = [&](double tcur) {
        while (next_event < events.size() && events[next_event] <= tcur + 1e-12) {
            if (sinks && sinks->on_snapshot) sinks->on_snapshot(events[next_event], f);
            ++next_event;
        }
    };

    StageWorkspace ws;
    double t = 0.0;
    double last_dt = -1.0;
    step_field = fields_for(f, t);
    record(t, step_field);
    emit_snapshots(t);

    const double t_final = time.t_final;
    while (t < t_final - 1e-12 * std::max(1.0, t_final)) {
        if (res.steps > 0) step_field = fields_for(f, t);
        double dt = time.fixed_dt ? *time.fixed_dt
                                  : compute_dt(mesh, step_field.primary(), solver.basis_e(),
                                               time.cfl);
        if (next_event < events.size()) dt = std::min(dt, events[next_event] - t);
        dt = std::min(dt, t_final - t);
        if (std::abs(dt - last_dt) > 1e-12 * std::max(dt, last_dt)) {
            res.dt_history.emplace_back(t, dt);
            last_dt = dt;
        }

        if (time.integrator == Integrator::RK4)
            rk4_step(f, t, dt, rhs, ws);
        else
            rk2_tvd_step(f, t, dt, rhs, ws);
        t += dt;
        ++res.steps;

        if (!f.all_finite())
            throw std::runtime_error("blow-up detected at t = " + std::to_string(t));

        const bool last = !(t < t_final - 1e-12 * std::max(1.0, t_final));
        if (res.steps % time.diag_stride == 0 || last) {
            const ElectricField field_now = fields_for(f, t);
            record(t, field_now);
        }
        emit_snapshots(t);
    }
    return res;
}

}  // namespace vpdg
