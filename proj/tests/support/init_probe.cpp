// Scratch probe: initial data by L2 projection vs nodal interpolation.
#include <cstdio>
#include "vpdg/study.hpp"
#include "vpdg/timestep.hpp"

using namespace vpdg;

int main() {
    Scenario sc = make_scenario("forced");
    SolveConfig solve;
    TimeConfig time;
    time.t_final = 1.0;
    time.fixed_dt = 1e-3;
    struct Case { int k, n; double paper; };
    for (const auto& c : {Case{2, 20, 3.0134e-2}, Case{2, 40, 6.4623e-3},
                          Case{3, 20, 5.8295e-3}, Case{3, 40, 3.6361e-4}}) {
        const NodalBasis1D basis(c.k);
        const PhaseMesh mesh = build_phase_mesh(c.n, c.n, sc.x_lo, sc.x_hi, sc.v_half_width);
        const int n1 = c.k + 1;
        Distribution f(mesh, c.k);
        for (int i = 0; i < mesh.nx; ++i)
            for (int j = 0; j < mesh.nv; ++j) {
                auto blk = f.block(i, j);
                for (int n = 0; n < n1; ++n)
                    for (int m = 0; m < n1; ++m)
                        blk[n * n1 + m] = sc.f0(mesh.x_edges[i] + mesh.x_width(i) * basis.nodes()[n],
                                                mesh.v_edges[j] + mesh.v_width(j) * basis.nodes()[m]);
            }
        const double bg = total_mass(f, basis) / (mesh.x_hi - mesh.x_lo);
        const PoissonSolver solver(PoissonKind::LDGv, mesh, c.k);
        ElectricField field;
        auto rhs = [&](const Distribution& state, double t, RhsBlock& out) {
            DensityField rho = compute_density(state, basis);
            for (double& cc : rho.rho.coeffs) cc -= bg;
            field = evaluate_field(solver.solve_ldg_v(rho), basis, solver.basis_e());
            vlasov_rhs_periodic(state, field, t, FluxVariant::WeightedAverage, basis,
                                &sc.forcing, out);
        };
        StageWorkspace ws;
        double t = 0.0;
        for (int s = 0; s < 1000; ++s) { rk4_step(f, t, 1e-3, rhs, ws); t += 1e-3; }
        const double err = l2_error_f(f, sc, 1.0, basis);
        std::printf("k=%d n=%d paper=%.4e interp-init=%.4e (x%.3f)\n", c.k, c.n, c.paper, err,
                    err / c.paper);
    }
    return 0;
}
