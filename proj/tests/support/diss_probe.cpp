// Scratch probe: bracket the E-flux dissipation (central vs upwind) and
// the dt sensitivity.
#include <cstdio>
#include "vpdg/study.hpp"
#include "vpdg/timestep.hpp"

using namespace vpdg;

int main(int argc, char** argv) {
    const bool central = argc > 1 && std::string(argv[1]) == "central";
    const double dt = argc > 2 ? std::stod(argv[2]) : 1e-3;
    Scenario sc = make_scenario("forced");
    struct Case { int k, n; double paper; };
    for (const auto& c : {Case{2, 20, 3.0134e-2}, Case{2, 40, 6.4623e-3},
                          Case{3, 20, 5.8295e-3}, Case{3, 40, 3.6361e-4}}) {
        const NodalBasis1D basis(c.k);
        const PhaseMesh mesh = build_phase_mesh(c.n, c.n, sc.x_lo, sc.x_hi, sc.v_half_width);
        const PoissonSolver solver(PoissonKind::LDGv, mesh, c.k);
        Distribution f = project_initial(sc.f0, mesh, basis);
        const double bg = total_mass(f, basis) / (mesh.x_hi - mesh.x_lo);
        ElectricField field;
        auto rhs = [&](const Distribution& state, double t, RhsBlock& out) {
            DensityField rho = compute_density(state, basis);
            for (double& cc : rho.rho.coeffs) cc -= bg;
            field = evaluate_field(solver.solve_ldg_v(rho), basis, solver.basis_e());
            if (central) {
                // force the weighted branch with w = 1/2 everywhere
                for (auto& cd : field.cells_plus) {
                    cd.sign.tag = SignTag::Indeterminate;
                    cd.omega_plus = 0.5;
                }
                for (auto& cd : field.cells_minus) {
                    cd.sign.tag = SignTag::Indeterminate;
                    cd.omega_plus = 0.5;
                }
            }
            vlasov_rhs_periodic(state, field, t, FluxVariant::WeightedAverage, basis,
                                &sc.forcing, out);
        };
        StageWorkspace ws;
        double t = 0.0;
        const int steps = static_cast<int>(std::lround(1.0 / dt));
        for (int s = 0; s < steps; ++s) { rk4_step(f, t, dt, rhs, ws); t += dt; }
        const double err = l2_error_f(f, sc, 1.0, basis);
        std::printf("%s dt=%g k=%d n=%d paper=%.4e got=%.4e (x%.3f)\n",
                    central ? "central" : "upwind ", dt, c.k, c.n, c.paper, err, err / c.paper);
    }
    return 0;
}
