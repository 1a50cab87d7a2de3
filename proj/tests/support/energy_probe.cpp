// Scratch probe: marches a nonlinear benchmark with tiny steps and tracks
// several candidate energy functionals, to pin down which branch pairing
// conserves the discrete energy. Not part of the test suite.
#include <cstdio>

#include "vpdg/study.hpp"
#include "vpdg/timestep.hpp"

using namespace vpdg;

namespace {

struct Probe {
    double e_plus, e_minus, mean, kin;
};

Probe probe_energies(const Distribution& f, const PoissonSolver& solver,
                     const NodalBasis1D& basis, double bg) {
    DensityField rho = compute_density(f, basis);
    for (double& c : rho.rho.coeffs) c -= bg;
    auto pair = solver.solve_ldg_v(rho);
    const EnergyBreakdown ep = discrete_total_energy(f, pair.first, basis, solver.basis_e());
    const EnergyBreakdown em = discrete_total_energy(f, pair.second, basis, solver.basis_e());
    return {ep.total, em.total, 0.5 * (ep.total + em.total), ep.kinetic};
}

}  // namespace

int main(int argc, char** argv) {
    const bool swap_pairing = argc > 1 && std::string(argv[1]) == "swap";
    Scenario sc = make_scenario("strong-landau");
    // Drifting, x-asymmetric state so the two branches genuinely differ.
    sc.f0 = [](double x, double v) {
        const double g = std::exp(-0.5 * (v - 0.5) * (v - 0.5));
        return (1.0 + 0.1 * std::cos(0.5 * x) + 0.05 * std::sin(x)) * g / std::sqrt(2.0 * M_PI);
    };
    const int k = 3;
    const NodalBasis1D basis(k);
    const PhaseMesh mesh = build_phase_mesh(24, 32, sc.x_lo, sc.x_hi, sc.v_half_width);
    const PoissonSolver solver(PoissonKind::LDGv, mesh, k);

    Distribution f = project_initial(sc.f0, mesh, basis);
    const double bg = total_mass(f, basis) / (mesh.x_hi - mesh.x_lo);

    auto fields_for = [&](const Distribution& state) {
        DensityField rho = compute_density(state, basis);
        for (double& c : rho.rho.coeffs) c -= bg;
        auto pair = solver.solve_ldg_v(rho);
        if (swap_pairing) std::swap(pair.first, pair.second);
        return evaluate_field(std::move(pair), basis, solver.basis_e());
    };
    ElectricField field;
    auto rhs = [&](const Distribution& state, double t, RhsBlock& out) {
        field = fields_for(state);
        vlasov_rhs_periodic(state, field, t, FluxVariant::WeightedAverage, basis, nullptr, out);
    };

    const Probe p0 = probe_energies(f, solver, basis, bg);
    const double mass0 = total_mass(f, basis);
    std::printf("t=0 e+=%.15e e-=%.15e mean=%.15e\n", p0.e_plus, p0.e_minus, p0.mean);

    StageWorkspace ws;
    const double dt = 2e-3;
    double t = 0.0;
    for (int step = 0; step < 500; ++step) {
        rk4_step(f, t, dt, rhs, ws);
        t += dt;
        if ((step + 1) % 100 == 0) {
            const Probe p = probe_energies(f, solver, basis, bg);
            const double mdev = (total_mass(f, basis) - mass0) / mass0;
            std::printf(
                "t=%.3f dev+=%.3e dev-=%.3e devmean=%.3e mass=%.3e\n", t,
                std::abs(p.e_plus - p0.e_plus) / p0.e_plus,
                std::abs(p.e_minus - p0.e_minus) / p0.e_minus,
                std::abs(p.mean - p0.mean) / p0.mean, mdev);
        }
    }
    return 0;
}
