#include "vpdg/study.hpp"

#include <cmath>
#include <stdexcept>

namespace vpdg {

namespace {

// Values of the nodal basis at an arbitrary rule's points.
std::vector<double> tabulate(const NodalBasis1D& basis, const Quadrature& q) {
    const int n1 = basis.n_nodes();
    std::vector<double> vals(static_cast<size_t>(q.order) * n1);
    std::vector<double> unit(n1, 0.0);
    for (int a = 0; a < n1; ++a) {
        unit[a] = 1.0;
        for (int p = 0; p < q.order; ++p) vals[p * n1 + a] = basis.eval(unit, q.points[p]);
        unit[a] = 0.0;
    }
    return vals;
}

}  // namespace

double l2_error_f(const Distribution& f, const Scenario& scenario, double t,
                  const NodalBasis1D& basis) {
    if (!scenario.has_exact()) throw std::invalid_argument("l2_error_f: no exact solution");
    const PhaseMesh& mesh = f.mesh();
    const int n1 = basis.n_nodes();
    const Quadrature q = gauss_quadrature(std::min(20, basis.degree() + 4));
    const std::vector<double> vals = tabulate(basis, q);
    const int nq = q.order;

    double err2 = 0.0;
    std::vector<double> row(n1);
    for (int i = 0; i < mesh.nx; ++i)
        for (int j = 0; j < mesh.nv; ++j) {
            const double hx = mesh.x_width(i), hv = mesh.v_width(j);
            const double x0 = mesh.x_edges[i], v0 = mesh.v_edges[j];
            const auto blk = f.block(i, j);
            double cell = 0.0;
            for (int px = 0; px < nq; ++px) {
                for (int m = 0; m < n1; ++m) {
                    double s = 0.0;
                    for (int n = 0; n < n1; ++n) s += vals[px * n1 + n] * blk[n * n1 + m];
                    row[m] = s;
                }
                const double x = x0 + hx * q.points[px];
                for (int pv = 0; pv < nq; ++pv) {
                    double fh = 0.0;
                    for (int m = 0; m < n1; ++m) fh += vals[pv * n1 + m] * row[m];
                    const double d = fh - scenario.exact_f(x, v0 + hv * q.points[pv], t);
                    cell += q.weights[px] * q.weights[pv] * d * d;
                }
            }
            err2 += hx * hv * cell;
        }
    return std::sqrt(err2);
}

double l2_error_e(const FieldPair& field, const Scenario& scenario, double t,
                  const PhaseMesh& mesh, const NodalBasis1D& basis_e) {
    if (!scenario.exact_e) throw std::invalid_argument("l2_error_e: no exact field");
    const int n1 = basis_e.n_nodes();
    const Quadrature q = gauss_quadrature(std::min(20, basis_e.degree() + 4));
    const std::vector<double> vals = tabulate(basis_e, q);

    double err2 = 0.0;
    for (int i = 0; i < field.e.ncells; ++i) {
        const double hx = mesh.x_width(i), x0 = mesh.x_edges[i];
        const auto ec = field.e.cell(i);
        double cell = 0.0;
        for (int p = 0; p < q.order; ++p) {
            double eh = 0.0;
            for (int a = 0; a < n1; ++a) eh += vals[p * n1 + a] * ec[a];
            const double d = eh - scenario.exact_e(x0 + hx * q.points[p], t);
            cell += q.weights[p] * d * d;
        }
        err2 += hx * cell;
    }
    return std::sqrt(err2);
}

ConvergenceReport convergence_study(const Scenario& scenario, const std::vector<int>& degrees,
                                    const std::vector<int>& meshes, const SolveConfig& solve,
                                    const TimeConfig& time) {
    if (!scenario.has_exact())
        throw std::invalid_argument("convergence_study: scenario has no exact solution");
    if (meshes.empty()) throw std::invalid_argument("convergence_study: empty mesh list");

    ConvergenceReport report;
    for (int k : degrees) {
        const NodalBasis1D basis(k);
        ConvergenceRow prev_row;
        bool have_prev = false;
        for (size_t s = 0; s < meshes.size(); ++s) {
            const int n = meshes[s];
            ConvergenceRow row;
            row.degree = k;
            row.n = n;
            try {
                const PhaseMesh mesh = build_phase_mesh(n, n, scenario.x_lo, scenario.x_hi,
                                                        scenario.v_half_width);
                const RunResult res = run_simulation(scenario, mesh, basis, solve, time);
                row.err_f = l2_error_f(res.final_state, scenario, time.t_final, basis);

                const PoissonSolver solver(solve.poisson, mesh, k, solve.penalty_scale);
                DensityField rho = compute_density(res.final_state, basis);
                for (double& c : rho.rho.coeffs) c -= res.background;
                const FieldPair field = solve.poisson == PoissonKind::LDGv
                                            ? solver.solve_ldg_v(rho).first
                                            : solver.solve_periodic(rho);
                row.err_e = l2_error_e(field, scenario, time.t_final, mesh, solver.basis_e());
            } catch (const std::exception&) {
                row.failed = true;
            }
            if (have_prev && !row.failed && !prev_row.failed && row.err_f > 0.0) {
                const double ratio = std::log(static_cast<double>(row.n) / prev_row.n);
                row.order_f = std::log(prev_row.err_f / row.err_f) / ratio;
                row.order_e = std::log(prev_row.err_e / row.err_e) / ratio;
            }
            report.rows.push_back(row);
            prev_row = row;
            have_prev = true;
        }
    }
    return report;
}

}  // namespace vpdg
