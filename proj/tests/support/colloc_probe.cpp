// Scratch probe: collocated (nodal-interpolant) product assembly vs the
// exact-quadrature operator, on the manufactured convergence rows.
// mode 1: collocate v*f transport only; mode 2: collocate E*f too.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vpdg/study.hpp"
#include "vpdg/timestep.hpp"

using namespace vpdg;

namespace {

struct CollocOp {
    const NodalBasis1D& basis;
    const PhaseMesh& mesh;
    const PoissonSolver& solver;
    double bg;
    int mode;  // 1 or 2
    Eigen::MatrixXd kmat;  // K(a,n) = int l_a' l_n
    ElectricField field;

    CollocOp(const NodalBasis1D& b, const PhaseMesh& m, const PoissonSolver& s, double bg_,
             int mode_)
        : basis(b), mesh(m), solver(s), bg(bg_), mode(mode_) {
        const int n1 = b.n_nodes();
        kmat.resize(n1, n1);
        for (int a = 0; a < n1; ++a)
            for (int n = 0; n < n1; ++n) {
                double sum = 0.0;
                for (int q = 0; q < b.n_quad(); ++q)
                    sum += b.quad().weights[q] * b.derivs_at_quad()(q, a) * b.values_at_quad()(q, n);
                kmat(a, n) = sum;
            }
    }

    void operator()(const Distribution& f, double t, RhsBlock& out) {
        DensityField rho = compute_density(f, basis);
        for (double& c : rho.rho.coeffs) c -= bg;
        field = evaluate_field(solver.solve_ldg_v(rho), basis, solver.basis_e());
        if (out.data().size() != f.data().size()) out = RhsBlock(mesh, f.degree());

        const int n1 = basis.n_nodes();
        const Eigen::MatrixXd& m1 = basis.mass();
        const Eigen::MatrixXd& minv = basis.mass_inverse();
        const int nq = basis.n_quad();

        Eigen::MatrixXd r(n1, n1), a_(n1, n1), enodes(mesh.nx, n1);
        // field values at the x-nodes of each cell
        for (int i = 0; i < mesh.nx; ++i) {
            const FieldPair& fp = field.plus;
            for (int n = 0; n < n1; ++n)
                enodes(i, n) = solver.basis_e().eval(fp.e.cell(i), basis.nodes()[n]);
        }
        std::vector<double> tro(nq), trn(nq);

        for (int i = 0; i < mesh.nx; ++i)
            for (int j = 0; j < mesh.nv; ++j) {
                const double hx = mesh.x_width(i), hv = mesh.v_width(j);
                const double v0 = mesh.v_edges[j];
                const auto blk = f.block(i, j);
                for (int n = 0; n < n1; ++n)
                    for (int m = 0; m < n1; ++m) a_(n, m) = blk[n * n1 + m];
                r.setZero();

                // volume v*f, collocated: hv * K(a,n) M(b,m) v_m A(n,m)
                for (int a = 0; a < n1; ++a)
                    for (int b = 0; b < n1; ++b) {
                        double s = 0.0;
                        for (int n = 0; n < n1; ++n)
                            for (int m = 0; m < n1; ++m)
                                s += kmat(a, n) * m1(b, m) * (v0 + hv * basis.nodes()[m]) *
                                     a_(n, m);
                        r(a, b) += hv * s;
                    }

                // volume E*f
                const bool pos = mesh.cell_in_positive_v(j);
                const CellFieldData& cd = field.cell(i, pos);
                if (mode >= 2) {
                    for (int a = 0; a < n1; ++a)
                        for (int b = 0; b < n1; ++b) {
                            double s = 0.0;
                            for (int n = 0; n < n1; ++n)
                                for (int m = 0; m < n1; ++m)
                                    s += m1(a, n) * kmat(b, m) * enodes(i, n) * a_(n, m);
                            r(a, b) -= hx * s;
                        }
                }

                // x-faces, flux at the v-nodes (collocated)
                const int right = (i + 1) % mesh.nx, left = (i + mesh.nx - 1) % mesh.nx;
                const auto rblk = f.block(right, j);
                const auto lblk = f.block(left, j);
                for (int m = 0; m < n1; ++m) {
                    const double vm = v0 + hv * basis.nodes()[m];
                    const double fr = upwind_v_flux(vm, a_(n1 - 1, m), rblk[0 * n1 + m]);
                    const double fl = upwind_v_flux(vm, lblk[(n1 - 1) * n1 + m], a_(0, m));
                    for (int b = 0; b < n1; ++b) {
                        r(n1 - 1, b) -= hv * fr * m1(b, m);
                        r(0, b) += hv * fl * m1(b, m);
                    }
                }

                // v-faces at the x-nodes (collocated when mode >= 2, else at
                // quadrature points like the library)
                if (mode >= 2) {
                    if (j + 1 < mesh.nv) {
                        const auto ublk = f.block(i, j + 1);
                        const CellFieldData& fd = field.cell_for_face(i, mesh, j + 1);
                        for (int n = 0; n < n1; ++n) {
                            const double fx = e_flux(fd, enodes(i, n), a_(n, n1 - 1),
                                                     ublk[n * n1 + 0], FluxVariant::WeightedAverage);
                            for (int a = 0; a < n1; ++a) r(a, n1 - 1) += hx * fx * m1(a, n);
                        }
                    }
                    if (j > 0) {
                        const auto dblk = f.block(i, j - 1);
                        const CellFieldData& fd = field.cell_for_face(i, mesh, j);
                        for (int n = 0; n < n1; ++n) {
                            const double fx = e_flux(fd, enodes(i, n), dblk[n * n1 + (n1 - 1)],
                                                     a_(n, 0), FluxVariant::WeightedAverage);
                            for (int a = 0; a < n1; ++a) r(a, 0) -= hx * fx * m1(a, n);
                        }
                    }
                } else {
                    const auto& vq = basis.values_at_quad();
                    const auto& w = basis.quad().weights;
                    if (j + 1 < mesh.nv) {
                        const auto ublk = f.block(i, j + 1);
                        const CellFieldData& fd = field.cell_for_face(i, mesh, j + 1);
                        for (int q = 0; q < nq; ++q) {
                            double fm = 0.0, fp = 0.0;
                            for (int n = 0; n < n1; ++n) {
                                fm += vq(q, n) * a_(n, n1 - 1);
                                fp += vq(q, n) * ublk[n * n1 + 0];
                            }
                            const double fx =
                                e_flux(fd, fd.e_quad[q], fm, fp, FluxVariant::WeightedAverage);
                            for (int a = 0; a < n1; ++a) r(a, n1 - 1) += hx * w[q] * fx * vq(q, a);
                        }
                    }
                    if (j > 0) {
                        const auto dblk = f.block(i, j - 1);
                        const CellFieldData& fd = field.cell_for_face(i, mesh, j);
                        for (int q = 0; q < nq; ++q) {
                            double fm = 0.0, fp = 0.0;
                            for (int n = 0; n < n1; ++n) {
                                fm += vq(q, n) * dblk[n * n1 + (n1 - 1)];
                                fp += vq(q, n) * a_(n, 0);
                            }
                            const double fx =
                                e_flux(fd, fd.e_quad[q], fm, fp, FluxVariant::WeightedAverage);
                            for (int a = 0; a < n1; ++a) r(a, 0) -= hx * w[q] * fx * vq(q, a);
                        }
                    }
                    // exact-quadrature E volume term
                    for (int a = 0; a < n1; ++a)
                        for (int b = 0; b < n1; ++b) {
                            double s = 0.0;
                            for (int qx = 0; qx < nq; ++qx) {
                                double inner = 0.0;
                                for (int qv = 0; qv < nq; ++qv) {
                                    double fv = 0.0;
                                    for (int n = 0; n < n1; ++n) {
                                        double rowv = 0.0;
                                        for (int m = 0; m < n1; ++m)
                                            rowv += vq(qv, m) * a_(n, m);
                                        fv += vq(qx, n) * rowv;
                                    }
                                    inner += w[qv] * fv * basis.derivs_at_quad()(qv, b);
                                }
                                s += w[qx] * cd.e_quad[qx] * vq(qx, a) * inner;
                            }
                            r(a, b) -= hx * s;
                        }
                }

                // forcing, exact quadrature
                {
                    const auto& vq = basis.values_at_quad();
                    const auto& w = basis.quad().weights;
                    const Scenario* sc = forcing_scenario;
                    if (sc && sc->forcing) {
                        for (int qx = 0; qx < nq; ++qx)
                            for (int qv = 0; qv < nq; ++qv) {
                                const double x = mesh.x_edges[i] + hx * basis.quad().points[qx];
                                const double v = v0 + hv * basis.quad().points[qv];
                                const double wf = hx * hv * w[qx] * w[qv] * sc->forcing(x, v, t);
                                for (int a = 0; a < n1; ++a)
                                    for (int b = 0; b < n1; ++b)
                                        r(a, b) += wf * vq(qx, a) * vq(qv, b);
                            }
                    }
                }

                const Eigen::MatrixXd alpha = minv * r * minv / (hx * hv);
                auto ob = out.block(i, j);
                for (int n = 0; n < n1; ++n)
                    for (int m = 0; m < n1; ++m) ob[n * n1 + m] = alpha(n, m);
            }
    }

    const Scenario* forcing_scenario = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
    const int mode = argc > 1 ? std::stoi(argv[1]) : 1;
    Scenario sc = make_scenario("forced");
    struct Case { int k, n; double paper; };
    for (const auto& c : {Case{2, 20, 3.0134e-2}, Case{2, 40, 6.4623e-3},
                          Case{3, 20, 5.8295e-3}, Case{3, 40, 3.6361e-4}}) {
        const NodalBasis1D basis(c.k);
        const PhaseMesh mesh = build_phase_mesh(c.n, c.n, sc.x_lo, sc.x_hi, sc.v_half_width);
        const PoissonSolver solver(PoissonKind::LDGv, mesh, c.k);
        Distribution f = project_initial(sc.f0, mesh, basis);
        const double bg = total_mass(f, basis) / (mesh.x_hi - mesh.x_lo);
        CollocOp op(basis, mesh, solver, bg, mode);
        op.forcing_scenario = &sc;
        StageWorkspace ws;
        double t = 0.0;
        OdeRhs rhs = [&](const Distribution& s, double tt, RhsBlock& o) { op(s, tt, o); };
        for (int s = 0; s < 1000; ++s) { rk4_step(f, t, 1e-3, rhs, ws); t += 1e-3; }
        const double err = l2_error_f(f, sc, 1.0, basis);
        std::printf("mode=%d k=%d n=%d paper=%.4e colloc=%.4e (x%.3f)\n", mode, c.k, c.n,
                    c.paper, err, err / c.paper);
    }
    return 0;
}
