#include "vpdg/poisson.hpp"

#include <cmath>
#include <stdexcept>

namespace vpdg {

DensityField compute_density(const Distribution& f, const NodalBasis1D& basis) {
    const PhaseMesh& mesh = f.mesh();
    const int n1 = basis.n_nodes();
    const auto& wbar = basis.node_integrals();
    DensityField rho;
    rho.rho = XField(basis.degree(), mesh.nx);
    for (int i = 0; i < mesh.nx; ++i) {
        auto out = rho.rho.cell(i);
        for (int j = 0; j < mesh.nv; ++j) {
            const double hv = mesh.v_width(j);
            const auto blk = f.block(i, j);
            for (int n = 0; n < n1; ++n) {
                double s = 0.0;
                for (int m = 0; m < n1; ++m) s += wbar[m] * blk[n * n1 + m];
                out[n] += hv * s;
            }
        }
    }
    return rho;
}

double xfield_integral(const XField& field, const PhaseMesh& mesh, const NodalBasis1D& basis) {
    const auto& wbar = basis.node_integrals();
    double total = 0.0;
    for (int i = 0; i < field.ncells; ++i) {
        const double h = mesh.x_width(i);
        const auto c = field.cell(i);
        double s = 0.0;
        for (int a = 0; a < basis.n_nodes(); ++a) s += wbar[a] * c[a];
        total += h * s;
    }
    return total;
}

// Assembled and LU-factored global system for one flux choice.
struct PoissonSolver::System {
    double c12 = 0.0;
    int n = 0;             // unknowns including the gauge border
    int n_e = 0;           // E dofs
    int n_phi = 0;         // Phi dofs
    bool bordered = false;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::VectorXd lambda_load;  // Dirichlet: rhs contribution per unit voltage
};

namespace {

// K(a,c) = int_0^1 l_a' l_c for the test basis (rows) against the trial
// basis (columns); both tabulated at the same quadrature.
Eigen::MatrixXd stiffness_cross(const Quadrature& q, const Eigen::MatrixXd& test_der,
                                const Eigen::MatrixXd& trial_val) {
    Eigen::MatrixXd out(test_der.cols(), trial_val.cols());
    for (int a = 0; a < test_der.cols(); ++a)
        for (int c = 0; c < trial_val.cols(); ++c) {
            double s = 0.0;
            for (int p = 0; p < q.order; ++p) s += q.weights[p] * test_der(p, a) * trial_val(p, c);
            out(a, c) = s;
        }
    return out;
}

// Values of a lower-degree basis at another basis's quadrature points.
Eigen::MatrixXd cross_values(const NodalBasis1D& basis, const Quadrature& q) {
    const int n1 = basis.n_nodes();
    Eigen::MatrixXd vals(q.order, n1);
    std::vector<double> unit(n1, 0.0);
    for (int a = 0; a < n1; ++a) {
        unit[a] = 1.0;
        for (int p = 0; p < q.order; ++p) vals(p, a) = basis.eval(unit, q.points[p]);
        unit[a] = 0.0;
    }
    return vals;
}

}  // namespace

PoissonSolver::PoissonSolver(PoissonKind kind, const PhaseMesh& mesh, int degree_k, double c,
                             double c12)
    : kind_(kind),
      mesh_(&mesh),
      basis_rho_(degree_k),
      basis_e_(degree_k + 1),
      c11_(c * (degree_k + 1) * (degree_k + 1) / mesh.hx_max),
      c12_(c12) {
    if (std::abs(std::abs(c12) - 0.5) > 1e-14)
        throw std::invalid_argument("PoissonSolver: |c12| must be 1/2");
    if (c11_ <= 0.0) throw std::invalid_argument("PoissonSolver: penalty must be positive");

    const int nx = mesh.nx;
    const double h = mesh.hx_max;  // uniform x-mesh
    const Quadrature& q = basis_e_.quad();
    rho_vals_at_equad_ = cross_values(basis_rho_, q);
    const Eigen::MatrixXd& valsk = rho_vals_at_equad_;

    auto assemble_ldg = [&](double c12v, bool dirichlet) {
        auto sys = std::make_shared<System>();
        const int k2 = basis_e_.n_nodes();
        const int ne = nx * k2;
        sys->c12 = c12v;
        sys->n_e = ne;
        sys->n_phi = ne;
        sys->bordered = !dirichlet;
        const int n = 2 * ne + (sys->bordered ? 1 : 0);
        sys->n = n;
        const int last = k2 - 1;

        const Eigen::MatrixXd& m2 = basis_e_.mass();
        const Eigen::MatrixXd kmat =
            stiffness_cross(q, basis_e_.derivs_at_quad(), basis_e_.values_at_quad());

        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        sys->lambda_load = Eigen::VectorXd::Zero(n);
        auto eidx = [&](int i, int aa) { return i * k2 + aa; };
        auto pidx = [&](int i, int aa) { return ne + i * k2 + aa; };

        for (int i = 0; i < nx; ++i) {
            const int ip = (i + 1) % nx;
            const int im = (i + nx - 1) % nx;
            const bool left_bdry = dirichlet && i == 0;
            const bool right_bdry = dirichlet && i == nx - 1;

            // int E z + int Phi z_x - [Phi_hat z]_faces = 0
            for (int aa = 0; aa < k2; ++aa) {
                const int row = eidx(i, aa);
                for (int e = 0; e < k2; ++e) a(row, eidx(i, e)) += h * m2(aa, e);
                for (int cc = 0; cc < k2; ++cc) a(row, pidx(i, cc)) += kmat(aa, cc);
            }
            {
                // right face, test trace z(1): Phi_hat = {Phi} - c12 [Phi]
                const int row = eidx(i, last);
                if (right_bdry) {
                    sys->lambda_load(row) += 1.0;  // Phi_hat = lambda
                } else {
                    a(row, pidx(ip, 0)) -= 0.5 - c12v;
                    a(row, pidx(i, last)) -= 0.5 + c12v;
                }
                // left face, test trace z(0): Phi_hat = 0 at the left boundary
                const int row0 = eidx(i, 0);
                if (!left_bdry) {
                    a(row0, pidx(i, 0)) += 0.5 - c12v;
                    a(row0, pidx(im, last)) += 0.5 + c12v;
                }
            }

            // int E p_x - [E_hat p]_faces = load
            for (int aa = 0; aa < k2; ++aa) {
                const int row = pidx(i, aa);
                for (int e = 0; e < k2; ++e) a(row, eidx(i, e)) += kmat(aa, e);
            }
            {
                const int row = pidx(i, last);
                if (right_bdry) {
                    // E_hat = E^- + c11 (lambda - Phi^-)
                    a(row, eidx(i, last)) -= 1.0;
                    a(row, pidx(i, last)) += c11_;
                    sys->lambda_load(row) += c11_;
                } else {
                    // E_hat = {E} + c12 [E] + c11 [Phi]
                    a(row, eidx(ip, 0)) -= 0.5 + c12v;
                    a(row, eidx(i, last)) -= 0.5 - c12v;
                    a(row, pidx(ip, 0)) -= c11_;
                    a(row, pidx(i, last)) += c11_;
                }
                const int row0 = pidx(i, 0);
                if (left_bdry) {
                    // E_hat = E^+ + c11 (Phi^+ - 0)
                    a(row0, eidx(i, 0)) += 1.0;
                    a(row0, pidx(i, 0)) += c11_;
                } else {
                    a(row0, eidx(i, 0)) += 0.5 + c12v;
                    a(row0, eidx(im, last)) += 0.5 - c12v;
                    a(row0, pidx(i, 0)) += c11_;
                    a(row0, pidx(im, last)) -= c11_;
                }
            }
        }

        if (sys->bordered) {
            // The periodic system is singular: (0, const) lies in the kernel
            // and the E-equations summed against p = 1 are dependent. Pin the
            // mean of Phi and absorb the redundancy with a multiplier column.
            const int r = 2 * ne;
            const auto& wbar = basis_e_.node_integrals();
            for (int i = 0; i < nx; ++i)
                for (int cc = 0; cc < k2; ++cc) a(r, pidx(i, cc)) = h * wbar[cc];
            for (int i = 0; i < nx; ++i)
                for (int aa = 0; aa < k2; ++aa) a(pidx(i, aa), r) = 1.0;
        }

        sys->lu.compute(a);
        return sys;
    };

    auto assemble_rt = [&]() {
        auto sys = std::make_shared<System>();
        const int k2 = basis_e_.n_nodes();
        const int k1 = basis_rho_.n_nodes();
        const int ng = nx * (k2 - 1);  // continuous periodic E nodes
        const int np = nx * k1;
        sys->n_e = ng;
        sys->n_phi = np;
        sys->bordered = true;
        const int n = ng + np + 1;
        sys->n = n;
        sys->lambda_load = Eigen::VectorXd::Zero(n);

        const Eigen::MatrixXd& m2 = basis_e_.mass();
        const Eigen::MatrixXd kmix = stiffness_cross(q, basis_e_.derivs_at_quad(), valsk);

        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        auto gidx = [&](int i, int aa) { return (i * (k2 - 1) + aa) % ng; };
        auto pidx = [&](int i, int cc) { return ng + i * k1 + cc; };

        for (int i = 0; i < nx; ++i) {
            for (int aa = 0; aa < k2; ++aa) {
                const int row = gidx(i, aa);
                for (int e = 0; e < k2; ++e) a(row, gidx(i, e)) += h * m2(aa, e);
                for (int cc = 0; cc < k1; ++cc) a(row, pidx(i, cc)) += kmix(aa, cc);
            }
            for (int cc = 0; cc < k1; ++cc) {
                const int row = pidx(i, cc);
                for (int e = 0; e < k2; ++e) a(row, gidx(i, e)) -= kmix(e, cc);
            }
        }

        const int r = ng + np;
        const auto& wbar1 = basis_rho_.node_integrals();
        for (int i = 0; i < nx; ++i)
            for (int cc = 0; cc < k1; ++cc) a(r, pidx(i, cc)) = h * wbar1[cc];
        for (int i = 0; i < nx; ++i)
            for (int cc = 0; cc < k1; ++cc) a(pidx(i, cc), r) = 1.0;

        sys->lu.compute(a);
        return sys;
    };

    switch (kind) {
        case PoissonKind::RT:
            sys_a_ = assemble_rt();
            break;
        case PoissonKind::LDG:
            sys_a_ = assemble_ldg(c12_, false);
            break;
        case PoissonKind::LDGv:
            sys_a_ = assemble_ldg(+0.5, false);
            sys_b_ = assemble_ldg(-0.5, false);
            break;
        case PoissonKind::Dirichlet:
            sys_a_ = assemble_ldg(c12_, true);
            break;
    }
}

std::vector<double> PoissonSolver::load_vector(const DensityField& rhs) const {
    // load(i,a) = h sum_q w_q g(x_q) l_a(x_q), g of degree k evaluated at
    // the degree-(k+1) quadrature.
    const int nx = mesh_->nx;
    const Quadrature& q = basis_e_.quad();
    const int k2 = basis_e_.n_nodes();
    const Eigen::MatrixXd& valsk = rho_vals_at_equad_;
    std::vector<double> load(static_cast<size_t>(nx) * k2, 0.0);
    for (int i = 0; i < nx; ++i) {
        const double h = mesh_->x_width(i);
        const auto rc = rhs.rho.cell(i);
        for (int p = 0; p < q.order; ++p) {
            double g = 0.0;
            for (int cc = 0; cc < basis_rho_.n_nodes(); ++cc) g += valsk(p, cc) * rc[cc];
            const double wg = h * q.weights[p] * g;
            for (int aa = 0; aa < k2; ++aa)
                load[i * k2 + aa] += wg * basis_e_.values_at_quad()(p, aa);
        }
    }
    return load;
}

FieldPair PoissonSolver::solve_one(const System& sys, const DensityField& rhs,
                                   FieldFlavor flavor, double lambda) const {
    const int nx = mesh_->nx;
    const int k2 = basis_e_.n_nodes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(sys.n);
    const std::vector<double> load = load_vector(rhs);

    const bool rt = (kind_ == PoissonKind::RT);
    const int load_offset = sys.n_e;  // density appears in the second block
    if (rt) {
        // RT load lives on the degree-k test space.
        const Quadrature& q = basis_e_.quad();
        const Eigen::MatrixXd& valsk = rho_vals_at_equad_;
        const int k1 = basis_rho_.n_nodes();
        for (int i = 0; i < nx; ++i) {
            const double h = mesh_->x_width(i);
            const auto rc = rhs.rho.cell(i);
            for (int p = 0; p < q.order; ++p) {
                double g = 0.0;
                for (int cc = 0; cc < k1; ++cc) g += valsk(p, cc) * rc[cc];
                const double wg = h * q.weights[p] * g;
                for (int cc = 0; cc < k1; ++cc) b(load_offset + i * k1 + cc) += wg * valsk(p, cc);
            }
        }
    } else {
        for (int i = 0; i < nx; ++i)
            for (int aa = 0; aa < k2; ++aa) b(load_offset + i * k2 + aa) = load[i * k2 + aa];
    }
    b += lambda * sys.lambda_load;

    const Eigen::VectorXd x = sys.lu.solve(b);

    FieldPair out;
    out.flavor = flavor;
    out.c11 = c11_;
    out.e = XField(basis_e_.degree(), nx);
    if (rt) {
        const int kp1 = basis_e_.n_nodes() - 1;
        for (int i = 0; i < nx; ++i) {
            auto ec = out.e.cell(i);
            for (int aa = 0; aa < k2; ++aa) ec[aa] = x((i * kp1 + aa) % sys.n_e);
        }
        out.phi = XField(basis_rho_.degree(), nx);
        const int k1 = basis_rho_.n_nodes();
        for (int i = 0; i < nx; ++i) {
            auto pc = out.phi.cell(i);
            for (int cc = 0; cc < k1; ++cc) pc[cc] = x(sys.n_e + i * k1 + cc);
        }
        // Penalty jumps are not part of the RT energy bookkeeping.
        out.phi_jumps.assign(nx, 0.0);
    } else {
        out.phi = XField(basis_e_.degree(), nx);
        for (int i = 0; i < nx; ++i) {
            auto ec = out.e.cell(i);
            auto pc = out.phi.cell(i);
            for (int aa = 0; aa < k2; ++aa) {
                ec[aa] = x(i * k2 + aa);
                pc[aa] = x(sys.n_e + i * k2 + aa);
            }
        }
        if (kind_ == PoissonKind::Dirichlet) {
            out.phi_jumps.assign(nx + 1, 0.0);
            out.phi_jumps[0] = out.phi.cell(0)[0];  // against Phi(x_lo) = 0
            for (int f = 1; f < nx; ++f)
                out.phi_jumps[f] = out.phi.cell(f)[0] - out.phi.cell(f - 1)[k2 - 1];
            out.phi_jumps[nx] = lambda - out.phi.cell(nx - 1)[k2 - 1];
        } else {
            out.phi_jumps.assign(nx, 0.0);
            for (int f = 0; f < nx; ++f)
                out.phi_jumps[f] = out.phi.cell((f + 1) % nx)[0] - out.phi.cell(f)[k2 - 1];
        }
    }

    // Gauge: shift Phi so the reconstructed Phi(x_lo) vanishes (constants
    // are in the periodic kernel; jumps and E are unaffected).
    if (kind_ != PoissonKind::Dirichlet) {
        const double shift = out.phi.cell(0)[0];
        for (double& v : out.phi.coeffs) v -= shift;
    }
    return out;
}

namespace {

void check_neutral(const DensityField& rhs, const PhaseMesh& mesh, const NodalBasis1D& basis) {
    double total = 0.0, scale = 0.0;
    for (int i = 0; i < rhs.rho.ncells; ++i) {
        const double h = mesh.x_width(i);
        const auto c = rhs.rho.cell(i);
        for (int a = 0; a < basis.n_nodes(); ++a) {
            total += h * basis.node_integrals()[a] * c[a];
            scale += h * basis.node_integrals()[a] * std::abs(c[a]);
        }
    }
    if (std::abs(total) > 1e-10 * std::max(1.0, scale))
        throw std::runtime_error("charge neutrality violated");
}

}  // namespace

FieldPair PoissonSolver::solve_periodic(const DensityField& rhs) const {
    if (kind_ != PoissonKind::RT && kind_ != PoissonKind::LDG)
        throw std::logic_error("solve_periodic: solver kind mismatch");
    check_neutral(rhs, *mesh_, basis_rho_);
    return solve_one(*sys_a_, rhs, kind_ == PoissonKind::RT ? FieldFlavor::RT : FieldFlavor::LDG,
                     0.0);
}

std::pair<FieldPair, FieldPair> PoissonSolver::solve_ldg_v(const DensityField& rhs) const {
    if (kind_ != PoissonKind::LDGv) throw std::logic_error("solve_ldg_v: solver kind mismatch");
    check_neutral(rhs, *mesh_, basis_rho_);
    return {solve_one(*sys_a_, rhs, FieldFlavor::LDGvPlus, 0.0),
            solve_one(*sys_b_, rhs, FieldFlavor::LDGvMinus, 0.0)};
}

FieldPair PoissonSolver::solve_dirichlet(const DensityField& rho, double lambda) const {
    if (kind_ != PoissonKind::Dirichlet)
        throw std::logic_error("solve_dirichlet: solver kind mismatch");
    // E_x = rho has the same weak form with the sign of the load flipped.
    DensityField neg;
    neg.time = rho.time;
    neg.rho = rho.rho;
    for (double& v : neg.rho.coeffs) v = -v;
    return solve_one(*sys_a_, neg, FieldFlavor::Dirichlet, lambda);
}

}  // namespace vpdg
