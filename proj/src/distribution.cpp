#include "vpdg/distribution.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace vpdg {

namespace {

int locate(const std::vector<double>& edges, double s) {
    const int n = static_cast<int>(edges.size()) - 1;
    auto it = std::upper_bound(edges.begin(), edges.end(), s);
    int idx = static_cast<int>(it - edges.begin()) - 1;
    return std::clamp(idx, 0, n - 1);
}

}  // namespace

double Distribution::eval(const NodalBasis1D& basis, double x, double v) const {
    const int i = locate(mesh_->x_edges, x);
    const int j = locate(mesh_->v_edges, v);
    const double rx = (x - mesh_->x_edges[i]) / mesh_->x_width(i);
    const double rv = (v - mesh_->v_edges[j]) / mesh_->v_width(j);
    const int n1 = nodes_per_dim();
    const auto blk = block(i, j);
    std::vector<double> row(n1);
    for (int n = 0; n < n1; ++n) row[n] = basis.eval(blk.subspan(n * n1, n1), rv);
    return basis.eval(row, rx);
}

bool Distribution::all_finite() const {
    for (double c : data_)
        if (!std::isfinite(c)) return false;
    return true;
}

Distribution project_initial(const std::function<double(double, double)>& f0,
                             const PhaseMesh& mesh, const NodalBasis1D& basis) {
    const int n1 = basis.n_nodes();
    const int k = basis.degree();
    // Extra quadrature points keep the projected integrals of smooth data
    // (Gaussian tails in particular) accurate well below the conservation
    // tolerances; k+2 would already be exact for per-cell polynomials.
    const Quadrature q = gauss_quadrature(std::min(20, k + 5));
    const int nq = q.order;

    Eigen::MatrixXd vals(nq, n1);
    std::vector<double> unit(n1, 0.0);
    for (int a = 0; a < n1; ++a) {
        unit[a] = 1.0;
        for (int p = 0; p < nq; ++p) vals(p, a) = basis.eval(unit, q.points[p]);
        unit[a] = 0.0;
    }

    Distribution f(mesh, k);
    Eigen::MatrixXd fq(nq, nq), b(n1, n1), alpha(n1, n1);
    for (int i = 0; i < mesh.nx; ++i) {
        const double x0 = mesh.x_edges[i], hx = mesh.x_width(i);
        for (int j = 0; j < mesh.nv; ++j) {
            const double v0 = mesh.v_edges[j], hv = mesh.v_width(j);
            for (int px = 0; px < nq; ++px)
                for (int pv = 0; pv < nq; ++pv)
                    fq(px, pv) = f0(x0 + hx * q.points[px], v0 + hv * q.points[pv]);
            // b_ab = sum_q w w f0 l_a l_b; the h factors cancel against the
            // cell mass matrix.
            for (int a = 0; a < n1; ++a)
                for (int c = 0; c < n1; ++c) {
                    double s = 0.0;
                    for (int px = 0; px < nq; ++px) {
                        double inner = 0.0;
                        for (int pv = 0; pv < nq; ++pv)
                            inner += q.weights[pv] * fq(px, pv) * vals(pv, c);
                        s += q.weights[px] * vals(px, a) * inner;
                    }
                    b(a, c) = s;
                }
            alpha = basis.mass_inverse() * b * basis.mass_inverse();
            auto blk = f.block(i, j);
            for (int a = 0; a < n1; ++a)
                for (int c = 0; c < n1; ++c) blk[a * n1 + c] = alpha(a, c);
        }
    }
    return f;
}

}  // namespace vpdg
