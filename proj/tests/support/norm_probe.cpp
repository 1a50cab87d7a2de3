// Scratch probe: same final states, different error-norm conventions.
#include <cmath>
#include <cstdio>
#include <vector>

#include "vpdg/study.hpp"
#include "vpdg/timestep.hpp"

using namespace vpdg;

namespace {

// Lobatto weights on [0,1] for the k+1 nodal points.
std::vector<double> lobatto_weights(const NodalBasis1D& basis) {
    const int n = basis.n_nodes();  // = k+1
    const int k = basis.degree();
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        const double x = 2.0 * basis.nodes()[i] - 1.0;
        // Legendre P_k(x)
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= k; ++j) {
            const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        const double pk = (k == 0) ? 1.0 : p1;
        w[i] = 2.0 / (k * (k + 1) * pk * pk) / 2.0;  // map [-1,1] -> [0,1]
    }
    return w;
}

double nodal_error(const Distribution& f, const Scenario& sc, double t,
                   const NodalBasis1D& basis) {
    const PhaseMesh& mesh = f.mesh();
    const int n1 = basis.n_nodes();
    const std::vector<double> w = lobatto_weights(basis);
    double err2 = 0.0;
    for (int i = 0; i < mesh.nx; ++i)
        for (int j = 0; j < mesh.nv; ++j) {
            const double hx = mesh.x_width(i), hv = mesh.v_width(j);
            const auto blk = f.block(i, j);
            for (int n = 0; n < n1; ++n)
                for (int m = 0; m < n1; ++m) {
                    const double x = mesh.x_edges[i] + hx * basis.nodes()[n];
                    const double v = mesh.v_edges[j] + hv * basis.nodes()[m];
                    const double d = blk[n * n1 + m] - sc.exact_f(x, v, t);
                    err2 += hx * hv * w[n] * w[m] * d * d;
                }
        }
    return std::sqrt(err2);
}

}  // namespace

int main() {
    const Scenario sc = make_scenario("forced");
    SolveConfig solve;  // defaults: ldgv + a2
    TimeConfig time;
    time.t_final = 1.0;
    time.fixed_dt = 1e-3;
    struct Case { int k, n; double paper; };
    for (const auto& c : {Case{2, 20, 3.0134e-2}, Case{2, 40, 6.4623e-3},
                          Case{3, 20, 5.8295e-3}, Case{3, 40, 3.6361e-4}}) {
        const NodalBasis1D basis(c.k);
        const PhaseMesh mesh = build_phase_mesh(c.n, c.n, sc.x_lo, sc.x_hi, sc.v_half_width);
        const RunResult res = run_simulation(sc, mesh, basis, solve, time);
        const double e_full = l2_error_f(res.final_state, sc, 1.0, basis);
        const double e_nodal = nodal_error(res.final_state, sc, 1.0, basis);
        std::printf("k=%d n=%d paper=%.4e  overint=%.4e (x%.3f)  nodal=%.4e (x%.3f)\n", c.k, c.n,
                    c.paper, e_full, e_full / c.paper, e_nodal, e_nodal / c.paper);
    }
    return 0;
}
