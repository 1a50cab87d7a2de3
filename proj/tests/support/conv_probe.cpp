// Scratch probe: projection-error floor and time-step sensitivity of the
// manufactured convergence test.
#include <cstdio>

#include "vpdg/study.hpp"
#include "vpdg/timestep.hpp"

using namespace vpdg;

int main() {
    const Scenario sc = make_scenario("forced");
    for (int k : {2, 3}) {
        const NodalBasis1D basis(k);
        for (int n : {20, 40, 80}) {
            const PhaseMesh mesh = build_phase_mesh(n, n, sc.x_lo, sc.x_hi, sc.v_half_width);
            const Distribution f0 = project_initial(sc.f0, mesh, basis);
            std::printf("k=%d n=%d projection error at t=0: %.6e\n", k, n,
                        l2_error_f(f0, sc, 0.0, basis));
        }
    }
    return 0;
}
