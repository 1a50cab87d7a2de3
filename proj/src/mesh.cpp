#include "vpdg/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vpdg {

PhaseMesh build_phase_mesh(int nx, int nv, double x_lo, double x_hi, double v_half_width,
                           bool periodic_x) {
    if (nx < 2 || nv < 2) throw std::invalid_argument("build_phase_mesh: nx, nv must be >= 2");
    if (x_hi <= x_lo) throw std::invalid_argument("build_phase_mesh: empty x-range");
    if (v_half_width <= 0.0) throw std::invalid_argument("build_phase_mesh: L must be positive");
    if (nv % 2 != 0)
        throw std::invalid_argument("build_phase_mesh: nv must be even so that v=0 is a v-edge");

    PhaseMesh m;
    m.nx = nx;
    m.nv = nv;
    m.x_lo = x_lo;
    m.x_hi = x_hi;
    m.v_half_width = v_half_width;
    m.periodic_x = periodic_x;

    m.x_edges.resize(nx + 1);
    for (int i = 0; i <= nx; ++i) m.x_edges[i] = x_lo + (x_hi - x_lo) * i / nx;
    m.x_edges[nx] = x_hi;

    m.v_edges.resize(nv + 1);
    for (int j = 0; j <= nv; ++j) m.v_edges[j] = -v_half_width + 2.0 * v_half_width * j / nv;
    m.v_edges[nv / 2] = 0.0;  // pin the zero edge exactly
    m.v_edges[nv] = v_half_width;
    m.v_zero_edge = nv / 2;

    m.hx_max = 0.0;
    for (int i = 0; i < nx; ++i) m.hx_max = std::max(m.hx_max, m.x_width(i));
    m.hv_max = 0.0;
    for (int j = 0; j < nv; ++j) m.hv_max = std::max(m.hv_max, m.v_width(j));

    if (std::abs(m.v_edges[m.v_zero_edge]) > 1e-14 * v_half_width)
        throw std::logic_error("build_phase_mesh: v=0 is not a v-edge");

    // Shape regularity: warn when the aspect ratio gets extreme.
    const double ratio = std::max(m.hx_max / m.hv_max, m.hv_max / m.hx_max);
    if (ratio > 20.0)
        std::fprintf(stderr, "warning: mesh aspect ratio h_x/h_v = %.3g exceeds 20\n",
                     m.hx_max / m.hv_max);
    return m;
}

int x_neighbor(const PhaseMesh& mesh, int i, Side side) {
    if (side == Side::Left) {
        if (i == 0) return mesh.periodic_x ? mesh.nx - 1 : kNoNeighbor;
        return i - 1;
    }
    if (i == mesh.nx - 1) return mesh.periodic_x ? 0 : kNoNeighbor;
    return i + 1;
}

}  // namespace vpdg
