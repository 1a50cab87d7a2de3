// Cartesian tensor mesh of the phase-space domain Omega_x x [-L, L],
// periodic in x (or diode topology), with v = 0 constrained to a v-edge.
#pragma once

#include <vector>

namespace vpdg {

struct CellIndex {
    int i = 0;  // x-cell, 0..nx-1
    int j = 0;  // v-cell, 0..nv-1
};

enum class Side { Left, Right };

// Neighbor query result for a boundary face of a non-periodic mesh.
inline constexpr int kNoNeighbor = -1;

struct PhaseMesh {
    int nx = 0;
    int nv = 0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    double v_half_width = 0.0;  // Omega_v = [-L, L]
    bool periodic_x = true;

    std::vector<double> x_edges;  // nx+1, strictly increasing
    std::vector<double> v_edges;  // nv+1, strictly increasing, contains 0
    double hx_max = 0.0;
    double hv_max = 0.0;
    int v_zero_edge = 0;  // index e with v_edges[e] == 0

    double x_width(int i) const { return x_edges[i + 1] - x_edges[i]; }
    double v_width(int j) const { return v_edges[j + 1] - v_edges[j]; }
    int n_cells() const { return nx * nv; }
    // Cells j >= v_zero_edge lie in v > 0.
    bool cell_in_positive_v(int j) const { return j >= v_zero_edge; }
};

PhaseMesh build_phase_mesh(int nx, int nv, double x_lo, double x_hi, double v_half_width,
                           bool periodic_x = true);

// Periodic wrap (or kNoNeighbor at the boundary of a diode mesh).
int x_neighbor(const PhaseMesh& mesh, int i, Side side);

}  // namespace vpdg
