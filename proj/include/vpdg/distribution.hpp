// Piecewise-Q^k representation of the distribution function on the phase
// mesh: one (k+1)^2 block of tensor Lagrange coefficients per cell, with
// the degrees of freedom of a cell stored contiguously.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vpdg/basis.hpp"
#include "vpdg/mesh.hpp"

namespace vpdg {

class Distribution {
  public:
    Distribution() = default;
    Distribution(const PhaseMesh& mesh, int degree)
        : mesh_(&mesh),
          degree_(degree),
          data_(static_cast<size_t>(mesh.n_cells()) * (degree + 1) * (degree + 1), 0.0) {}

    const PhaseMesh& mesh() const { return *mesh_; }
    int degree() const { return degree_; }
    int nodes_per_dim() const { return degree_ + 1; }
    int block_size() const { return (degree_ + 1) * (degree_ + 1); }

    // Coefficient block of cell (i,j); entry (n,m) = n*(k+1)+m couples the
    // x-node n with the v-node m.
    std::span<double> block(int i, int j) {
        return {data_.data() + block_offset(i, j), static_cast<size_t>(block_size())};
    }
    std::span<const double> block(int i, int j) const {
        return {data_.data() + block_offset(i, j), static_cast<size_t>(block_size())};
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    // Point evaluation inside the owning cell (closure); used for snapshots
    // and error integration, not in the hot path.
    double eval(const NodalBasis1D& basis, double x, double v) const;

    bool all_finite() const;

  private:
    size_t block_offset(int i, int j) const {
        return (static_cast<size_t>(i) * mesh_->nv + j) * block_size();
    }

    const PhaseMesh* mesh_ = nullptr;
    int degree_ = 0;
    std::vector<double> data_;
};

// Residual blocks share the Distribution layout.
using RhsBlock = Distribution;

// Cell-wise L2-orthogonal projection of initial data onto the DG space.
// Reproduces per-cell polynomials of degree <= k exactly.
Distribution project_initial(const std::function<double(double, double)>& f0,
                             const PhaseMesh& mesh, const NodalBasis1D& basis);

}  // namespace vpdg
