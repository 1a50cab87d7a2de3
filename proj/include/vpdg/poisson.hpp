// Discretizations of the 1D field problem E = Phi_x coupled to the charge
// density: RT_k mixed elements, the classic LDG method, the sign(v)
// alternating-flux LDG pair, and the Dirichlet variant for the plane diode.
// Each solver factors its global system once; solves reuse it.
#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vpdg/basis.hpp"
#include "vpdg/distribution.hpp"
#include "vpdg/mesh.hpp"

namespace vpdg {

// Piecewise polynomial on the x-mesh, nodal coefficients per cell.
struct XField {
    int degree = 0;
    int ncells = 0;
    std::vector<double> coeffs;

    XField() = default;
    XField(int degree_, int ncells_)
        : degree(degree_), ncells(ncells_),
          coeffs(static_cast<size_t>(ncells_) * (degree_ + 1), 0.0) {}

    std::span<double> cell(int i) {
        return {coeffs.data() + static_cast<size_t>(i) * (degree + 1),
                static_cast<size_t>(degree + 1)};
    }
    std::span<const double> cell(int i) const {
        return {coeffs.data() + static_cast<size_t>(i) * (degree + 1),
                static_cast<size_t>(degree + 1)};
    }
};

struct DensityField {
    XField rho;  // degree k
    double time = 0.0;
};

enum class PoissonKind { RT, LDG, LDGv, Dirichlet };
enum class FieldFlavor { RT, LDG, LDGvPlus, LDGvMinus, Dirichlet };

// Field approximation (E_h, Phi_h) with the potential jumps needed by the
// energy penalty term. Periodic flavors carry one jump per interior/wrap
// face (nx entries, face f at x_edges[f+1]); the Dirichlet flavor carries
// nx+1 entries (face f at x_edges[f]) with the boundary jumps taken
// against the boundary data.
struct FieldPair {
    FieldFlavor flavor = FieldFlavor::LDG;
    XField e;    // degree k+1
    XField phi;  // degree k+1 (LDG family) or k (RT)
    std::vector<double> phi_jumps;
    double c11 = 0.0;
};

// Exact v-integration of the distribution onto the x-mesh (degree k).
DensityField compute_density(const Distribution& f, const NodalBasis1D& basis);

double xfield_integral(const XField& field, const PhaseMesh& mesh, const NodalBasis1D& basis);

class PoissonSolver {
  public:
    // degree_k is the Vlasov polynomial degree; the field spaces use
    // degree k+1. c scales the jump penalty c11 = c (k+1)^2 / h_x.
    // c12 is the classic-LDG flux offset (|c12| = 1/2).
    PoissonSolver(PoissonKind kind, const PhaseMesh& mesh, int degree_k, double c = 1.0,
                  double c12 = 0.5);

    PoissonKind kind() const { return kind_; }
    const NodalBasis1D& basis_e() const { return basis_e_; }
    const NodalBasis1D& basis_rho() const { return basis_rho_; }
    double c11() const { return c11_; }

    // Periodic solve with the gauge Phi_h(x_lo) = 0. rhs is the density
    // minus the neutralizing background; its integral must vanish.
    FieldPair solve_periodic(const DensityField& rhs) const;

    // The alternating-flux pair: first element is the c12 = +1/2 branch
    // (paired with v > 0), second the -1/2 branch.
    std::pair<FieldPair, FieldPair> solve_ldg_v(const DensityField& rhs) const;

    // Diode solve of E_x = rho with Phi(x_lo) = 0, Phi(x_hi) = lambda
    // imposed weakly; no neutrality requirement.
    FieldPair solve_dirichlet(const DensityField& rho, double lambda) const;

  private:
    struct System;  // assembled + factored global system

    FieldPair solve_one(const System& sys, const DensityField& rhs, FieldFlavor flavor,
                        double lambda) const;
    std::vector<double> load_vector(const DensityField& rhs) const;

    PoissonKind kind_;
    const PhaseMesh* mesh_;
    NodalBasis1D basis_rho_;  // degree k
    NodalBasis1D basis_e_;    // degree k+1
    double c11_;
    double c12_;
    Eigen::MatrixXd rho_vals_at_equad_;  // degree-k values at the field quadrature
    std::shared_ptr<System> sys_a_;      // RT/LDG/Dirichlet, or the +1/2 branch
    std::shared_ptr<System> sys_b_;      // the -1/2 branch (LDGv only)
};

}  // namespace vpdg
