// Reference-interval polynomial machinery: Lagrange nodal basis on
// Gauss-Lobatto points, Gauss quadrature, local operators, and the
// Bernstein conversion used for cell-wise sign detection.
#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace vpdg {

// Gauss-Legendre rule on [0,1], exact for polynomials of degree <= 2n-1.
struct Quadrature {
    int order = 0;
    std::vector<double> points;
    std::vector<double> weights;
};

Quadrature gauss_quadrature(int n);  // 1 <= n <= 20

// Gauss-Lobatto nodes on [0,1] for degree k (k+1 nodes, endpoints included).
std::vector<double> gauss_lobatto_nodes(int k);

enum class SignTag { Positive, Negative, Indeterminate };

// Conservative sign classification of a polynomial over [0,1].
// hull_min/hull_max bound the true range (Bernstein convex hull).
struct SignClass {
    SignTag tag = SignTag::Indeterminate;
    double hull_min = 0.0;
    double hull_max = 0.0;
};

// Range information for one cell: hull bounds plus the min/max of the
// nodal + quadrature samples (the cheap estimate used by the weighted flux).
struct CellExtrema {
    double hull_min = 0.0;
    double hull_max = 0.0;
    double sampled_min = 0.0;
    double sampled_max = 0.0;
};

// Degree-k nodal Lagrange basis on [0,1] with all local operators
// precomputed once. Immutable after construction; safe to share across
// threads.
class NodalBasis1D {
  public:
    explicit NodalBasis1D(int degree);

    int degree() const { return degree_; }
    int n_nodes() const { return degree_ + 1; }
    int n_quad() const { return quad_.order; }

    const std::vector<double>& nodes() const { return nodes_; }
    const Quadrature& quad() const { return quad_; }

    // Local mass matrix M_ab = int_0^1 l_a l_b and its inverse.
    const Eigen::MatrixXd& mass() const { return mass_; }
    const Eigen::MatrixXd& mass_inverse() const { return mass_inv_; }
    // Nodal differentiation: (D c)_a = p'(r_a) for p with nodal coeffs c.
    const Eigen::MatrixXd& diff() const { return diff_; }
    // Lagrange -> Bernstein coefficient map (inverse Vandermonde).
    const Eigen::MatrixXd& lag_to_bern() const { return lag_to_bern_; }

    // Basis values/derivatives tabulated at the quadrature points:
    // values_at_quad()(q,a) = l_a(x_q).
    const Eigen::MatrixXd& values_at_quad() const { return val_quad_; }
    const Eigen::MatrixXd& derivs_at_quad() const { return der_quad_; }
    // int_0^1 l_a (row sums of the mass matrix).
    const std::vector<double>& node_integrals() const { return node_integrals_; }

    // Stable point evaluation (barycentric form).
    double eval(std::span<const double> coeffs, double r) const;
    double eval_deriv(std::span<const double> coeffs, double r) const;

  private:
    int degree_;
    std::vector<double> nodes_;
    std::vector<double> bary_weights_;
    Quadrature quad_;
    Eigen::MatrixXd mass_, mass_inv_, diff_, lag_to_bern_;
    Eigen::MatrixXd val_quad_, der_quad_;
    std::vector<double> node_integrals_;
};

NodalBasis1D build_nodal_basis(int k);  // 1 <= k <= 12

// Evaluate all Bernstein polynomials B_0^k .. B_k^k at x.
void bernstein_values(int k, double x, std::span<double> out);

// Sign classification from Lagrange coefficients. Positive/Negative are
// never wrong; Indeterminate may occur for sign-definite polynomials.
SignClass classify_cell_sign(const NodalBasis1D& basis, std::span<const double> coeffs);

CellExtrema cell_extrema_estimate(const NodalBasis1D& basis, std::span<const double> coeffs);

}  // namespace vpdg
