// Conserved-quantity tracking: mass, L^p norms, the discrete total energy
// with its jump penalty, broken gradient norms, and the log-linear rate
// fit used for the damping benchmarks.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "vpdg/basis.hpp"
#include "vpdg/distribution.hpp"
#include "vpdg/poisson.hpp"

namespace vpdg {

double total_mass(const Distribution& f, const NodalBasis1D& basis);

double lp_norm(const Distribution& f, const NodalBasis1D& basis, int p);

struct EnergyBreakdown {
    double total = 0.0;
    double kinetic = 0.0;    // iint (v^2/2) f
    double potential = 0.0;  // int E^2 / 2
    double penalty = 0.0;    // c11 sum [Phi]^2
};

EnergyBreakdown discrete_total_energy(const Distribution& f, const FieldPair& field,
                                      const NodalBasis1D& basis, const NodalBasis1D& basis_e);

double e_l2_norm(const FieldPair& field, const PhaseMesh& mesh, const NodalBasis1D& basis_e);

struct GradNorms {
    double grad_l2 = 0.0;
    double grad_linf = 0.0;
    double f_linf = 0.0;
};

// Element-wise (broken) gradient norms; the sup norms are sampled at the
// quadrature and nodal grids.
GradNorms grad_norms(const Distribution& f, const NodalBasis1D& basis);

struct ExpFit {
    double c = 0.0;
    double gamma = 0.0;  // log-slope: decay is negative
    double t_a = 0.0, t_b = 0.0;
    std::vector<std::pair<double, double>> maxima;  // (t, value) used in the fit
};

// Least-squares line through log(value) at the strict local maxima of the
// series inside [t_a, t_b]. Throws if fewer than 3 maxima are found.
ExpFit fit_exponential(std::span<const double> t, std::span<const double> y, double t_a,
                       double t_b);

struct DiagRow {
    double t = 0.0;
    double mass_dev = 0.0;
    double l1_dev = 0.0;
    double l2_dev = 0.0;
    double energy_dev = 0.0;
    double e_l2 = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double penalty = 0.0;
};

// Time series of deviations from the t = 0 reference values; deviations
// are identically zero in the first row by construction.
struct RunDiagnostics {
    double mass0 = 0.0, l1_0 = 0.0, l2_0 = 0.0, energy0 = 0.0;
    std::vector<DiagRow> rows;

    std::vector<double> times() const;
    std::vector<double> e_l2_series() const;
};

}  // namespace vpdg
