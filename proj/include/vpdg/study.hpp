// Convergence-study driver for the manufactured scenario, plus the
// over-integrated error norms it reports.
#pragma once

#include <vector>

#include "vpdg/timestep.hpp"

namespace vpdg {

// || f_h(t) - f(t) ||_{L2(Omega)} with extra quadrature points per cell.
double l2_error_f(const Distribution& f, const Scenario& scenario, double t,
                  const NodalBasis1D& basis);

// || E_h(t) - E(t) ||_{L2(Omega_x)} for the field recomputed from f_h.
double l2_error_e(const FieldPair& field, const Scenario& scenario, double t,
                  const PhaseMesh& mesh, const NodalBasis1D& basis_e);

struct ConvergenceRow {
    int degree = 0;
    int n = 0;  // cells per direction
    double err_f = 0.0;
    double err_e = 0.0;
    double order_f = 0.0;  // 0 for the first mesh of a degree
    double order_e = 0.0;
    bool failed = false;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
};

// Runs each (degree, n x n mesh) to t_final and tabulates errors and
// empirical orders between successive meshes. A blown-up run is recorded
// as a failed row and the study continues.
ConvergenceReport convergence_study(const Scenario& scenario, const std::vector<int>& degrees,
                                    const std::vector<int>& meshes, const SolveConfig& solve,
                                    const TimeConfig& time);

}  // namespace vpdg
