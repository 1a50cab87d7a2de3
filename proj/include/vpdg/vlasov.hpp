// Semi-discrete DG operator for the Vlasov equation: upwind flux in x,
// the three field-flux variants in v (periodic form), and the diode form
// with inflow boundary data. Assembly is cell-parallel: each cell reads
// frozen neighbor traces and writes only its own residual block.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vpdg/basis.hpp"
#include "vpdg/distribution.hpp"
#include "vpdg/mesh.hpp"
#include "vpdg/poisson.hpp"

namespace vpdg {

enum class FluxVariant {
    CellAverageSign,   // branch chosen by the sign of the cell average
    WeightedAverage,   // classical upwind; weighted average on sign-changing cells
    ProjectedAverage,  // cell-average value on sign-changing cells (not consistent)
};

// Upwind flux for the x-transport: v f^- for v >= 0, v f^+ otherwise.
inline double upwind_v_flux(double v, double f_minus, double f_plus) {
    return v >= 0.0 ? v * f_minus : v * f_plus;
}

// Per-x-cell field data for the v-direction flux: samples at the volume
// quadrature points, the cell average, the sign classification, and the
// upwind weight from the sampled extrema.
struct CellFieldData {
    std::vector<double> e_quad;
    double p0 = 0.0;
    SignClass sign;
    double omega_plus = 0.5;
};

// A field branch evaluated on the Vlasov quadrature; LDGv carries one
// branch per sign of v, the other flavors duplicate a single field.
struct ElectricField {
    FieldFlavor flavor = FieldFlavor::LDG;
    FieldPair plus;                   // branch paired with v > 0 (primary)
    std::optional<FieldPair> minus;   // LDGv branch paired with v < 0
    std::vector<CellFieldData> cells_plus;
    std::vector<CellFieldData> cells_minus;

    const FieldPair& primary() const { return plus; }
    const CellFieldData& cell(int i, bool positive_v) const {
        return (positive_v || cells_minus.empty()) ? cells_plus[i] : cells_minus[i];
    }
    // Faces at v = 0 take the positive branch from both sides so the flux
    // stays single-valued.
    const CellFieldData& cell_for_face(int i, const PhaseMesh& mesh, int v_edge) const {
        return cell(i, v_edge >= mesh.v_zero_edge);
    }
};

// Sample a solved field on the Vlasov quadrature and precompute the sign
// and weight data every face flux needs. vlasov_basis has degree k, the
// field itself degree k+1.
ElectricField evaluate_field(FieldPair field, const NodalBasis1D& vlasov_basis,
                             const NodalBasis1D& field_basis);
ElectricField evaluate_field(std::pair<FieldPair, FieldPair> branches,
                             const NodalBasis1D& vlasov_basis, const NodalBasis1D& field_basis);

// Field flux at one face point of the periodic form. e_value is the
// (single-valued) field sample at the point; cd carries the cell's sign
// and weight data.
double e_flux(const CellFieldData& cd, double e_value, double f_minus, double f_plus,
              FluxVariant variant);

// Diode counterpart: the transport speed in v flips sign, so the upwind
// branches swap.
double e_flux_diode(const CellFieldData& cd, double e_value, double f_minus, double f_plus,
                    FluxVariant variant);

using ForcingFn = std::function<double(double, double, double)>;   // (x, v, t)
using InflowFn = std::function<double(double, double)>;            // (v, t)

// Residual of the periodic form, including the block mass inverse:
// out = M^{-1} L(f, E, t). Optional forcing adds its volume term.
void vlasov_rhs_periodic(const Distribution& f, const ElectricField& field, double t,
                         FluxVariant variant, const NodalBasis1D& basis,
                         const ForcingFn* forcing, RhsBlock& out);

// Residual of the diode form (transport f_t + v f_x + E f_v = 0) with
// weak inflow data g at x_lo for v > 0 and zero exterior state at x_hi.
void vlasov_rhs_diode(const Distribution& f, const ElectricField& field, double t,
                      FluxVariant variant, const NodalBasis1D& basis, const InflowFn& inflow,
                      RhsBlock& out);

}  // namespace vpdg
