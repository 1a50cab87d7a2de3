#include "vpdg/vlasov.hpp"

#include <cmath>
#include <stdexcept>

namespace vpdg {

namespace {

std::vector<CellFieldData> evaluate_branch(const FieldPair& fp, const NodalBasis1D& vlasov_basis,
                                           const NodalBasis1D& field_basis) {
    const int nx = fp.e.ncells;
    const int nq = vlasov_basis.n_quad();
    std::vector<CellFieldData> cells(nx);
    for (int i = 0; i < nx; ++i) {
        CellFieldData& cd = cells[i];
        const auto ec = fp.e.cell(i);
        cd.e_quad.resize(nq);
        for (int q = 0; q < nq; ++q)
            cd.e_quad[q] = field_basis.eval(ec, vlasov_basis.quad().points[q]);
        // Cell average on the unit reference interval.
        double p0 = 0.0;
        for (int a = 0; a < field_basis.n_nodes(); ++a)
            p0 += field_basis.node_integrals()[a] * ec[a];
        cd.p0 = p0;
        cd.sign = classify_cell_sign(field_basis, ec);
        const CellExtrema ex = cell_extrema_estimate(field_basis, ec);
        const double den = std::abs(ex.sampled_max) + std::abs(ex.sampled_min);
        cd.omega_plus = den > 0.0 ? std::abs(ex.sampled_max) / den : 0.5;
    }
    return cells;
}

}  // namespace

ElectricField evaluate_field(FieldPair field, const NodalBasis1D& vlasov_basis,
                             const NodalBasis1D& field_basis) {
    ElectricField out;
    out.flavor = field.flavor;
    out.cells_plus = evaluate_branch(field, vlasov_basis, field_basis);
    out.plus = std::move(field);
    return out;
}

ElectricField evaluate_field(std::pair<FieldPair, FieldPair> branches,
                             const NodalBasis1D& vlasov_basis, const NodalBasis1D& field_basis) {
    ElectricField out;
    out.flavor = branches.first.flavor;
    out.cells_plus = evaluate_branch(branches.first, vlasov_basis, field_basis);
    out.cells_minus = evaluate_branch(branches.second, vlasov_basis, field_basis);
    out.plus = std::move(branches.first);
    out.minus = std::move(branches.second);
    return out;
}

double e_flux(const CellFieldData& cd, double e_value, double f_minus, double f_plus,
              FluxVariant variant) {
    switch (variant) {
        case FluxVariant::CellAverageSign:
            return cd.p0 >= 0.0 ? e_value * f_plus : e_value * f_minus;
        case FluxVariant::WeightedAverage:
            if (cd.sign.tag == SignTag::Positive) return e_value * f_plus;
            if (cd.sign.tag == SignTag::Negative) return e_value * f_minus;
            return e_value * (cd.omega_plus * f_plus + (1.0 - cd.omega_plus) * f_minus);
        case FluxVariant::ProjectedAverage:
            if (cd.sign.tag == SignTag::Positive) return e_value * f_plus;
            if (cd.sign.tag == SignTag::Negative) return e_value * f_minus;
            return cd.p0 >= 0.0 ? cd.p0 * f_plus : cd.p0 * f_minus;
    }
    return 0.0;
}

double e_flux_diode(const CellFieldData& cd, double e_value, double f_minus, double f_plus,
                    FluxVariant variant) {
    switch (variant) {
        case FluxVariant::CellAverageSign:
            return cd.p0 >= 0.0 ? e_value * f_minus : e_value * f_plus;
        case FluxVariant::WeightedAverage:
            if (cd.sign.tag == SignTag::Positive) return e_value * f_minus;
            if (cd.sign.tag == SignTag::Negative) return e_value * f_plus;
            return e_value * ((1.0 - cd.omega_plus) * f_plus + cd.omega_plus * f_minus);
        case FluxVariant::ProjectedAverage:
            throw std::invalid_argument("e_flux_diode: projected-average variant not supported");
    }
    return 0.0;
}

namespace {

struct Tables {
    int n1 = 0, nq = 0;
    std::vector<double> pval, pder;  // [q*n1 + a]
    std::vector<double> qw, qp;
    std::vector<double> minv;  // [a*n1 + b]

    explicit Tables(const NodalBasis1D& basis)
        : n1(basis.n_nodes()), nq(basis.n_quad()) {
        pval.resize(nq * n1);
        pder.resize(nq * n1);
        for (int q = 0; q < nq; ++q)
            for (int a = 0; a < n1; ++a) {
                pval[q * n1 + a] = basis.values_at_quad()(q, a);
                pder[q * n1 + a] = basis.derivs_at_quad()(q, a);
            }
        qw = basis.quad().weights;
        qp = basis.quad().points;
        minv.resize(n1 * n1);
        for (int a = 0; a < n1; ++a)
            for (int b = 0; b < n1; ++b) minv[a * n1 + b] = basis.mass_inverse()(a, b);
    }
};

struct Workspace {
    std::vector<double> fq;    // F(qx,qv)
    std::vector<double> t1;    // (qx, m)
    std::vector<double> g;     // (qx, b)
    std::vector<double> r;     // residual (a,b)
    std::vector<double> tmp;   // mass-inverse scratch
    std::vector<double> tr_a;  // face traces
    std::vector<double> tr_b;

    void resize(int n1, int nq) {
        fq.resize(nq * nq);
        t1.resize(nq * n1);
        g.resize(nq * n1);
        r.resize(n1 * n1);
        tmp.resize(n1 * n1);
        tr_a.resize(nq);
        tr_b.resize(nq);
    }
};

// Trace of the block along a vertical face (fixed x-node row), sampled at
// the v-quadrature points.
inline void x_trace(const Tables& tb, std::span<const double> blk, int row,
                    std::vector<double>& out) {
    for (int q = 0; q < tb.nq; ++q) {
        double s = 0.0;
        for (int m = 0; m < tb.n1; ++m) s += tb.pval[q * tb.n1 + m] * blk[row * tb.n1 + m];
        out[q] = s;
    }
}

// Trace along a horizontal face (fixed v-node column), sampled at the
// x-quadrature points.
inline void v_trace(const Tables& tb, std::span<const double> blk, int col,
                    std::vector<double>& out) {
    for (int q = 0; q < tb.nq; ++q) {
        double s = 0.0;
        for (int n = 0; n < tb.n1; ++n) s += tb.pval[q * tb.n1 + n] * blk[n * tb.n1 + col];
        out[q] = s;
    }
}

enum class Form { Periodic, Diode };

template <Form form>
void assemble_cell(const Distribution& f, const ElectricField& field, double t,
                   FluxVariant variant, const Tables& tb, const ForcingFn* forcing,
                   const InflowFn* inflow, int i, int j, Workspace& ws, RhsBlock& out) {
    const PhaseMesh& mesh = f.mesh();
    const int n1 = tb.n1, nq = tb.nq;
    const auto blk = f.block(i, j);
    const double hx = mesh.x_width(i), hv = mesh.v_width(j);
    const double x0 = mesh.x_edges[i], v0 = mesh.v_edges[j];

    // F(qx,qv) = f at the tensor quadrature grid.
    for (int q = 0; q < nq; ++q)
        for (int m = 0; m < n1; ++m) {
            double s = 0.0;
            for (int n = 0; n < n1; ++n) s += tb.pval[q * n1 + n] * blk[n * n1 + m];
            ws.t1[q * n1 + m] = s;
        }
    for (int qx = 0; qx < nq; ++qx)
        for (int qv = 0; qv < nq; ++qv) {
            double s = 0.0;
            for (int m = 0; m < n1; ++m) s += ws.t1[qx * n1 + m] * tb.pval[qv * n1 + m];
            ws.fq[qx * nq + qv] = s;
        }

    std::fill(ws.r.begin(), ws.r.end(), 0.0);

    // Volume transport: + hv sum w_qx l_a'(qx) [sum w_qv v f l_b(qv)].
    for (int qx = 0; qx < nq; ++qx)
        for (int b = 0; b < n1; ++b) {
            double s = 0.0;
            for (int qv = 0; qv < nq; ++qv) {
                const double v = v0 + hv * tb.qp[qv];
                s += tb.qw[qv] * v * ws.fq[qx * nq + qv] * tb.pval[qv * n1 + b];
            }
            ws.g[qx * n1 + b] = s;
        }
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
            double s = 0.0;
            for (int qx = 0; qx < nq; ++qx)
                s += tb.qw[qx] * tb.pder[qx * n1 + a] * ws.g[qx * n1 + b];
            ws.r[a * n1 + b] += hv * s;
        }

    // Volume acceleration: -+ hx sum w_qx E(qx) l_a(qx) [sum w_qv f l_b'(qv)]
    // (periodic form subtracts, diode form adds).
    const CellFieldData& cd = field.cell(i, mesh.cell_in_positive_v(j));
    for (int qx = 0; qx < nq; ++qx)
        for (int b = 0; b < n1; ++b) {
            double s = 0.0;
            for (int qv = 0; qv < nq; ++qv)
                s += tb.qw[qv] * ws.fq[qx * nq + qv] * tb.pder[qv * n1 + b];
            ws.g[qx * n1 + b] = s;
        }
    const double vol_sign = form == Form::Periodic ? -1.0 : 1.0;
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
            double s = 0.0;
            for (int qx = 0; qx < nq; ++qx)
                s += tb.qw[qx] * cd.e_quad[qx] * tb.pval[qx * n1 + a] * ws.g[qx * n1 + b];
            ws.r[a * n1 + b] += vol_sign * hx * s;
        }

    // Vertical faces (upwind in v). Both cells sharing a face compute the
    // identical flux value, so the mass functional telescopes exactly.
    const int right = x_neighbor(mesh, i, Side::Right);
    const int left = x_neighbor(mesh, i, Side::Left);
    {
        // right face: test trace is the last x-row
        x_trace(tb, blk, n1 - 1, ws.tr_a);
        if (right != kNoNeighbor) x_trace(tb, f.block(right, j), 0, ws.tr_b);
        for (int qv = 0; qv < nq; ++qv) {
            const double v = v0 + hv * tb.qp[qv];
            double flux;
            if (right != kNoNeighbor)
                flux = upwind_v_flux(v, ws.tr_a[qv], ws.tr_b[qv]);
            else
                flux = v >= 0.0 ? v * ws.tr_a[qv] : 0.0;  // absorbing outflow at x_hi
            const double w = hv * tb.qw[qv] * flux;
            for (int b = 0; b < n1; ++b) ws.r[(n1 - 1) * n1 + b] -= w * tb.pval[qv * n1 + b];
        }
        // left face: test trace is x-row 0
        x_trace(tb, blk, 0, ws.tr_a);
        if (left != kNoNeighbor) x_trace(tb, f.block(left, j), n1 - 1, ws.tr_b);
        for (int qv = 0; qv < nq; ++qv) {
            const double v = v0 + hv * tb.qp[qv];
            double flux;
            if (left != kNoNeighbor)
                flux = upwind_v_flux(v, ws.tr_b[qv], ws.tr_a[qv]);
            else
                flux = v > 0.0 ? v * (*inflow)(v, t) : v * ws.tr_a[qv];  // emitted beam enters
            const double w = hv * tb.qw[qv] * flux;
            for (int b = 0; b < n1; ++b) ws.r[0 * n1 + b] += w * tb.pval[qv * n1 + b];
        }
    }

    // Horizontal faces (field flux); the compact-support boundary flux is 0.
    const double face_sign = form == Form::Periodic ? 1.0 : -1.0;
    if (j + 1 < mesh.nv) {
        v_trace(tb, blk, n1 - 1, ws.tr_a);
        v_trace(tb, f.block(i, j + 1), 0, ws.tr_b);
        const CellFieldData& fd = field.cell_for_face(i, mesh, j + 1);
        for (int qx = 0; qx < nq; ++qx) {
            double flux;
            if constexpr (form == Form::Periodic)
                flux = e_flux(fd, fd.e_quad[qx], ws.tr_a[qx], ws.tr_b[qx], variant);
            else
                flux = e_flux_diode(fd, fd.e_quad[qx], ws.tr_a[qx], ws.tr_b[qx], variant);
            const double w = face_sign * hx * tb.qw[qx] * flux;
            for (int a = 0; a < n1; ++a) ws.r[a * n1 + (n1 - 1)] += w * tb.pval[qx * n1 + a];
        }
    }
    if (j > 0) {
        v_trace(tb, blk, 0, ws.tr_b);
        v_trace(tb, f.block(i, j - 1), n1 - 1, ws.tr_a);
        const CellFieldData& fd = field.cell_for_face(i, mesh, j);
        for (int qx = 0; qx < nq; ++qx) {
            double flux;
            if constexpr (form == Form::Periodic)
                flux = e_flux(fd, fd.e_quad[qx], ws.tr_a[qx], ws.tr_b[qx], variant);
            else
                flux = e_flux_diode(fd, fd.e_quad[qx], ws.tr_a[qx], ws.tr_b[qx], variant);
            const double w = face_sign * hx * tb.qw[qx] * flux;
            for (int a = 0; a < n1; ++a) ws.r[a * n1 + 0] -= w * tb.pval[qx * n1 + a];
        }
    }

    if (forcing) {
        for (int qx = 0; qx < nq; ++qx) {
            const double x = x0 + hx * tb.qp[qx];
            for (int qv = 0; qv < nq; ++qv) {
                const double v = v0 + hv * tb.qp[qv];
                const double w = hx * hv * tb.qw[qx] * tb.qw[qv] * (*forcing)(x, v, t);
                for (int a = 0; a < n1; ++a)
                    for (int b = 0; b < n1; ++b)
                        ws.r[a * n1 + b] += w * tb.pval[qx * n1 + a] * tb.pval[qv * n1 + b];
            }
        }
    }

    // Block mass inverse: out = M^-1 R M^-1 / (hx hv).
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
            double s = 0.0;
            for (int c = 0; c < n1; ++c) s += tb.minv[a * n1 + c] * ws.r[c * n1 + b];
            ws.tmp[a * n1 + b] = s;
        }
    auto ob = out.block(i, j);
    const double inv_area = 1.0 / (hx * hv);
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n1; ++b) {
            double s = 0.0;
            for (int c = 0; c < n1; ++c) s += ws.tmp[a * n1 + c] * tb.minv[b * n1 + c];
            ob[a * n1 + b] = s * inv_area;
        }
}

template <Form form>
void run_assembly(const Distribution& f, const ElectricField& field, double t,
                  FluxVariant variant, const NodalBasis1D& basis, const ForcingFn* forcing,
                  const InflowFn* inflow, RhsBlock& out) {
    const PhaseMesh& mesh = f.mesh();
    if (f.degree() != basis.degree())
        throw std::invalid_argument("vlasov_rhs: basis/distribution degree mismatch");
    if (static_cast<int>(field.cells_plus.size()) != mesh.nx)
        throw std::invalid_argument("vlasov_rhs: field/mesh size mismatch");
    if (out.data().size() != f.data().size()) out = RhsBlock(mesh, f.degree());

    const Tables tb(basis);
    const int ncells = mesh.n_cells();
#pragma omp parallel
    {
        Workspace ws;
        ws.resize(tb.n1, tb.nq);
#pragma omp for schedule(static)
        for (int c = 0; c < ncells; ++c)
            assemble_cell<form>(f, field, t, variant, tb, forcing, inflow, c / mesh.nv,
                                c % mesh.nv, ws, out);
    }
}

}  // namespace

void vlasov_rhs_periodic(const Distribution& f, const ElectricField& field, double t,
                         FluxVariant variant, const NodalBasis1D& basis,
                         const ForcingFn* forcing, RhsBlock& out) {
    if (!f.mesh().periodic_x)
        throw std::invalid_argument("vlasov_rhs_periodic: mesh is not periodic");
    run_assembly<Form::Periodic>(f, field, t, variant, basis, forcing, nullptr, out);
}

void vlasov_rhs_diode(const Distribution& f, const ElectricField& field, double t,
                      FluxVariant variant, const NodalBasis1D& basis, const InflowFn& inflow,
                      RhsBlock& out) {
    if (f.mesh().periodic_x)
        throw std::invalid_argument("vlasov_rhs_diode: mesh is periodic");
    if (variant == FluxVariant::ProjectedAverage)
        throw std::invalid_argument("vlasov_rhs_diode: projected-average variant not supported");
    run_assembly<Form::Diode>(f, field, t, variant, basis, nullptr, &inflow, out);
}

}  // namespace vpdg
