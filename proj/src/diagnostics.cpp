#include "vpdg/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace vpdg {

double total_mass(const Distribution& f, const NodalBasis1D& basis) {
    const PhaseMesh& mesh = f.mesh();
    const int n1 = basis.n_nodes();
    const auto& wbar = basis.node_integrals();
    double total = 0.0;
    for (int i = 0; i < mesh.nx; ++i)
        for (int j = 0; j < mesh.nv; ++j) {
            const double area = mesh.x_width(i) * mesh.v_width(j);
            const auto blk = f.block(i, j);
            double s = 0.0;
            for (int n = 0; n < n1; ++n) {
                double inner = 0.0;
                for (int m = 0; m < n1; ++m) inner += wbar[m] * blk[n * n1 + m];
                s += wbar[n] * inner;
            }
            total += area * s;
        }
    return total;
}

double lp_norm(const Distribution& f, const NodalBasis1D& basis, int p) {
    if (p != 1 && p != 2) throw std::invalid_argument("lp_norm: p must be 1 or 2");
    const PhaseMesh& mesh = f.mesh();
    const int n1 = basis.n_nodes();
    const int nq = basis.n_quad();
    const auto& vq = basis.values_at_quad();
    const auto& w = basis.quad().weights;
    double total = 0.0;
    std::vector<double> row(n1);
    for (int i = 0; i < mesh.nx; ++i)
        for (int j = 0; j < mesh.nv; ++j) {
            const double area = mesh.x_width(i) * mesh.v_width(j);
            const auto blk = f.block(i, j);
            double cell = 0.0;
            for (int qx = 0; qx < nq; ++qx) {
                for (int m = 0; m < n1; ++m) {
                    double s = 0.0;
                    for (int n = 0; n < n1; ++n) s += vq(qx, n) * blk[n * n1 + m];
                    row[m] = s;
                }
                for (int qv = 0; qv < nq; ++qv) {
                    double val = 0.0;
                    for (int m = 0; m < n1; ++m) val += vq(qv, m) * row[m];
                    cell += w[qx] * w[qv] * (p == 1 ? std::abs(val) : val * val);
                }
            }
            total += area * cell;
        }
    return p == 1 ? total : std::sqrt(total);
}

EnergyBreakdown discrete_total_energy(const Distribution& f, const FieldPair& field,
                                      const NodalBasis1D& basis, const NodalBasis1D& basis_e) {
    if (field.phi_jumps.empty() && field.e.ncells > 0 && field.flavor != FieldFlavor::RT)
        throw std::invalid_argument("discrete_total_energy: field carries no jump data");
    const PhaseMesh& mesh = f.mesh();
    const int n1 = basis.n_nodes();
    const int nq = basis.n_quad();
    const auto& wbar = basis.node_integrals();

    EnergyBreakdown out;

    // Kinetic part: exact v-moment of the per-cell polynomial.
    std::vector<double> vmom(static_cast<size_t>(mesh.nv) * n1);
    for (int j = 0; j < mesh.nv; ++j) {
        const double v0 = mesh.v_edges[j], hv = mesh.v_width(j);
        for (int m = 0; m < n1; ++m) {
            double s = 0.0;
            for (int q = 0; q < nq; ++q) {
                const double v = v0 + hv * basis.quad().points[q];
                s += basis.quad().weights[q] * 0.5 * v * v * basis.values_at_quad()(q, m);
            }
            vmom[j * n1 + m] = hv * s;
        }
    }
    for (int i = 0; i < mesh.nx; ++i) {
        const double hx = mesh.x_width(i);
        for (int j = 0; j < mesh.nv; ++j) {
            const auto blk = f.block(i, j);
            double s = 0.0;
            for (int n = 0; n < n1; ++n) {
                double inner = 0.0;
                for (int m = 0; m < n1; ++m) inner += vmom[j * n1 + m] * blk[n * n1 + m];
                s += wbar[n] * inner;
            }
            out.kinetic += hx * s;
        }
    }

    const double enorm = e_l2_norm(field, mesh, basis_e);
    out.potential = 0.5 * enorm * enorm;

    out.penalty = 0.0;
    for (double jmp : field.phi_jumps) out.penalty += jmp * jmp;
    out.penalty *= field.c11;

    out.total = out.kinetic + out.potential + out.penalty;
    return out;
}

double e_l2_norm(const FieldPair& field, const PhaseMesh& mesh, const NodalBasis1D& basis_e) {
    const int n1 = basis_e.n_nodes();
    const int nq = basis_e.n_quad();
    double total = 0.0;
    for (int i = 0; i < field.e.ncells; ++i) {
        const double hx = mesh.x_width(i);
        const auto ec = field.e.cell(i);
        double cell = 0.0;
        for (int q = 0; q < nq; ++q) {
            double val = 0.0;
            for (int a = 0; a < n1; ++a) val += basis_e.values_at_quad()(q, a) * ec[a];
            cell += basis_e.quad().weights[q] * val * val;
        }
        total += hx * cell;
    }
    return std::sqrt(total);
}

GradNorms grad_norms(const Distribution& f, const NodalBasis1D& basis) {
    const PhaseMesh& mesh = f.mesh();
    const int n1 = basis.n_nodes();
    const int nq = basis.n_quad();
    const auto& vq = basis.values_at_quad();
    const auto& dq = basis.derivs_at_quad();
    const auto& w = basis.quad().weights;

    GradNorms out;
    double l2sq = 0.0;
    std::vector<double> val_row(n1), der_row(n1);
    for (int i = 0; i < mesh.nx; ++i)
        for (int j = 0; j < mesh.nv; ++j) {
            const double hx = mesh.x_width(i), hv = mesh.v_width(j);
            const auto blk = f.block(i, j);
            double cell = 0.0;
            for (int qx = 0; qx < nq; ++qx) {
                for (int m = 0; m < n1; ++m) {
                    double sv = 0.0, sd = 0.0;
                    for (int n = 0; n < n1; ++n) {
                        sv += vq(qx, n) * blk[n * n1 + m];
                        sd += dq(qx, n) * blk[n * n1 + m];
                    }
                    val_row[m] = sv;   // f(., qv-nodes) at qx
                    der_row[m] = sd;   // df/dxi_x
                }
                for (int qv = 0; qv < nq; ++qv) {
                    double fval = 0.0, fx = 0.0, fv = 0.0;
                    for (int m = 0; m < n1; ++m) {
                        fval += vq(qv, m) * val_row[m];
                        fx += vq(qv, m) * der_row[m];
                        fv += dq(qv, m) * val_row[m];
                    }
                    fx /= hx;
                    fv /= hv;
                    cell += w[qx] * w[qv] * (fx * fx + fv * fv);
                    out.grad_linf = std::max(out.grad_linf, std::sqrt(fx * fx + fv * fv));
                    out.f_linf = std::max(out.f_linf, std::abs(fval));
                }
            }
            l2sq += hx * hv * cell;

            // Nodal samples tighten the sup norms.
            for (int n = 0; n < n1; ++n)
                for (int m = 0; m < n1; ++m) {
                    double fx = 0.0, fv = 0.0;
                    for (int c = 0; c < n1; ++c) {
                        fx += basis.diff()(n, c) * blk[c * n1 + m];
                        fv += basis.diff()(m, c) * blk[n * n1 + c];
                    }
                    fx /= hx;
                    fv /= hv;
                    out.grad_linf = std::max(out.grad_linf, std::sqrt(fx * fx + fv * fv));
                    out.f_linf = std::max(out.f_linf, std::abs(blk[n * n1 + m]));
                }
        }
    out.grad_l2 = std::sqrt(l2sq);
    return out;
}

ExpFit fit_exponential(std::span<const double> t, std::span<const double> y, double t_a,
                       double t_b) {
    if (t.size() != y.size()) throw std::invalid_argument("fit_exponential: length mismatch");
    const int n = static_cast<int>(t.size());
    ExpFit fit;
    fit.t_a = t_a;
    fit.t_b = t_b;

    // Strict local maxima inside the window; a plateau counts once, at its
    // first sample.
    for (int i = 1; i + 1 < n; ++i) {
        if (t[i] < t_a || t[i] > t_b) continue;
        if (!(y[i] > y[i - 1])) continue;
        int m = i + 1;
        while (m < n && y[m] == y[i]) ++m;
        if (m < n && y[m] < y[i]) fit.maxima.emplace_back(t[i], y[i]);
    }
    if (fit.maxima.size() < 3) throw std::runtime_error("fit_exponential: insufficient extrema");

    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (const auto& [tm, ym] : fit.maxima) {
        if (!(ym > 0.0)) throw std::runtime_error("fit_exponential: non-positive maximum");
        const double ly = std::log(ym);
        st += tm;
        sy += ly;
        stt += tm * tm;
        sty += tm * ly;
    }
    const double m = static_cast<double>(fit.maxima.size());
    const double denom = m * stt - st * st;
    fit.gamma = (m * sty - st * sy) / denom;
    fit.c = std::exp((sy - fit.gamma * st) / m);
    return fit;
}

std::vector<double> RunDiagnostics::times() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.t);
    return out;
}

std::vector<double> RunDiagnostics::e_l2_series() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.e_l2);
    return out;
}

}  // namespace vpdg
