#include "vpdg/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace vpdg {

namespace {

// Legendre P_n(x) and P_n'(x) on [-1,1] by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Quadrature gauss_quadrature(int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("gauss_quadrature: order out of range [1,20]");
    Quadrature q;
    q.order = n;
    q.points.resize(n);
    q.weights.resize(n);
    // Newton iteration on P_n with Chebyshev initial guesses; nodes on [-1,1],
    // then mapped to [0,1].
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            const double dx = -p / dp;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        q.points[n - 1 - i] = 0.5 * (x + 1.0);
        q.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

std::vector<double> gauss_lobatto_nodes(int k) {
    if (k < 1) throw std::invalid_argument("gauss_lobatto_nodes: degree must be >= 1");
    const int n = k + 1;
    std::vector<double> r(n);
    r.front() = 0.0;
    r.back() = 1.0;
    // Interior nodes are the roots of P_k' on [-1,1].
    for (int i = 1; i < n - 1; ++i) {
        double x = std::cos(M_PI * i / k);  // Chebyshev-Lobatto initial guess
        for (int it = 0; it < 100; ++it) {
            double p, dp;
            legendre(k, x, p, dp);
            const double d2p = (2.0 * x * dp - k * (k + 1) * p) / (1.0 - x * x);
            const double dx = -dp / d2p;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r[n - 1 - i] = 0.5 * (x + 1.0);
    }
    return r;
}

NodalBasis1D::NodalBasis1D(int degree) : degree_(degree) {
    if (degree < 1 || degree > 12)
        throw std::invalid_argument("NodalBasis1D: degree out of range [1,12]");
    nodes_ = gauss_lobatto_nodes(degree);
    const int n = degree + 1;

    bary_weights_.assign(n, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (j != i) bary_weights_[i] /= (nodes_[i] - nodes_[j]);
    }

    // All same-degree integrals use k+2 Gauss points (exact through 2k+3).
    quad_ = gauss_quadrature(degree + 2);
    const int nq = quad_.order;

    val_quad_.resize(nq, n);
    for (int q = 0; q < nq; ++q) {
        std::vector<double> unit(n, 0.0);
        for (int a = 0; a < n; ++a) {
            unit[a] = 1.0;
            val_quad_(q, a) = eval(unit, quad_.points[q]);
            unit[a] = 0.0;
        }
    }

    mass_.resize(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double s = 0.0;
            for (int q = 0; q < nq; ++q) s += quad_.weights[q] * val_quad_(q, a) * val_quad_(q, b);
            mass_(a, b) = s;
        }
    mass_inv_ = mass_.inverse();

    // D(a,b) = l_b'(r_a), from the barycentric weights.
    diff_.resize(n, n);
    for (int a = 0; a < n; ++a) {
        double row_sum = 0.0;
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            diff_(a, b) = (bary_weights_[b] / bary_weights_[a]) / (nodes_[a] - nodes_[b]);
            row_sum += diff_(a, b);
        }
        diff_(a, a) = -row_sum;
    }

    // l_b' has degree k-1, so its quadrature values interpolate exactly.
    der_quad_ = val_quad_ * diff_;

    node_integrals_.resize(n);
    for (int a = 0; a < n; ++a) node_integrals_[a] = mass_.row(a).sum();

    // Vandermonde V(a,m) = B_m^k(r_a); Lagrange -> Bernstein is V^{-1},
    // computed once and stored.
    Eigen::MatrixXd vand(n, n);
    std::vector<double> bvals(n);
    for (int a = 0; a < n; ++a) {
        bernstein_values(degree, nodes_[a], bvals);
        for (int m = 0; m < n; ++m) vand(a, m) = bvals[m];
    }
    lag_to_bern_ = vand.fullPivLu().inverse();
}

NodalBasis1D build_nodal_basis(int k) { return NodalBasis1D(k); }

double NodalBasis1D::eval(std::span<const double> coeffs, double r) const {
    const int n = degree_ + 1;
    // Exact node hit: return the coefficient.
    for (int i = 0; i < n; ++i)
        if (r == nodes_[i]) return coeffs[i];
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = bary_weights_[i] / (r - nodes_[i]);
        num += t * coeffs[i];
        den += t;
    }
    return num / den;
}

double NodalBasis1D::eval_deriv(std::span<const double> coeffs, double r) const {
    // p' in nodal form is D * coeffs; interpolate that.
    const int n = degree_ + 1;
    std::vector<double> dc(n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) dc[a] += diff_(a, b) * coeffs[b];
    return eval(dc, r);
}

void bernstein_values(int k, double x, std::span<double> out) {
    // de Casteljau-style recurrence B_n^d = (1-x) B_n^{d-1} + x B_{n-1}^{d-1}.
    out[0] = 1.0;
    for (int d = 1; d <= k; ++d) {
        out[d] = x * out[d - 1];
        for (int n = d - 1; n >= 1; --n) out[n] = (1.0 - x) * out[n] + x * out[n - 1];
        out[0] *= (1.0 - x);
    }
}

SignClass classify_cell_sign(const NodalBasis1D& basis, std::span<const double> coeffs) {
    const int n = basis.n_nodes();
    if (static_cast<int>(coeffs.size()) != n)
        throw std::invalid_argument("classify_cell_sign: coefficient length mismatch");
    SignClass sc;
    double bmax_abs = 0.0;
    std::vector<double> beta(n, 0.0);
    for (int m = 0; m < n; ++m) {
        double s = 0.0;
        for (int a = 0; a < n; ++a) s += basis.lag_to_bern()(m, a) * coeffs[a];
        beta[m] = s;
        bmax_abs = std::max(bmax_abs, std::abs(s));
    }
    sc.hull_min = beta[0];
    sc.hull_max = beta[0];
    for (int m = 1; m < n; ++m) {
        sc.hull_min = std::min(sc.hull_min, beta[m]);
        sc.hull_max = std::max(sc.hull_max, beta[m]);
    }
    // Round-off must not flip an upwind branch: coefficients within
    // 1e-12 * max|beta| of zero count as that sign.
    const double tol = 1e-12 * bmax_abs;
    bool all_nonneg = true, all_nonpos = true, any_pos = false, any_neg = false;
    for (int m = 0; m < n; ++m) {
        if (beta[m] < -tol) all_nonneg = false;
        if (beta[m] > tol) all_nonpos = false;
        if (beta[m] > tol) any_pos = true;
        if (beta[m] < -tol) any_neg = true;
    }
    if (all_nonneg && any_pos)
        sc.tag = SignTag::Positive;
    else if (all_nonpos && any_neg)
        sc.tag = SignTag::Negative;
    else
        sc.tag = SignTag::Indeterminate;
    return sc;
}

CellExtrema cell_extrema_estimate(const NodalBasis1D& basis, std::span<const double> coeffs) {
    const SignClass sc = classify_cell_sign(basis, coeffs);
    CellExtrema ex;
    ex.hull_min = sc.hull_min;
    ex.hull_max = sc.hull_max;
    // Samples at the quadrature points plus the interval endpoints
    // (endpoints are nodes, so their samples are the first/last coefficients).
    double lo = coeffs.front(), hi = coeffs.front();
    auto take = [&](double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    take(coeffs.back());
    const auto& vq = basis.values_at_quad();
    for (int q = 0; q < basis.n_quad(); ++q) {
        double v = 0.0;
        for (int a = 0; a < basis.n_nodes(); ++a) v += vq(q, a) * coeffs[a];
        take(v);
    }
    ex.sampled_min = lo;
    ex.sampled_max = hi;
    return ex;
}

}  // namespace vpdg
