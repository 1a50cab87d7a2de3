// Test-only oracles, kept independent of the library's numeric paths:
// quadrature via Golub-Welsch, Lagrange evaluation via the direct product
// formula, and brute-force integration/assembly helpers.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct Rule {
    std::vector<double> points;   // on [0,1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights from the Jacobi-matrix eigenproblem.
inline Rule gauss(int n) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double b = i / std::sqrt(4.0 * i * i - 1.0);
        jac(i, i - 1) = b;
        jac(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    Rule r;
    r.points.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.points[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
        const double v0 = es.eigenvectors()(0, i);
        r.weights[i] = v0 * v0;  // total weight 1 on [0,1]
    }
    return r;
}

inline double integrate(const std::function<double(double)>& f, double a, double b, int panels,
                        const Rule& r) {
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double x0 = a + p * h;
        for (size_t q = 0; q < r.points.size(); ++q) s += r.weights[q] * f(x0 + h * r.points[q]);
    }
    return s * h;
}

inline double integrate2d(const std::function<double(double, double)>& f, double ax, double bx,
                          double av, double bv, int panels, const Rule& r) {
    return integrate(
        [&](double x) {
            return integrate([&](double v) { return f(x, v); }, av, bv, panels, r);
        },
        ax, bx, panels, r);
}

// Direct product-formula Lagrange basis value.
inline double lagrange(std::span<const double> nodes, int j, double x) {
    double p = 1.0;
    for (size_t m = 0; m < nodes.size(); ++m)
        if (static_cast<int>(m) != j) p *= (x - nodes[m]) / (nodes[j] - nodes[m]);
    return p;
}

inline double poly_eval(std::span<const double> nodes, std::span<const double> coeffs, double x) {
    double s = 0.0;
    for (size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * lagrange(nodes, j, x);
    return s;
}

// min/max of a nodal polynomial by dense sampling.
inline std::pair<double, double> dense_extrema(std::span<const double> nodes,
                                               std::span<const double> coeffs, int samples) {
    double lo = poly_eval(nodes, coeffs, 0.0), hi = lo;
    for (int s = 1; s <= samples; ++s) {
        const double v = poly_eval(nodes, coeffs, static_cast<double>(s) / samples);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline std::vector<double> random_vector(std::mt19937& gen, size_t n, double lo = -1.0,
                                         double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (double& v : out) v = dist(gen);
    return out;
}

}  // namespace oracle
