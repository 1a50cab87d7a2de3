#include "vpdg/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vpdg {

namespace {

constexpr double kPi = std::numbers::pi;

Scenario forced_scenario() {
    Scenario s;
    s.name = "forced";
    s.x_lo = -kPi;
    s.x_hi = kPi;
    s.v_half_width = 4.0;
    const double rt_pi = std::sqrt(kPi);
    s.background = rt_pi;
    auto gauss = [](double v) { return std::exp(-0.25 * (4.0 * v - 1.0) * (4.0 * v - 1.0)); };
    s.exact_f = [gauss](double x, double v, double t) {
        return (2.0 - std::cos(2.0 * x - 2.0 * kPi * t)) * gauss(v);
    };
    s.f0 = [ef = s.exact_f](double x, double v) { return ef(x, v, 0.0); };
    s.exact_e = [rt_pi](double x, double t) {
        return 0.25 * rt_pi * std::sin(2.0 * x - 2.0 * kPi * t);
    };
    s.forcing = [gauss, rt_pi](double x, double v, double t) {
        const double u = 2.0 * x - 2.0 * kPi * t;
        return gauss(v) * (((4.0 * rt_pi + 2.0) * v - (2.0 * kPi + rt_pi)) * std::sin(u) +
                           rt_pi * (0.25 - v) * std::sin(2.0 * u));
    };
    return s;
}

Scenario landau_scenario(const std::string& name, double alpha, double mode) {
    Scenario s;
    s.name = name;
    s.x_lo = 0.0;
    s.x_hi = 4.0 * kPi;
    s.v_half_width = 10.0;
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    s.f0 = [alpha, mode, norm](double x, double v) {
        return norm * (1.0 + alpha * std::cos(mode * x)) * std::exp(-0.5 * v * v);
    };
    s.background = 1.0;
    return s;
}

Scenario two_stream_1(double mode) {
    Scenario s;
    s.name = "two-stream-1";
    s.x_lo = 0.0;
    s.x_hi = 4.0 * kPi;
    s.v_half_width = 10.0;
    const double norm = 1.0 / std::sqrt(8.0 * kPi);
    s.f0 = [mode, norm](double x, double v) {
        return norm * v * v * (2.0 - std::cos(mode * (x - 2.0 * kPi))) * std::exp(-0.5 * v * v);
    };
    s.background = 1.0;
    return s;
}

Scenario two_stream_2(double amplitude, double mode, double vth, double w) {
    Scenario s;
    s.name = "two-stream-2";
    s.x_lo = 0.0;
    s.x_hi = 13.0 * kPi;
    s.v_half_width = 8.0;
    const double norm = 1.0 / (2.0 * vth * std::sqrt(2.0 * kPi));
    s.f0 = [=](double x, double v) {
        const double a = (v - w) / vth, b = (v + w) / vth;
        return norm * (1.0 + amplitude * std::cos(mode * x)) *
               (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b));
    };
    s.background = 1.0;
    return s;
}

Scenario diode_scenario(double gamma, double lambda0) {
    Scenario s;
    s.name = "diode";
    s.x_lo = 0.0;
    s.x_hi = 1.0;
    s.v_half_width = 10.0;
    s.boundary = BoundaryKind::Diode;
    s.background = 0.0;  // no neutralizing background
    s.renormalize_background = false;
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    auto n0 = [gamma](double x) {
        if (x < 0.0 || x > 0.5) return 0.0;
        const double q = 1.0 - 4.0 * x * x;
        return (1.0 + gamma * x) * q * q * q * q;
    };
    s.f0 = [n0, norm](double x, double v) {
        return n0(x) * norm * v * v * std::exp(-0.5 * v * v);
    };
    s.inflow = [norm](double v, double) { return norm * v * v * std::exp(-0.5 * v * v); };
    s.lambda0 = lambda0;
    s.lambda = [lambda0](double) { return lambda0; };
    return s;
}

}  // namespace

Scenario make_scenario(const std::string& name, const ScenarioParams& params) {
    const double mode_default = name == "two-stream-2" ? 2.0 / 13.0 : 0.5;
    const double mode = params.wavenumber.value_or(mode_default);

    Scenario s;
    if (name == "forced") {
        s = forced_scenario();
    } else if (name == "weak-landau") {
        s = landau_scenario(name, params.alpha.value_or(0.01), mode);
    } else if (name == "strong-landau") {
        s = landau_scenario(name, params.alpha.value_or(0.5), mode);
    } else if (name == "two-stream-1") {
        s = two_stream_1(mode);
    } else if (name == "two-stream-2") {
        s = two_stream_2(params.amplitude.value_or(0.05), mode, params.v_thermal.value_or(0.3),
                         params.stream_speed.value_or(0.99));
    } else if (name == "diode") {
        const double lambda0 = params.lambda0.value_or(0.0);
        if (lambda0 < 0.0) throw std::invalid_argument("make_scenario: lambda0 must be >= 0");
        s = diode_scenario(params.density_slope.value_or(0.0), lambda0);
    } else {
        throw std::invalid_argument("make_scenario: unknown scenario '" + name + "'");
    }
    return s;
}

ShuCondition shu_condition(const Scenario& scenario) {
    if (scenario.boundary != BoundaryKind::Diode)
        throw std::invalid_argument("shu_condition: diode scenario required");
    // Composite Gauss quadrature of (1-x) f0 over [0,1] x [-L,L]; the data
    // is smooth per piece, so a moderate fixed rule is plenty.
    const Quadrature q = gauss_quadrature(16);
    const int sx = 64, sv = 128;
    const double L = scenario.v_half_width;
    double total = 0.0;
    for (int ix = 0; ix < sx; ++ix) {
        const double a = static_cast<double>(ix) / sx, h = 1.0 / sx;
        for (int px = 0; px < q.order; ++px) {
            const double x = a + h * q.points[px];
            double inner = 0.0;
            for (int jv = 0; jv < sv; ++jv) {
                const double b = -L + 2.0 * L * jv / sv, hv = 2.0 * L / sv;
                for (int pv = 0; pv < q.order; ++pv)
                    inner += hv * q.weights[pv] * scenario.f0(x, b + hv * q.points[pv]);
            }
            total += h * q.weights[px] * (1.0 - x) * inner;
        }
    }
    ShuCondition out;
    out.threshold = total;
    out.satisfied = scenario.lambda(0.0) > total;
    return out;
}

}  // namespace vpdg
