// Benchmark scenario definitions: domains, initial data, exact solutions
// and forcing for the manufactured test, and the diode boundary data.
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "vpdg/poisson.hpp"
#include "vpdg/vlasov.hpp"

namespace vpdg {

enum class BoundaryKind { Periodic, Diode };

struct ScenarioParams {
    std::optional<double> alpha;          // perturbation size
    std::optional<double> wavenumber;     // basic mode K
    std::optional<double> v_thermal;      // stream width
    std::optional<double> stream_speed;   // counter-stream speed w
    std::optional<double> amplitude;      // two-stream-2 perturbation
    std::optional<double> density_slope;  // diode gamma
    std::optional<double> lambda0;        // diode external voltage
};

struct Scenario {
    std::string name;
    double x_lo = 0.0, x_hi = 1.0;
    double v_half_width = 1.0;
    BoundaryKind boundary = BoundaryKind::Periodic;

    std::function<double(double, double)> f0;
    std::function<double(double, double, double)> exact_f;  // manufactured case only
    std::function<double(double, double)> exact_e;          // (x, t)
    ForcingFn forcing;

    double background = 1.0;  // neutralizing charge for the periodic solve
    // Replace the nominal background by the projected initial mass per unit
    // length so the discrete neutrality condition holds exactly.
    bool renormalize_background = true;

    InflowFn inflow;                       // diode emission data g(v,t)
    std::function<double(double)> lambda;  // diode external voltage
    double lambda0 = 0.0;

    FluxVariant default_flux = FluxVariant::WeightedAverage;
    PoissonKind default_poisson = PoissonKind::LDGv;

    bool has_exact() const { return static_cast<bool>(exact_f); }
};

Scenario make_scenario(const std::string& name, const ScenarioParams& params = {});

struct ShuCondition {
    double threshold = 0.0;  // int_0^1 int_{-L}^{L} (1-x) f0
    bool satisfied = false;  // lambda(0) > threshold
};

// Voltage threshold separating the regular from the discontinuous diode
// regime; above it the distribution is expected to lose continuity.
ShuCondition shu_condition(const Scenario& scenario);

}  // namespace vpdg
