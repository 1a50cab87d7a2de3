// Command-line driver: `run` marches a scenario and writes the output
// bundle, `converge` runs the manufactured-solution study, `fit` extracts
// exponential rates from a diagnostics file.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vpdg/output.hpp"
#include "vpdg/study.hpp"
#include "vpdg/timestep.hpp"

namespace {

using namespace vpdg;

FluxVariant parse_flux(const std::string& s) {
    if (s == "a1") return FluxVariant::CellAverageSign;
    if (s == "a2") return FluxVariant::WeightedAverage;
    if (s == "aa00") return FluxVariant::ProjectedAverage;
    throw CLI::ValidationError("--flux must be one of a1|a2|aa00");
}

PoissonKind parse_poisson(const std::string& s) {
    if (s == "rt") return PoissonKind::RT;
    if (s == "ldg") return PoissonKind::LDG;
    if (s == "ldgv") return PoissonKind::LDGv;
    throw CLI::ValidationError("--poisson must be one of rt|ldg|ldgv");
}

Integrator parse_integrator(const std::string& s) {
    if (s == "rk4") return Integrator::RK4;
    if (s == "rk2tvd") return Integrator::TVDRK2;
    throw CLI::ValidationError("--integrator must be one of rk4|rk2tvd");
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

struct RunOptions {
    std::string scenario;
    int nx = 40, nv = 40, degree = 3;
    std::string flux, poisson, integrator = "rk4";
    double tf = 1.0, cfl = 0.3;
    std::optional<double> fixed_dt;
    std::optional<double> lambda0;
    std::string snapshot_times;
    std::string out = "out";
    int threads = 0;
    std::string config;
};

int cmd_run(const RunOptions& opt) {
    if (opt.threads > 0) omp_set_num_threads(opt.threads);

    ScenarioParams params;
    if (opt.lambda0) params.lambda0 = *opt.lambda0;
    const Scenario scenario = make_scenario(opt.scenario, params);

    const bool diode = scenario.boundary == BoundaryKind::Diode;
    const PhaseMesh mesh = build_phase_mesh(opt.nx, opt.nv, scenario.x_lo, scenario.x_hi,
                                            scenario.v_half_width, !diode);
    const NodalBasis1D basis(opt.degree);

    SolveConfig solve;
    solve.poisson = opt.poisson.empty() ? scenario.default_poisson : parse_poisson(opt.poisson);
    solve.flux = opt.flux.empty() ? scenario.default_flux : parse_flux(opt.flux);

    TimeConfig time;
    time.t_final = opt.tf;
    time.cfl = opt.cfl;
    time.integrator = parse_integrator(opt.integrator);
    time.fixed_dt = opt.fixed_dt;

    const std::filesystem::path out_dir(opt.out);
    std::filesystem::create_directories(out_dir);

    RunSinks sinks;
    sinks.snapshot_times = parse_double_list(opt.snapshot_times);
    sinks.on_snapshot = [&](double t, const Distribution& f) {
        char name[32];
        std::snprintf(name, sizeof(name), "f_t%04d.csv", static_cast<int>(std::lround(t * 100.0)));
        write_snapshot_csv(out_dir / "snapshots" / name, f, basis);
    };

    const auto wall_start = std::chrono::steady_clock::now();
    const RunResult res = run_simulation(scenario, mesh, basis, solve, time, &sinks);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

    write_diagnostics_csv(out_dir / "diagnostics.csv", res.diagnostics);

    std::ostringstream report;
    report << "scenario: " << scenario.name << "\n"
           << "mesh: " << opt.nx << " x " << opt.nv << "\n"
           << "degree: " << opt.degree << "\n"
           << "flux: " << (opt.flux.empty() ? "a2" : opt.flux) << "\n"
           << "poisson: " << (opt.poisson.empty() ? "ldgv" : opt.poisson) << "\n"
           << "integrator: " << opt.integrator << "\n"
           << "t_final: " << format_g17(opt.tf) << "\n"
           << "cfl: " << format_g17(opt.cfl) << "\n";
    if (opt.fixed_dt) report << "fixed_dt: " << format_g17(*opt.fixed_dt) << "\n";
    if (diode) report << "lambda0: " << format_g17(scenario.lambda0) << "\n";
    report << "background: " << format_g17(res.background) << "\n"
           << "steps: " << res.steps << "\n";
    if (scenario.has_exact()) {
        const double err = l2_error_f(res.final_state, scenario, opt.tf, basis);
        report << "l2_error_f: " << format_g17(err) << "\n";
    }
    report << "dt_history:\n";
    for (const auto& [t, dt] : res.dt_history)
        report << "  t=" << format_g17(t) << " dt=" << format_g17(dt) << "\n";
    report << "wall_seconds: " << format_g17(wall) << "\n";
    write_file_atomic(out_dir / "report.txt", report.str());
    return 0;
}

struct ConvergeOptions {
    std::string degrees = "2,3";
    std::string meshes;
    std::string scenario = "forced";
    std::string flux = "a2", poisson = "ldgv";
    double tf = 1.0;
    double fixed_dt = 1e-3;
    std::string out = "out";
    int threads = 0;
};

int cmd_converge(const ConvergeOptions& opt) {
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
    const std::vector<int> degrees = parse_int_list(opt.degrees);
    const std::vector<int> meshes = parse_int_list(opt.meshes);
    if (meshes.empty() || degrees.empty()) {
        std::cerr << "converge: empty degree or mesh list\n";
        return 2;
    }
    const Scenario scenario = make_scenario(opt.scenario);
    SolveConfig solve;
    solve.flux = parse_flux(opt.flux);
    solve.poisson = parse_poisson(opt.poisson);
    TimeConfig time;
    time.t_final = opt.tf;
    time.fixed_dt = opt.fixed_dt;
    const ConvergenceReport report = convergence_study(scenario, degrees, meshes, solve, time);
    std::filesystem::create_directories(opt.out);
    write_convergence_csv(std::filesystem::path(opt.out) / "convergence.csv", report);
    for (const ConvergenceRow& r : report.rows)
        std::printf("k=%d n=%3d err_f=%.6e order_f=%.4f err_e=%.6e order_e=%.4f%s\n", r.degree,
                    r.n, r.err_f, r.order_f, r.err_e, r.order_e, r.failed ? " FAILED" : "");
    return 0;
}

struct FitOptions {
    std::string diag = "diagnostics.csv";
    std::string windows;
    std::string out;
};

int cmd_fit(const FitOptions& opt) {
    const DiagSeries series = read_diagnostics_csv(opt.diag);
    std::vector<ExpFit> fits;
    std::stringstream ss(opt.windows);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("fit: windows must be a,b pairs like 0:10,20:40");
        const double ta = std::stod(item.substr(0, colon));
        const double tb = std::stod(item.substr(colon + 1));
        fits.push_back(fit_exponential(series.t, series.e_l2, ta, tb));
        std::printf("window [%g, %g]: c=%.6f gamma=%.6f (%zu maxima)\n", ta, tb, fits.back().c,
                    fits.back().gamma, fits.back().maxima.size());
    }
    const std::filesystem::path out_dir = opt.out.empty()
                                              ? std::filesystem::path(opt.diag).parent_path()
                                              : std::filesystem::path(opt.out);
    write_fit_csv(out_dir.empty() ? "fit.csv" : out_dir / "fit.csv", fits);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-order DG solver for the 1D1V Vlasov-Poisson system"};
    app.require_subcommand(1);

    RunOptions run;
    CLI::App* run_cmd = app.add_subcommand("run", "March a scenario and write diagnostics");
    run_cmd->add_option("--scenario", run.scenario,
                        "forced|weak-landau|strong-landau|two-stream-1|two-stream-2|diode");
    run_cmd->add_option("--nx", run.nx);
    run_cmd->add_option("--nv", run.nv);
    run_cmd->add_option("--degree", run.degree);
    run_cmd->add_option("--flux", run.flux, "a1|a2|aa00");
    run_cmd->add_option("--poisson", run.poisson, "rt|ldg|ldgv");
    run_cmd->add_option("--integrator", run.integrator, "rk4|rk2tvd");
    run_cmd->add_option("--tf", run.tf);
    run_cmd->add_option("--cfl", run.cfl);
    double fixed_dt = 0.0, lambda0 = 0.0;
    CLI::Option* fixed_opt = run_cmd->add_option("--fixed-dt", fixed_dt);
    CLI::Option* lambda_opt = run_cmd->add_option("--lambda0", lambda0);
    run_cmd->add_option("--snapshot-times", run.snapshot_times, "comma-separated times");
    run_cmd->add_option("--out", run.out);
    run_cmd->add_option("--threads", run.threads);
    run_cmd->add_option("--config", run.config, "key=value file; flags override");

    ConvergeOptions conv;
    CLI::App* conv_cmd = app.add_subcommand("converge", "Manufactured-solution study");
    conv_cmd->add_option("--degrees", conv.degrees);
    conv_cmd->add_option("--meshes", conv.meshes, "comma-separated cells per direction");
    conv_cmd->add_option("--scenario", conv.scenario);
    conv_cmd->add_option("--flux", conv.flux);
    conv_cmd->add_option("--poisson", conv.poisson);
    conv_cmd->add_option("--tf", conv.tf);
    conv_cmd->add_option("--fixed-dt", conv.fixed_dt);
    conv_cmd->add_option("--out", conv.out);
    conv_cmd->add_option("--threads", conv.threads);

    FitOptions fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Exponential-rate fit of ||E||");
    fit_cmd->add_option("--diag", fit.diag, "diagnostics.csv path");
    fit_cmd->add_option("--windows", fit.windows, "e.g. 0:10,20:40")->required();
    fit_cmd->add_option("--out", fit.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            // config file first, then flag overrides
            if (!run.config.empty()) {
                const auto kv = parse_config_file(run.config);
                auto get = [&](const char* key) -> const std::string* {
                    const auto it = kv.find(key);
                    return it == kv.end() ? nullptr : &it->second;
                };
                auto absent = [&](const char* flag) { return run_cmd->count(flag) == 0; };
                if (const auto* v = get("scenario"); v && absent("--scenario")) run.scenario = *v;
                if (const auto* v = get("nx"); v && absent("--nx")) run.nx = std::stoi(*v);
                if (const auto* v = get("nv"); v && absent("--nv")) run.nv = std::stoi(*v);
                if (const auto* v = get("degree"); v && absent("--degree"))
                    run.degree = std::stoi(*v);
                if (const auto* v = get("flux"); v && absent("--flux")) run.flux = *v;
                if (const auto* v = get("poisson"); v && absent("--poisson")) run.poisson = *v;
                if (const auto* v = get("integrator"); v && absent("--integrator"))
                    run.integrator = *v;
                if (const auto* v = get("tf"); v && absent("--tf")) run.tf = std::stod(*v);
                if (const auto* v = get("cfl"); v && absent("--cfl")) run.cfl = std::stod(*v);
                if (const auto* v = get("fixed-dt"); v && absent("--fixed-dt"))
                    run.fixed_dt = std::stod(*v);
                if (const auto* v = get("lambda0"); v && absent("--lambda0"))
                    run.lambda0 = std::stod(*v);
                if (const auto* v = get("snapshot-times"); v && absent("--snapshot-times"))
                    run.snapshot_times = *v;
                if (const auto* v = get("out"); v && absent("--out")) run.out = *v;
                if (const auto* v = get("threads"); v && absent("--threads"))
                    run.threads = std::stoi(*v);
            }
            if (fixed_opt->count() > 0) run.fixed_dt = fixed_dt;
            if (lambda_opt->count() > 0) run.lambda0 = lambda0;
            if (run.scenario.empty()) {
                std::cerr << "run: --scenario is required\n" << run_cmd->help();
                return 2;
            }
            return cmd_run(run);
        }
        if (conv_cmd->parsed()) return cmd_converge(conv);
        if (fit_cmd->parsed()) return cmd_fit(fit);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
