#include "runner.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "flow.hpp"

namespace gcsim::runner {

namespace {

std::vector<analytic::AnalyteDimensionless> analyte_params(
    const scales::DimensionlessGroups& g) {
    std::vector<analytic::AnalyteDimensionless> params(g.beta.size());
    for (std::size_t i = 0; i < g.beta.size(); ++i) {
        params[i].beta = g.beta[i];
        params[i].K_a = g.K_a[i];
        params[i].K_d = g.K_d[i];
        params[i].Da = g.damkohler;
        params[i].t1_hat = g.injection_hat;
    }
    return params;
}

std::vector<std::string> analyte_names(const io::RunConfig& cfg) {
    std::vector<std::string> names;
    names.reserve(cfg.analytes.size());
    for (const auto& a : cfg.analytes) names.push_back(a.name);
    return names;
}

/// The FD scheme integrates the same system for both regimes; a uniform
/// field (pL_hat = 1) realizes the constant-velocity one.
flow::FlowField flow_for(const scales::DimensionlessGroups& g, Regime regime) {
    return flow::FlowField(
        regime == Regime::variable_velocity ? g.outlet_pressure_hat : 1.0, g.length_hat);
}

std::vector<double> t_hat_grid(const io::RunConfig& cfg,
                               const scales::DimensionlessGroups& g, Regime regime) {
    const double start = cfg.time_window.start_s / g.time_scale;
    double end;
    if (cfg.time_window.end_s) {
        end = *cfg.time_window.end_s / g.time_scale;
    } else {
        const auto params = analyte_params(g);
        const flow::FlowField flow(g.outlet_pressure_hat, g.length_hat);
        end = analytic::suggest_time_end(params, flow, regime);
    }
    const int n = cfg.time_window.points;
    std::vector<double> grid(n);
    for (int k = 0; k < n; ++k)
        grid[k] = start + (end - start) * (k + 1) / static_cast<double>(n);
    return grid;
}

Chromatogram to_dimensional(Chromatogram chrom, const io::RunConfig& cfg,
                            const scales::DimensionlessGroups& g) {
    for (double& t : chrom.times) t *= g.time_scale;
    chrom.time_unit = Chromatogram::TimeUnit::seconds;
    if (cfg.output_unit == Unit::dimensionless) return chrom;

    for (std::size_t i = 0; i < chrom.values.size(); ++i) {
        const double c0 = cfg.analytes[i].inlet_concentration;
        if (cfg.output_unit == Unit::mol_per_m3) {
            for (double& v : chrom.values[i]) v *= c0;
        } else {
            const double f = conversion_factor_for(cfg, i);
            for (double& v : chrom.values[i]) v *= c0 * f;
        }
    }
    chrom.unit = cfg.output_unit;
    return chrom;
}

Chromatogram run_solver(const io::RunConfig& cfg, const scales::DimensionlessGroups& g,
                        Regime regime, Solver solver,
                        std::span<const double> grid_t_hat) {
    const auto params = analyte_params(g);
    const auto names = analyte_names(cfg);
    if (solver == Solver::analytic) {
        const flow::FlowField flow(g.outlet_pressure_hat, g.length_hat);
        return analytic::chromatogram(params, names, flow, regime, grid_t_hat);
    }
    const flow::FlowField flow = flow_for(g, regime);
    const numeric::Grid grid =
        numeric::make_grid(cfg.grid.n_cells, grid_t_hat.back(), flow, params,
                           g.peclet_inverse, cfg.grid.safety);
    return numeric::simulate(grid, params, names, flow, g.peclet_inverse, grid_t_hat)
        .outlet;
}

}  // namespace

std::vector<double> time_grid_seconds(const io::RunConfig& cfg, Regime regime) {
    const auto g = cfg.groups();
    auto grid = t_hat_grid(cfg, g, regime);
    for (double& t : grid) t *= g.time_scale;
    return grid;
}

SimulateOutput run_simulate(const io::RunConfig& cfg, Regime regime, Solver solver) {
    const auto g = cfg.groups();
    const auto grid = t_hat_grid(cfg, g, regime);
    SimulateOutput out;
    out.chromatogram = to_dimensional(run_solver(cfg, g, regime, solver, grid), cfg, g);
    out.meta = io::CsvMeta{regime, solver, cfg.config_hash};
    return out;
}

SnapshotOutput run_snapshots(const io::RunConfig& cfg, Regime regime, Solver solver,
                             std::span<const double> times_s) {
    if (times_s.empty()) throw ValidationError("snapshots: no times requested");
    const auto g = cfg.groups();
    const auto params = analyte_params(g);

    std::vector<double> t_hats(times_s.begin(), times_s.end());
    for (double& t : t_hats) t /= g.time_scale;
    for (std::size_t k = 0; k + 1 < t_hats.size(); ++k)
        if (!(t_hats[k] < t_hats[k + 1]))
            throw ValidationError("snapshots: times must be strictly ascending");

    SnapshotOutput out;
    out.analytes = analyte_names(cfg);
    out.meta = io::CsvMeta{regime, solver, cfg.config_hash};

    if (solver == Solver::analytic) {
        const flow::FlowField flow(g.outlet_pressure_hat, g.length_hat);
        const int n_nodes = std::min(cfg.grid.n_cells, 800) + 1;
        std::vector<double> x(n_nodes);
        for (int j = 0; j < n_nodes; ++j)
            x[j] = g.length_hat * j / static_cast<double>(n_nodes - 1);
        for (double t_hat : t_hats) {
            numeric::FieldSnapshot snap;
            snap.t_hat = t_hat;
            snap.x_hat = x;
            snap.c = analytic::profile(params, flow, regime, t_hat, x);
            out.snapshots.push_back(std::move(snap));
            out.times_s.push_back(t_hat * g.time_scale);
        }
        return out;
    }

    const flow::FlowField flow = flow_for(g, regime);
    const double t_end = t_hats.back() * (1.0 + 1e-9) + 1e-9;
    const numeric::Grid grid = numeric::make_grid(
        cfg.grid.n_cells, t_end, flow, params, g.peclet_inverse, cfg.grid.safety);
    auto result = numeric::simulate(grid, params, out.analytes, flow, g.peclet_inverse,
                                    {}, t_hats);
    out.snapshots = std::move(result.snapshots);
    for (const auto& snap : out.snapshots) out.times_s.push_back(snap.t_hat * g.time_scale);
    return out;
}

CompareOutput run_compare(const io::RunConfig& cfg, Regime regime) {
    const auto g = cfg.groups();
    const auto grid = t_hat_grid(cfg, g, regime);

    CompareOutput out;
    out.analytic_s =
        to_dimensional(run_solver(cfg, g, regime, Solver::analytic, grid), cfg, g);
    out.fd_s = to_dimensional(
        run_solver(cfg, g, regime, Solver::finite_difference, grid), cfg, g);
    out.report = analysis::compare_chromatograms(out.analytic_s, out.fd_s);
    out.meta = io::CsvMeta{regime, Solver::analytic, cfg.config_hash};
    return out;
}

double conversion_factor_for(const io::RunConfig& cfg, std::size_t analyte_index) {
    const std::string& name = cfg.analytes[analyte_index].name;
    for (const auto& entry : cfg.calibration) {
        if (entry.analyte != name) continue;
        if (entry.area_au_s)
            return calib::conversion_factor(*entry.area_au_s,
                                            cfg.analytes[analyte_index].inlet_concentration,
                                            cfg.conditions.injection_time,
                                            cfg.conditions.inlet_pressure,
                                            cfg.conditions.outlet_pressure);
        // Per-ppb area pairs with the per-ppb concentration at inlet state.
        const double c0_per_ppb = scales::ppb_to_molar(1.0, cfg.conditions.temperature,
                                                       cfg.conditions.inlet_pressure);
        return calib::conversion_factor(*entry.area_au_s_per_ppb, c0_per_ppb,
                                        cfg.conditions.injection_time,
                                        cfg.conditions.inlet_pressure,
                                        cfg.conditions.outlet_pressure);
    }
    throw ValidationError("calibration: no entry for analyte '" + name + "'");
}

CalibrateOutput run_calibrate(const io::RunConfig& cfg) {
    if (cfg.calibration.empty())
        throw ValidationError("calibrate: config has no calibration section");
    CalibrateOutput out;
    out.meta = io::CsvMeta{cfg.regime, cfg.solver, cfg.config_hash};
    for (const auto& entry : cfg.calibration) {
        const std::size_t i = cfg.analyte_index(entry.analyte);
        CalibrationRow row;
        row.analyte = entry.analyte;
        row.conversion_factor = conversion_factor_for(cfg, i);
        if (entry.area_au_s) {
            row.peak_area = *entry.area_au_s;
        } else {
            const double ppb = scales::molar_to_ppb(cfg.analytes[i].inlet_concentration,
                                                    cfg.conditions.temperature,
                                                    cfg.conditions.inlet_pressure);
            row.peak_area = *entry.area_au_s_per_ppb * ppb;
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

FitOutput run_fit(const io::RunConfig& cfg, const calib::ExperimentalChromatogram& data) {
    if (cfg.fit.windows.empty())
        throw ValidationError("fit: config declares no fit windows");
    data.validate();

    FitOutput out;
    out.meta = io::CsvMeta{cfg.regime, cfg.solver, cfg.config_hash};
    out.results.resize(cfg.fit.windows.size());

    calib::FitConfig fit_config;
    fit_config.seed = cfg.fit.seed;
    fit_config.starts = cfg.fit.starts;
    fit_config.k_a_min = cfg.fit.k_a_min;
    fit_config.k_a_max = cfg.fit.k_a_max;
    fit_config.k_d_min = cfg.fit.k_d_min;
    fit_config.k_d_max = cfg.fit.k_d_max;
    fit_config.exclusions_s = cfg.fit.exclusions_s;
    if (cfg.fit.baseline_window_s)
        fit_config.baseline_window_s = {{(*cfg.fit.baseline_window_s)[0],
                                         (*cfg.fit.baseline_window_s)[1]}};

    for (std::size_t w = 0; w < cfg.fit.windows.size(); ++w) {
        const calib::AnalyteWindow& window = cfg.fit.windows[w];
        const std::size_t i = cfg.analyte_index(window.analyte);
        calib::FitExperiment experiment;
        experiment.geometry = cfg.geometry;
        experiment.conditions = cfg.conditions;
        experiment.inlet_concentration = cfg.analytes[i].inlet_concentration;
        experiment.conversion_factor = conversion_factor_for(cfg, i);
        experiment.regime = cfg.regime;
        out.results[w] = calib::fit_analyte(data, window, experiment, fit_config);
    }

    // Derived betas are reported against the reference analyte's fitted K
    // when that analyte is among the fits, else against its configured K.
    const std::string ref_name = cfg.analytes[cfg.reference_index].name;
    double reference_K = cfg.analytes[cfg.reference_index].equilibrium_constant();
    for (const auto& r : out.results)
        if (r.analyte == ref_name) reference_K = r.equilibrium_constant;
    for (auto& r : out.results) r.beta = r.equilibrium_constant / reference_K;
    return out;
}

}  // namespace gcsim::runner
