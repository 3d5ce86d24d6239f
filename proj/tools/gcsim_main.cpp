// gcsim command-line tool. Uses the public C API only; everything heavier
// lives behind the shared library.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(gcsim_status status) {
    switch (status) {
        case GCSIM_OK: return kExitOk;
        case GCSIM_ERROR_NUMERICAL: return kExitNumerical;
        default: return kExitValidation;
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

void emit_error(int exit_code, const std::string& message) {
    std::fprintf(stderr, "{\"error\":{\"exit_code\":%d,\"message\":\"%s\"}}\n",
                 exit_code, json_escape(message).c_str());
}

int fail(gcsim_status status) {
    const int code = exit_code_for(status);
    emit_error(code, gcsim_last_error());
    return code;
}

struct ConfigHandle {
    gcsim_config* ptr = nullptr;
    ~ConfigHandle() { gcsim_config_free(ptr); }
};

int load_config(const std::string& path, ConfigHandle& handle) {
    const gcsim_status status = gcsim_config_load(path.c_str(), &handle.ptr);
    if (status != GCSIM_OK) return fail(status);
    for (int i = 0; i < gcsim_config_warning_count(handle.ptr); ++i)
        std::fprintf(stderr, "warning: %s\n", gcsim_config_warning(handle.ptr, i));
    return kExitOk;
}

bool parse_regime(const std::string& text, gcsim_regime& out) {
    if (text == "constant") { out = GCSIM_REGIME_CONSTANT; return true; }
    if (text == "variable") { out = GCSIM_REGIME_VARIABLE; return true; }
    return false;
}

bool parse_solver(const std::string& text, gcsim_solver& out) {
    if (text == "analytic") { out = GCSIM_SOLVER_ANALYTIC; return true; }
    if (text == "fd") { out = GCSIM_SOLVER_FD; return true; }
    return false;
}

std::string solver_suffix(gcsim_solver solver) {
    return solver == GCSIM_SOLVER_FD ? "fd" : "analytic";
}

int run_one_simulation(gcsim_config* cfg, gcsim_regime regime, gcsim_solver solver,
                       const std::string& out_csv, const std::vector<double>& times,
                       const std::string& snapshot_prefix) {
    gcsim_chromatogram* chrom = nullptr;
    gcsim_status status = gcsim_simulate(cfg, regime, solver, &chrom);
    if (status != GCSIM_OK) return fail(status);
    status = gcsim_chromatogram_write_csv(chrom, out_csv.c_str());
    gcsim_chromatogram_free(chrom);
    if (status != GCSIM_OK) return fail(status);
    std::printf("wrote %s\n", out_csv.c_str());

    if (!times.empty()) {
        gcsim_snapshots* snaps = nullptr;
        status = gcsim_snapshots_run(cfg, regime, solver, times.data(),
                                     static_cast<int>(times.size()), &snaps);
        if (status != GCSIM_OK) return fail(status);
        for (int i = 0; i < gcsim_snapshots_count(snaps); ++i) {
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_%g_s.csv", times[i]);
            const std::string path = snapshot_prefix + name;
            status = gcsim_snapshots_write_csv(snaps, i, path.c_str());
            if (status != GCSIM_OK) {
                gcsim_snapshots_free(snaps);
                return fail(status);
            }
            std::printf("wrote %s (t = %.6g s)\n", path.c_str(),
                        gcsim_snapshots_time_s(snaps, i));
        }
        gcsim_snapshots_free(snaps);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gas chromatography column simulation and fitting"};
    app.require_subcommand(1);

    // --- simulate ---
    auto* simulate = app.add_subcommand(
        "simulate", "run a solver and write the outlet chromatogram CSV");
    std::string sim_config, sim_regime, sim_solver, sim_output, sim_prefix;
    std::vector<double> sim_times;
    simulate->add_option("--config", sim_config, "config file")->required();
    simulate->add_option("--regime", sim_regime, "constant|variable (default: config)");
    simulate->add_option("--solver", sim_solver, "analytic|fd (default: config)");
    simulate->add_option("--output", sim_output, "chromatogram CSV path");
    simulate->add_option("--times", sim_times,
                         "snapshot times in seconds (comma separated)")
        ->delimiter(',');
    simulate->add_option("--snapshot-prefix", sim_prefix,
                         "path prefix for snapshot CSVs");

    // --- compare ---
    auto* compare = app.add_subcommand(
        "compare", "run both solvers and report their discrepancies");
    std::string cmp_config, cmp_regime, cmp_output;
    compare->add_option("--config", cmp_config, "config file")->required();
    compare->add_option("--regime", cmp_regime, "constant|variable (default: config)");
    compare->add_option("--output", cmp_output, "JSON report path");

    // --- calibrate ---
    auto* calibrate = app.add_subcommand(
        "calibrate", "derive detector conversion factors from peak areas");
    std::string cal_config, cal_output;
    calibrate->add_option("--config", cal_config, "config file")->required();
    calibrate->add_option("--output", cal_output, "calibration CSV path");

    // --- fit ---
    auto* fit = app.add_subcommand(
        "fit", "fit adsorption/desorption coefficients to a measured trace");
    std::string fit_config, fit_data, fit_output;
    fit->add_option("--config", fit_config, "config file")->required();
    fit->add_option("--data", fit_data, "experimental CSV (time_seconds,intensity_au)")
        ->required();
    fit->add_option("--output", fit_output, "JSON result path");

    // --- convert ---
    auto* convert = app.add_subcommand("convert", "unit conversions");
    double cv_ppb = -1.0, cv_molar = -1.0, cv_au = 0.0, cv_T = 0.0, cv_p = 0.0;
    double cv_f = 0.0, cv_baseline = 0.0;
    bool has_au = false, has_molar_to_au = false;
    double cv_molar_to_au = 0.0;
    convert->add_option("--ppb", cv_ppb, "mixing ratio to convert to mol/m^3");
    convert->add_option("--molar", cv_molar, "mol/m^3 to convert to ppb");
    auto* au_opt = convert->add_option("--au", cv_au, "detector a.u. to convert to mol/m^3");
    auto* m2au_opt =
        convert->add_option("--molar-to-au", cv_molar_to_au, "mol/m^3 to convert to a.u.");
    convert->add_option("--T", cv_T, "temperature in K (for ppb conversions)");
    convert->add_option("--p", cv_p, "pressure in Pa (for ppb conversions)");
    convert->add_option("--f", cv_f, "conversion factor, a.u. per (mol/m^3)");
    convert->add_option("--baseline", cv_baseline, "baseline in a.u. (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error(kExitUsage, e.what());
        return kExitUsage;
    }
    has_au = au_opt->count() > 0;
    has_molar_to_au = m2au_opt->count() > 0;

    if (simulate->parsed()) {
        ConfigHandle cfg;
        if (int rc = load_config(sim_config, cfg); rc != kExitOk) return rc;

        gcsim_regime regime = gcsim_config_regime(cfg.ptr);
        if (!sim_regime.empty() && !parse_regime(sim_regime, regime)) {
            emit_error(kExitUsage, "--regime expects 'constant' or 'variable'");
            return kExitUsage;
        }
        const bool both = sim_solver.empty() && gcsim_config_solver_both(cfg.ptr);
        gcsim_solver solver = gcsim_config_solver(cfg.ptr);
        if (!sim_solver.empty() && !parse_solver(sim_solver, solver)) {
            emit_error(kExitUsage, "--solver expects 'analytic' or 'fd'");
            return kExitUsage;
        }

        std::vector<gcsim_solver> solvers;
        if (both) solvers = {GCSIM_SOLVER_ANALYTIC, GCSIM_SOLVER_FD};
        else solvers = {solver};
        for (gcsim_solver s : solvers) {
            std::string out_csv = sim_output;
            if (out_csv.empty())
                out_csv = "chromatogram_" + solver_suffix(s) + ".csv";
            else if (solvers.size() > 1)
                out_csv += "." + solver_suffix(s) + ".csv";
            if (int rc = run_one_simulation(cfg.ptr, regime, s, out_csv, sim_times,
                                            sim_prefix);
                rc != kExitOk)
                return rc;
        }
        return kExitOk;
    }

    if (compare->parsed()) {
        ConfigHandle cfg;
        if (int rc = load_config(cmp_config, cfg); rc != kExitOk) return rc;
        gcsim_regime regime = gcsim_config_regime(cfg.ptr);
        if (!cmp_regime.empty() && !parse_regime(cmp_regime, regime)) {
            emit_error(kExitUsage, "--regime expects 'constant' or 'variable'");
            return kExitUsage;
        }
        gcsim_compare_report* report = nullptr;
        gcsim_status status = gcsim_compare(cfg.ptr, regime, &report);
        if (status != GCSIM_OK) return fail(status);

        std::printf("%-16s %14s %14s %12s %12s %12s\n", "analyte", "t_peak[s] an.",
                    "t_peak[s] fd", "dt_peak", "dheight", "max|diff|/pk");
        for (int i = 0; i < gcsim_compare_entry_count(report); ++i) {
            gcsim_compare_entry e;
            gcsim_compare_get(report, i, &e);
            std::printf("%-16s %14.4f %14.4f %11.4f%% %11.4f%% %11.4f%%\n",
                        gcsim_compare_analyte(report, i), e.peak_time_analytic_s,
                        e.peak_time_fd_s, 100.0 * e.peak_time_rel_err,
                        100.0 * e.peak_height_rel_err,
                        100.0 * e.max_abs_diff_over_peak);
        }
        if (!cmp_output.empty()) {
            status = gcsim_compare_write_json(report, cmp_output.c_str());
            if (status != GCSIM_OK) {
                gcsim_compare_free(report);
                return fail(status);
            }
            std::printf("wrote %s\n", cmp_output.c_str());
        }
        gcsim_compare_free(report);
        return kExitOk;
    }

    if (calibrate->parsed()) {
        ConfigHandle cfg;
        if (int rc = load_config(cal_config, cfg); rc != kExitOk) return rc;
        gcsim_calibration* table = nullptr;
        gcsim_status status = gcsim_calibrate(cfg.ptr, &table);
        if (status != GCSIM_OK) return fail(status);
        std::printf("%-16s %18s %26s\n", "analyte", "peak_area[a.u. s]",
                    "f[a.u. per mol/m^3]");
        for (int i = 0; i < gcsim_calibration_entry_count(table); ++i)
            std::printf("%-16s %18.6g %26.8g\n", gcsim_calibration_analyte(table, i),
                        gcsim_calibration_peak_area(table, i),
                        gcsim_calibration_conversion_factor(table, i));
        if (!cal_output.empty()) {
            status = gcsim_calibration_write_csv(table, cal_output.c_str());
            if (status != GCSIM_OK) {
                gcsim_calibration_free(table);
                return fail(status);
            }
            std::printf("wrote %s\n", cal_output.c_str());
        }
        gcsim_calibration_free(table);
        return kExitOk;
    }

    if (fit->parsed()) {
        ConfigHandle cfg;
        if (int rc = load_config(fit_config, cfg); rc != kExitOk) return rc;
        gcsim_fit_result* result = nullptr;
        gcsim_status status = gcsim_fit(cfg.ptr, fit_data.c_str(), &result);
        if (status != GCSIM_OK) return fail(status);
        std::printf("%-16s %12s %12s %12s %10s %10s %10s\n", "analyte", "k_a[1/s]",
                    "k_d[1/s]", "SSE[a.u.^2]", "R^2", "K", "beta");
        for (int i = 0; i < gcsim_fit_entry_count(result); ++i) {
            gcsim_fit_entry e;
            gcsim_fit_get(result, i, &e);
            std::printf("%-16s %12.5g %12.5g %12.5g %10.4f %10.4g %10.4f%s\n",
                        gcsim_fit_analyte(result, i), e.k_a_per_s, e.k_d_per_s, e.sse,
                        e.r_squared, e.equilibrium_constant, e.beta,
                        e.converged ? "" : "  [not converged]");
        }
        if (!fit_output.empty()) {
            status = gcsim_fit_write_json(result, fit_output.c_str());
            if (status != GCSIM_OK) {
                gcsim_fit_free(result);
                return fail(status);
            }
            std::printf("wrote %s\n", fit_output.c_str());
        }
        gcsim_fit_free(result);
        return kExitOk;
    }

    if (convert->parsed()) {
        int requested = 0;
        requested += cv_ppb >= 0.0 ? 1 : 0;
        requested += cv_molar >= 0.0 ? 1 : 0;
        requested += has_au ? 1 : 0;
        requested += has_molar_to_au ? 1 : 0;
        if (requested != 1) {
            emit_error(kExitUsage,
                       "convert: give exactly one of --ppb, --molar, --au, --molar-to-au");
            return kExitUsage;
        }
        double value = 0.0;
        gcsim_status status = GCSIM_OK;
        if (cv_ppb >= 0.0) {
            status = gcsim_ppb_to_molar(cv_ppb, cv_T, cv_p, &value);
            if (status != GCSIM_OK) return fail(status);
            std::printf("%.10g mol/m^3\n", value);
        } else if (cv_molar >= 0.0) {
            status = gcsim_molar_to_ppb(cv_molar, cv_T, cv_p, &value);
            if (status != GCSIM_OK) return fail(status);
            std::printf("%.10g ppb\n", value);
        } else if (has_au) {
            status = gcsim_au_to_molar(cv_au, cv_f, cv_baseline, &value);
            if (status != GCSIM_OK) return fail(status);
            std::printf("%.10g mol/m^3\n", value);
        } else {
            status = gcsim_molar_to_au(cv_molar_to_au, cv_f, cv_baseline, &value);
            if (status != GCSIM_OK) return fail(status);
            std::printf("%.10g a.u.\n", value);
        }
        return kExitOk;
    }

    emit_error(kExitUsage, "no subcommand given");
    return kExitUsage;
}
