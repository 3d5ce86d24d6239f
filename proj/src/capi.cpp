#include "gcsim.h"

#include <fstream>
#include <string>

#include <json.hpp>

#include "calib.hpp"
#include "config.hpp"
#include "csvio.hpp"
#include "errors.hpp"
#include "runner.hpp"
#include "scales.hpp"

using gcsim::NumericalError;
using gcsim::ValidationError;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <class Fn>
gcsim_status guarded(Fn&& fn) {
    try {
        fn();
        return GCSIM_OK;
    } catch (const ValidationError& e) {
        set_error(e.what());
        return GCSIM_ERROR_VALIDATION;
    } catch (const NumericalError& e) {
        set_error(e.what());
        return GCSIM_ERROR_NUMERICAL;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return GCSIM_ERROR_INVALID_ARGUMENT;
    } catch (const std::ios_base::failure& e) {
        set_error(e.what());
        return GCSIM_ERROR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return GCSIM_ERROR_NUMERICAL;
    }
}

gcsim::Regime to_regime(gcsim_regime r) {
    return r == GCSIM_REGIME_CONSTANT ? gcsim::Regime::constant_velocity
                                      : gcsim::Regime::variable_velocity;
}

gcsim::Solver to_solver(gcsim_solver s) {
    return s == GCSIM_SOLVER_FD ? gcsim::Solver::finite_difference
                                : gcsim::Solver::analytic;
}

bool valid_index(int index, std::size_t size) {
    return index >= 0 && static_cast<std::size_t>(index) < size;
}

}  // namespace

struct gcsim_config {
    gcsim::io::RunConfig cfg;
};

struct gcsim_chromatogram {
    gcsim::runner::SimulateOutput out;
};

struct gcsim_snapshots {
    gcsim::runner::SnapshotOutput out;
};

struct gcsim_compare_report {
    gcsim::runner::CompareOutput out;
};

struct gcsim_calibration {
    gcsim::runner::CalibrateOutput out;
};

struct gcsim_fit_result {
    gcsim::runner::FitOutput out;
};

extern "C" {

const char* gcsim_version(void) { return "1.0.0"; }

const char* gcsim_last_error(void) { return g_last_error.c_str(); }

gcsim_status gcsim_config_load(const char* path, gcsim_config** out) {
    if (!path || !out) {
        set_error("gcsim_config_load: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new gcsim_config{gcsim::io::load_config(path)}; });
}

gcsim_status gcsim_config_parse(const char* json_text, gcsim_config** out) {
    if (!json_text || !out) {
        set_error("gcsim_config_parse: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new gcsim_config{gcsim::io::parse_config(json_text)}; });
}

void gcsim_config_free(gcsim_config* cfg) { delete cfg; }

int gcsim_config_analyte_count(const gcsim_config* cfg) {
    return cfg ? static_cast<int>(cfg->cfg.analytes.size()) : 0;
}

const char* gcsim_config_analyte_name(const gcsim_config* cfg, int index) {
    if (!cfg || !valid_index(index, cfg->cfg.analytes.size())) return nullptr;
    return cfg->cfg.analytes[index].name.c_str();
}

int gcsim_config_warning_count(const gcsim_config* cfg) {
    return cfg ? static_cast<int>(cfg->cfg.warnings.size()) : 0;
}

const char* gcsim_config_warning(const gcsim_config* cfg, int index) {
    if (!cfg || !valid_index(index, cfg->cfg.warnings.size())) return nullptr;
    return cfg->cfg.warnings[index].c_str();
}

uint64_t gcsim_config_hash(const gcsim_config* cfg) {
    return cfg ? cfg->cfg.config_hash : 0;
}

gcsim_regime gcsim_config_regime(const gcsim_config* cfg) {
    return cfg && cfg->cfg.regime == gcsim::Regime::constant_velocity
               ? GCSIM_REGIME_CONSTANT
               : GCSIM_REGIME_VARIABLE;
}

gcsim_solver gcsim_config_solver(const gcsim_config* cfg) {
    return cfg && cfg->cfg.solver == gcsim::Solver::finite_difference
               ? GCSIM_SOLVER_FD
               : GCSIM_SOLVER_ANALYTIC;
}

int gcsim_config_solver_both(const gcsim_config* cfg) {
    return cfg && cfg->cfg.solver_both ? 1 : 0;
}

gcsim_status gcsim_config_groups(const gcsim_config* cfg, gcsim_groups* out) {
    if (!cfg || !out) {
        set_error("gcsim_config_groups: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const auto g = cfg->cfg.groups();
        out->damkohler = g.damkohler;
        out->length_scale_m = g.length_scale;
        out->time_scale_s = g.time_scale;
        out->column_length_hat = g.length_hat;
        out->injection_time_hat = g.injection_hat;
        out->outlet_pressure_hat = g.outlet_pressure_hat;
        out->inlet_velocity_m_s = g.inlet_velocity;
        out->reference_index = static_cast<int>(g.reference_index);
    });
}

gcsim_status gcsim_config_analyte_groups(const gcsim_config* cfg, int index,
                                         gcsim_analyte_groups* out) {
    if (!cfg || !out || !valid_index(index, cfg->cfg.analytes.size())) {
        set_error("gcsim_config_analyte_groups: bad argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const auto g = cfg->cfg.groups();
        out->beta = g.beta[index];
        out->k_a_hat = g.K_a[index];
        out->k_d_hat = g.K_d[index];
        out->peclet_inverse = g.peclet_inverse[index];
    });
}

gcsim_status gcsim_simulate(const gcsim_config* cfg, gcsim_regime regime,
                            gcsim_solver solver, gcsim_chromatogram** out) {
    if (!cfg || !out) {
        set_error("gcsim_simulate: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out = new gcsim_chromatogram{
            gcsim::runner::run_simulate(cfg->cfg, to_regime(regime), to_solver(solver))};
    });
}

int gcsim_chromatogram_analyte_count(const gcsim_chromatogram* chrom) {
    return chrom ? static_cast<int>(chrom->out.chromatogram.values.size()) : 0;
}

int gcsim_chromatogram_sample_count(const gcsim_chromatogram* chrom) {
    return chrom ? static_cast<int>(chrom->out.chromatogram.times.size()) : 0;
}

const double* gcsim_chromatogram_times_s(const gcsim_chromatogram* chrom) {
    return chrom ? chrom->out.chromatogram.times.data() : nullptr;
}

const double* gcsim_chromatogram_values(const gcsim_chromatogram* chrom, int analyte) {
    if (!chrom || !valid_index(analyte, chrom->out.chromatogram.values.size()))
        return nullptr;
    return chrom->out.chromatogram.values[analyte].data();
}

const char* gcsim_chromatogram_analyte_name(const gcsim_chromatogram* chrom,
                                            int analyte) {
    if (!chrom || !valid_index(analyte, chrom->out.chromatogram.analytes.size()))
        return nullptr;
    return chrom->out.chromatogram.analytes[analyte].c_str();
}

const char* gcsim_chromatogram_unit(const gcsim_chromatogram* chrom) {
    return chrom ? gcsim::to_string(chrom->out.chromatogram.unit) : nullptr;
}

gcsim_status gcsim_chromatogram_write_csv(const gcsim_chromatogram* chrom,
                                          const char* path) {
    if (!chrom || !path) {
        set_error("gcsim_chromatogram_write_csv: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        gcsim::io::write_chromatogram_csv(path, chrom->out.chromatogram, chrom->out.meta);
    });
}

void gcsim_chromatogram_free(gcsim_chromatogram* chrom) { delete chrom; }

gcsim_status gcsim_snapshots_run(const gcsim_config* cfg, gcsim_regime regime,
                                 gcsim_solver solver, const double* times_s,
                                 int count, gcsim_snapshots** out) {
    if (!cfg || !times_s || count < 1 || !out) {
        set_error("gcsim_snapshots_run: bad argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out = new gcsim_snapshots{gcsim::runner::run_snapshots(
            cfg->cfg, to_regime(regime), to_solver(solver),
            std::span<const double>(times_s, static_cast<std::size_t>(count)))};
    });
}

int gcsim_snapshots_count(const gcsim_snapshots* snaps) {
    return snaps ? static_cast<int>(snaps->out.snapshots.size()) : 0;
}

double gcsim_snapshots_time_s(const gcsim_snapshots* snaps, int index) {
    if (!snaps || !valid_index(index, snaps->out.times_s.size())) return -1.0;
    return snaps->out.times_s[index];
}

gcsim_status gcsim_snapshots_write_csv(const gcsim_snapshots* snaps, int index,
                                       const char* path) {
    if (!snaps || !path || !valid_index(index, snaps->out.snapshots.size())) {
        set_error("gcsim_snapshots_write_csv: bad argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        gcsim::io::write_snapshot_csv(path, snaps->out.snapshots[index],
                                      snaps->out.analytes, snaps->out.times_s[index],
                                      snaps->out.meta);
    });
}

void gcsim_snapshots_free(gcsim_snapshots* snaps) { delete snaps; }

gcsim_status gcsim_compare(const gcsim_config* cfg, gcsim_regime regime,
                           gcsim_compare_report** out) {
    if (!cfg || !out) {
        set_error("gcsim_compare: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out = new gcsim_compare_report{
            gcsim::runner::run_compare(cfg->cfg, to_regime(regime))};
    });
}

int gcsim_compare_entry_count(const gcsim_compare_report* report) {
    return report ? static_cast<int>(report->out.report.entries.size()) : 0;
}

const char* gcsim_compare_analyte(const gcsim_compare_report* report, int index) {
    if (!report || !valid_index(index, report->out.report.entries.size())) return nullptr;
    return report->out.report.entries[index].analyte.c_str();
}

gcsim_status gcsim_compare_get(const gcsim_compare_report* report, int index,
                               gcsim_compare_entry* out) {
    if (!report || !out || !valid_index(index, report->out.report.entries.size())) {
        set_error("gcsim_compare_get: bad argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    const auto& e = report->out.report.entries[index];
    out->peak_time_analytic_s = e.peak_a.time;
    out->peak_time_fd_s = e.peak_b.time;
    out->peak_height_analytic = e.peak_a.height;
    out->peak_height_fd = e.peak_b.height;
    out->peak_time_rel_err = e.peak_time_rel_err;
    out->peak_height_rel_err = e.peak_height_rel_err;
    out->max_abs_diff_over_peak = e.max_abs_diff_over_peak;
    out->rms_diff_over_peak = e.rms_diff_over_peak;
    return GCSIM_OK;
}

gcsim_status gcsim_compare_write_json(const gcsim_compare_report* report,
                                      const char* path) {
    if (!report || !path) {
        set_error("gcsim_compare_write_json: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        nlohmann::ordered_json doc;
        doc["kind"] = "gcsim compare report";
        doc["regime"] = gcsim::to_string(report->out.meta.regime);
        char hash[20];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(report->out.meta.config_hash));
        doc["config_hash"] = hash;
        doc["entries"] = nlohmann::ordered_json::array();
        for (const auto& e : report->out.report.entries) {
            nlohmann::ordered_json row;
            row["analyte"] = e.analyte;
            row["peak_time_analytic"] = e.peak_a.time;
            row["peak_time_fd"] = e.peak_b.time;
            row["peak_height_analytic"] = e.peak_a.height;
            row["peak_height_fd"] = e.peak_b.height;
            row["peak_time_rel_err"] = e.peak_time_rel_err;
            row["peak_height_rel_err"] = e.peak_height_rel_err;
            row["max_abs_diff_over_peak"] = e.max_abs_diff_over_peak;
            row["rms_diff_over_peak"] = e.rms_diff_over_peak;
            doc["entries"].push_back(row);
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw ValidationError(std::string("cannot open '") + path + "'");
        file << doc.dump(2) << "\n";
    });
}

void gcsim_compare_free(gcsim_compare_report* report) { delete report; }

gcsim_status gcsim_calibrate(const gcsim_config* cfg, gcsim_calibration** out) {
    if (!cfg || !out) {
        set_error("gcsim_calibrate: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded(
        [&] { *out = new gcsim_calibration{gcsim::runner::run_calibrate(cfg->cfg)}; });
}

int gcsim_calibration_entry_count(const gcsim_calibration* table) {
    return table ? static_cast<int>(table->out.rows.size()) : 0;
}

const char* gcsim_calibration_analyte(const gcsim_calibration* table, int index) {
    if (!table || !valid_index(index, table->out.rows.size())) return nullptr;
    return table->out.rows[index].analyte.c_str();
}

double gcsim_calibration_conversion_factor(const gcsim_calibration* table, int index) {
    if (!table || !valid_index(index, table->out.rows.size())) return 0.0;
    return table->out.rows[index].conversion_factor;
}

double gcsim_calibration_peak_area(const gcsim_calibration* table, int index) {
    if (!table || !valid_index(index, table->out.rows.size())) return 0.0;
    return table->out.rows[index].peak_area;
}

gcsim_status gcsim_calibration_write_csv(const gcsim_calibration* table,
                                         const char* path) {
    if (!table || !path) {
        set_error("gcsim_calibration_write_csv: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw ValidationError(std::string("cannot open '") + path + "'");
        char hash[20];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(table->out.meta.config_hash));
        file << "# gcsim calibration table\n# config_hash: " << hash << "\n";
        file << "analyte,peak_area_au_s,conversion_factor_au_per_mol_m3\n";
        for (const auto& row : table->out.rows)
            file << row.analyte << "," << gcsim::io::format_double(row.peak_area) << ","
                 << gcsim::io::format_double(row.conversion_factor) << "\n";
    });
}

void gcsim_calibration_free(gcsim_calibration* table) { delete table; }

gcsim_status gcsim_fit(const gcsim_config* cfg, const char* data_csv_path,
                       gcsim_fit_result** out) {
    if (!cfg || !data_csv_path || !out) {
        set_error("gcsim_fit: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const auto data = gcsim::io::load_experimental_csv(data_csv_path);
        *out = new gcsim_fit_result{gcsim::runner::run_fit(cfg->cfg, data)};
    });
}

int gcsim_fit_entry_count(const gcsim_fit_result* fit) {
    return fit ? static_cast<int>(fit->out.results.size()) : 0;
}

const char* gcsim_fit_analyte(const gcsim_fit_result* fit, int index) {
    if (!fit || !valid_index(index, fit->out.results.size())) return nullptr;
    return fit->out.results[index].analyte.c_str();
}

gcsim_status gcsim_fit_get(const gcsim_fit_result* fit, int index, gcsim_fit_entry* out) {
    if (!fit || !out || !valid_index(index, fit->out.results.size())) {
        set_error("gcsim_fit_get: bad argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    const auto& r = fit->out.results[index];
    out->k_a_per_s = r.k_a;
    out->k_d_per_s = r.k_d;
    out->sse = r.sse;
    out->r_squared = r.r_squared;
    out->equilibrium_constant = r.equilibrium_constant;
    out->equilibrium_loading_mol_m3 = r.equilibrium_loading;
    out->beta = r.beta;
    out->baseline_au = r.baseline_au;
    out->converged = r.converged ? 1 : 0;
    return GCSIM_OK;
}

gcsim_status gcsim_fit_write_json(const gcsim_fit_result* fit, const char* path) {
    if (!fit || !path) {
        set_error("gcsim_fit_write_json: null argument");
        return GCSIM_ERROR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        nlohmann::ordered_json doc;
        doc["kind"] = "gcsim fit result";
        char hash[20];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(fit->out.meta.config_hash));
        doc["config_hash"] = hash;
        doc["results"] = nlohmann::ordered_json::array();
        for (const auto& r : fit->out.results) {
            nlohmann::ordered_json row;
            row["analyte"] = r.analyte;
            row["k_a_per_s"] = r.k_a;
            row["k_d_per_s"] = r.k_d;
            row["sse_au2"] = r.sse;
            row["r_squared"] = r.r_squared;
            row["equilibrium_constant"] = r.equilibrium_constant;
            row["equilibrium_loading_mol_m3"] = r.equilibrium_loading;
            row["beta"] = r.beta;
            row["baseline_au"] = r.baseline_au;
            row["converged"] = r.converged;
            doc["results"].push_back(row);
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw ValidationError(std::string("cannot open '") + path + "'");
        file << doc.dump(2) << "\n";
    });
}

void gcsim_fit_free(gcsim_fit_result* fit) { delete fit; }

gcsim_status gcsim_ppb_to_molar(double ppb, double temperature_k, double pressure_pa,
                                double* out) {
    if (!out) return GCSIM_ERROR_INVALID_ARGUMENT;
    return guarded(
        [&] { *out = gcsim::scales::ppb_to_molar(ppb, temperature_k, pressure_pa); });
}

gcsim_status gcsim_molar_to_ppb(double molar, double temperature_k, double pressure_pa,
                                double* out) {
    if (!out) return GCSIM_ERROR_INVALID_ARGUMENT;
    return guarded(
        [&] { *out = gcsim::scales::molar_to_ppb(molar, temperature_k, pressure_pa); });
}

gcsim_status gcsim_au_to_molar(double intensity_au, double conversion_factor,
                               double baseline_au, double* out) {
    if (!out) return GCSIM_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        if (!(conversion_factor > 0.0))
            throw std::domain_error("au_to_molar: conversion factor must be > 0");
        *out = (intensity_au - baseline_au) / conversion_factor;
    });
}

gcsim_status gcsim_molar_to_au(double molar, double conversion_factor,
                               double baseline_au, double* out) {
    if (!out) return GCSIM_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        if (!(conversion_factor > 0.0))
            throw std::domain_error("molar_to_au: conversion factor must be > 0");
        *out = molar * conversion_factor + baseline_au;
    });
}

}  // extern "C"
