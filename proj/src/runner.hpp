#pragma once

#include <string>
#include <vector>

#include "analysis.hpp"
#include "calib.hpp"
#include "chromatogram.hpp"
#include "config.hpp"
#include "csvio.hpp"
#include "numeric.hpp"

namespace gcsim::runner {

struct SimulateOutput {
    Chromatogram chromatogram;  // seconds, requested unit
    io::CsvMeta meta;
};

/// Full simulation pipeline: scale the configured experiment, run the
/// requested solver on the configured (or derived) time window, and map the
/// outlet signal back to dimensional units.
SimulateOutput run_simulate(const io::RunConfig& cfg, Regime regime, Solver solver);

struct SnapshotOutput {
    std::vector<numeric::FieldSnapshot> snapshots;  // scaled fields
    std::vector<double> times_s;                    // realized times
    std::vector<std::string> analytes;
    io::CsvMeta meta;
};

/// Column profiles at the requested dimensional times. The FD solver
/// supplies both phases; the analytic solver supplies the mobile phase.
SnapshotOutput run_snapshots(const io::RunConfig& cfg, Regime regime, Solver solver,
                             std::span<const double> times_s);

struct CompareOutput {
    analysis::CompareReport report;
    Chromatogram analytic_s;  // seconds, mol/m^3
    Chromatogram fd_s;
    io::CsvMeta meta;
};

/// Analytic-vs-FD discrepancy report on a shared time grid.
CompareOutput run_compare(const io::RunConfig& cfg, Regime regime);

struct CalibrationRow {
    std::string analyte;
    double peak_area = 0.0;          // a.u. s (absolute)
    double conversion_factor = 0.0;  // a.u. per (mol/m^3)
};

struct CalibrateOutput {
    std::vector<CalibrationRow> rows;
    io::CsvMeta meta;
};

CalibrateOutput run_calibrate(const io::RunConfig& cfg);

struct FitOutput {
    std::vector<calib::FitResult> results;
    io::CsvMeta meta;
};

/// Fits every configured window against the supplied trace. Windows are
/// processed in config order; each fit is self-contained.
FitOutput run_fit(const io::RunConfig& cfg, const calib::ExperimentalChromatogram& data);

/// Conversion factor for one analyte from the config's calibration section.
double conversion_factor_for(const io::RunConfig& cfg, std::size_t analyte_index);

/// The dimensional time grid used by simulate/compare for this config.
std::vector<double> time_grid_seconds(const io::RunConfig& cfg, Regime regime);

}  // namespace gcsim::runner
