#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calib.hpp"
#include "chromatogram.hpp"
#include "scales.hpp"

namespace gcsim::io {

struct GridSettings {
    int n_cells = 2000;
    double safety = 0.8;
};

struct TimeWindow {
    double start_s = 0.0;
    std::optional<double> end_s;  // absent = derive from the slowest analyte
    int points = 2000;
};

struct FitSettings {
    std::uint64_t seed = 20240901;
    int starts = 32;
    double k_a_min = 1e1, k_a_max = 1e6;
    double k_d_min = 1e-1, k_d_max = 1e3;
    std::vector<calib::AnalyteWindow> windows;
    std::vector<std::pair<double, double>> exclusions_s;
    std::optional<std::array<double, 2>> baseline_window_s;
};

struct CalibrationInput {
    std::string analyte;
    // Exactly one of the two areas is set: an absolute peak area, or an
    // area per ppb of inlet mixing ratio (paired with the per-ppb
    // concentration at inlet conditions).
    std::optional<double> area_au_s;
    std::optional<double> area_au_s_per_ppb;
};

struct RunConfig {
    int schema_version = 1;
    scales::ColumnGeometry geometry;
    scales::OperatingConditions conditions;
    std::vector<scales::AnalyteSpec> analytes;
    std::size_t reference_index = 0;
    Regime regime = Regime::variable_velocity;
    Solver solver = Solver::analytic;
    bool solver_both = false;
    Unit output_unit = Unit::mol_per_m3;
    GridSettings grid;
    TimeWindow time_window;
    FitSettings fit;
    std::vector<CalibrationInput> calibration;

    std::vector<std::string> warnings;
    std::uint64_t config_hash = 0;

    scales::DimensionlessGroups groups() const;
    std::size_t analyte_index(const std::string& name) const;
};

/// Parses and fully validates a config file. Unknown keys, missing keys and
/// invariant violations are reported with a path to the offending field.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

/// FNV-1a over the raw config bytes; recorded in every emitted artifact.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace gcsim::io
