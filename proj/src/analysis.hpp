#pragma once

#include <span>
#include <string>
#include <vector>

#include "chromatogram.hpp"

namespace gcsim::analysis {

struct Peak {
    double time = 0.0;
    double height = 0.0;
    std::size_t index = 0;
};

/// Location and height of the maximum of a sampled signal, refined by a
/// parabola through the three samples around the discrete maximum.
Peak find_peak(std::span<const double> times, std::span<const double> values);

struct CompareEntry {
    std::string analyte;
    Peak peak_a, peak_b;
    double peak_time_rel_err = 0.0;
    double peak_height_rel_err = 0.0;
    double max_abs_diff_over_peak = 0.0;
    double rms_diff_over_peak = 0.0;
};

struct CompareReport {
    std::vector<CompareEntry> entries;
    double worst_peak_time_rel_err = 0.0;
    double worst_peak_height_rel_err = 0.0;
};

/// Per-analyte discrepancies between two chromatograms on the same grid;
/// `a` is the reference for the relative measures.
CompareReport compare_chromatograms(const Chromatogram& a, const Chromatogram& b);

}  // namespace gcsim::analysis
