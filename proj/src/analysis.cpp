#include "analysis.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace gcsim::analysis {

Peak find_peak(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size() || times.size() < 3)
        throw ValidationError("find_peak: need at least 3 samples");
    std::size_t k = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[k]) k = i;

    Peak peak;
    peak.index = k;
    peak.time = times[k];
    peak.height = values[k];
    if (k == 0 || k + 1 == values.size()) return peak;

    // Parabola through the three samples around the maximum (uniform grids
    // are assumed only locally).
    const double y0 = values[k - 1], y1 = values[k], y2 = values[k + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom < 0.0) {
        const double shift = 0.5 * (y0 - y2) / denom;
        const double h = 0.5 * (times[k + 1] - times[k - 1]);
        peak.time = times[k] + shift * h;
        peak.height = y1 - 0.25 * (y0 - y2) * shift;
    }
    return peak;
}

CompareReport compare_chromatograms(const Chromatogram& a, const Chromatogram& b) {
    if (a.values.size() != b.values.size())
        throw ValidationError("compare: analyte counts differ");
    if (a.times.size() != b.times.size())
        throw ValidationError("compare: time grids differ");

    CompareReport report;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        CompareEntry entry;
        entry.analyte = i < a.analytes.size() ? a.analytes[i] : "";
        entry.peak_a = find_peak(a.times, a.values[i]);
        entry.peak_b = find_peak(b.times, b.values[i]);
        entry.peak_time_rel_err =
            std::abs(entry.peak_b.time - entry.peak_a.time) /
            std::max(entry.peak_a.time, 1e-300);
        entry.peak_height_rel_err =
            std::abs(entry.peak_b.height - entry.peak_a.height) /
            std::max(entry.peak_a.height, 1e-300);

        double max_abs = 0.0, sum_sq = 0.0;
        for (std::size_t k = 0; k < a.times.size(); ++k) {
            const double d = std::abs(a.values[i][k] - b.values[i][k]);
            max_abs = std::max(max_abs, d);
            sum_sq += d * d;
        }
        const double scale = std::max(entry.peak_a.height, 1e-300);
        entry.max_abs_diff_over_peak = max_abs / scale;
        entry.rms_diff_over_peak = std::sqrt(sum_sq / a.times.size()) / scale;

        report.worst_peak_time_rel_err =
            std::max(report.worst_peak_time_rel_err, entry.peak_time_rel_err);
        report.worst_peak_height_rel_err =
            std::max(report.worst_peak_height_rel_err, entry.peak_height_rel_err);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace gcsim::analysis
