#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "calib.hpp"
#include "chromatogram.hpp"
#include "numeric.hpp"

namespace gcsim::io {

/// Reads a detector trace: header line `time_seconds,intensity_au`, then one
/// sample per row. Lines starting with '#' are comments; CRLF endings are
/// accepted. Times must be strictly ascending.
calib::ExperimentalChromatogram load_experimental_csv(const std::string& path);
calib::ExperimentalChromatogram parse_experimental_csv(const std::string& text);

struct CsvMeta {
    Regime regime = Regime::variable_velocity;
    Solver solver = Solver::analytic;
    std::uint64_t config_hash = 0;
};

/// Chromatogram CSV: `# key: value` header block (unit, regime, solver,
/// config hash), then t_seconds plus one column per analyte. Numeric
/// formatting is fixed at %.17g so identical inputs give identical bytes.
void write_chromatogram_csv(std::ostream& out, const Chromatogram& chrom,
                            const CsvMeta& meta);
void write_chromatogram_csv(const std::string& path, const Chromatogram& chrom,
                            const CsvMeta& meta);

/// Snapshot CSV: x_hat, then scaled mobile concentration (and, when the
/// solver tracks it, adsorbed loading) per analyte.
void write_snapshot_csv(std::ostream& out, const numeric::FieldSnapshot& snap,
                        const std::vector<std::string>& analytes, double time_s,
                        const CsvMeta& meta);
void write_snapshot_csv(const std::string& path, const numeric::FieldSnapshot& snap,
                        const std::vector<std::string>& analytes, double time_s,
                        const CsvMeta& meta);

std::string format_double(double v);

}  // namespace gcsim::io
