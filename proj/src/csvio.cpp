#include "csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace gcsim::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& cell, std::size_t line_no, const char* column) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(cell, &consumed);
    } catch (const std::exception&) {
        throw ValidationError("csv line " + std::to_string(line_no) + ": column '" +
                              column + "' is not numeric: '" + cell + "'");
    }
    if (consumed != cell.size())
        throw ValidationError("csv line " + std::to_string(line_no) + ": column '" +
                              column + "' has trailing characters: '" + cell + "'");
    return value;
}

void open_or_throw(std::ofstream& out, const std::string& path) {
    out.open(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
}

}  // namespace

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

calib::ExperimentalChromatogram parse_experimental_csv(const std::string& text) {
    calib::ExperimentalChromatogram data;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty() || row[0] == '#') continue;
        if (!header_seen) {
            // First data-bearing line must be the header.
            std::string squashed;
            for (char ch : row)
                if (ch != ' ' && ch != '\t') squashed += ch;
            if (squashed != "time_seconds,intensity_au")
                throw ValidationError(
                    "csv line " + std::to_string(line_no) +
                    ": expected header 'time_seconds,intensity_au', got '" + row + "'");
            header_seen = true;
            continue;
        }
        const std::size_t comma = row.find(',');
        if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos)
            throw ValidationError("csv line " + std::to_string(line_no) +
                                  ": expected exactly two columns");
        const double t = parse_cell(trim(row.substr(0, comma)), line_no, "time_seconds");
        const double y = parse_cell(trim(row.substr(comma + 1)), line_no, "intensity_au");
        if (!data.time_s.empty() && !(t > data.time_s.back()))
            throw ValidationError("csv line " + std::to_string(line_no) +
                                  ": time must be strictly ascending");
        data.time_s.push_back(t);
        data.intensity_au.push_back(y);
    }
    if (!header_seen) throw ValidationError("csv: missing header line");
    data.validate();
    return data;
}

calib::ExperimentalChromatogram load_experimental_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("csv: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experimental_csv(buffer.str());
}

namespace {

void write_meta(std::ostream& out, const char* kind, const Chromatogram& chrom,
                const CsvMeta& meta) {
    char hash[20];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(meta.config_hash));
    out << "# gcsim " << kind << "\n";
    out << "# unit: " << to_string(chrom.unit) << "\n";
    out << "# regime: " << to_string(meta.regime) << "\n";
    out << "# solver: " << to_string(meta.solver) << "\n";
    out << "# config_hash: " << hash << "\n";
}

}  // namespace

void write_chromatogram_csv(std::ostream& out, const Chromatogram& chrom,
                            const CsvMeta& meta) {
    write_meta(out, "chromatogram", chrom, meta);
    out << (chrom.time_unit == Chromatogram::TimeUnit::seconds ? "t_seconds" : "t_hat");
    for (const std::string& name : chrom.analytes) out << "," << name;
    out << "\n";
    for (std::size_t k = 0; k < chrom.times.size(); ++k) {
        out << format_double(chrom.times[k]);
        for (const auto& series : chrom.values) out << "," << format_double(series[k]);
        out << "\n";
    }
}

void write_chromatogram_csv(const std::string& path, const Chromatogram& chrom,
                            const CsvMeta& meta) {
    std::ofstream out;
    open_or_throw(out, path);
    write_chromatogram_csv(out, chrom, meta);
}

void write_snapshot_csv(std::ostream& out, const numeric::FieldSnapshot& snap,
                        const std::vector<std::string>& analytes, double time_s,
                        const CsvMeta& meta) {
    Chromatogram tag;  // reuse the header writer's unit formatting
    tag.unit = Unit::dimensionless;
    write_meta(out, "snapshot", tag, meta);
    out << "# t_hat: " << format_double(snap.t_hat) << "\n";
    out << "# t_seconds: " << format_double(time_s) << "\n";
    const bool has_q = !snap.q.empty();
    out << "x_hat";
    for (const std::string& name : analytes) out << ",c_" << name;
    if (has_q)
        for (const std::string& name : analytes) out << ",q_" << name;
    out << "\n";
    for (std::size_t j = 0; j < snap.x_hat.size(); ++j) {
        out << format_double(snap.x_hat[j]);
        for (const auto& series : snap.c) out << "," << format_double(series[j]);
        if (has_q)
            for (const auto& series : snap.q) out << "," << format_double(series[j]);
        out << "\n";
    }
}

void write_snapshot_csv(const std::string& path, const numeric::FieldSnapshot& snap,
                        const std::vector<std::string>& analytes, double time_s,
                        const CsvMeta& meta) {
    std::ofstream out;
    open_or_throw(out, path);
    write_snapshot_csv(out, snap, analytes, time_s, meta);
}

}  // namespace gcsim::io
