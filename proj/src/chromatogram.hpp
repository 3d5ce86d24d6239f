#pragma once

#include <string>
#include <vector>

namespace gcsim {

enum class Unit { dimensionless, mol_per_m3, detector_au };
enum class Regime { constant_velocity, variable_velocity };
enum class Solver { analytic, finite_difference };

const char* to_string(Unit u);
const char* to_string(Regime r);
const char* to_string(Solver s);

/// Outlet signal per analyte over a common time grid. Times are either
/// scaled (t_hat) inside the solvers or seconds once the shell layer has
/// re-dimensionalized them; the tag says which.
struct Chromatogram {
    enum class TimeUnit { t_hat, seconds };

    std::vector<double> times;
    TimeUnit time_unit = TimeUnit::t_hat;
    Unit unit = Unit::dimensionless;
    std::vector<std::string> analytes;
    std::vector<std::vector<double>> values;  // [analyte][sample]
};

}  // namespace gcsim
