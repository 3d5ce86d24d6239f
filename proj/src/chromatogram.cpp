#include "chromatogram.hpp"

namespace gcsim {

const char* to_string(Unit u) {
    switch (u) {
        case Unit::dimensionless: return "dimensionless";
        case Unit::mol_per_m3: return "mol/m3";
        case Unit::detector_au: return "a.u.";
    }
    return "?";
}

const char* to_string(Regime r) {
    return r == Regime::constant_velocity ? "constant" : "variable";
}

const char* to_string(Solver s) {
    return s == Solver::analytic ? "analytic" : "fd";
}

}  // namespace gcsim
