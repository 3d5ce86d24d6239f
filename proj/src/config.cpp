#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace gcsim::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ValidationError(path + ": " + message);
}

const json& require(const json& parent, const std::string& path, const char* key) {
    auto it = parent.find(key);
    if (it == parent.end()) fail(path + "." + key, "missing required key");
    return *it;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!ok.count(it.key())) fail(path + "." + it.key(), "unknown key");
}

double get_number(const json& parent, const std::string& path, const char* key) {
    const json& v = require(parent, path, key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

double get_number_or(const json& parent, const std::string& path, const char* key,
                     double fallback) {
    auto it = parent.find(key);
    if (it == parent.end()) return fallback;
    if (!it->is_number()) fail(path + "." + key, "expected a number");
    return it->get<double>();
}

std::optional<double> get_optional_number(const json& parent, const std::string& path,
                                          const char* key) {
    auto it = parent.find(key);
    if (it == parent.end()) return std::nullopt;
    if (!it->is_number()) fail(path + "." + key, "expected a number");
    return it->get<double>();
}

std::string get_string(const json& parent, const std::string& path, const char* key) {
    const json& v = require(parent, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

}  // namespace

scales::DimensionlessGroups RunConfig::groups() const {
    return scales::nondimensionalize(geometry, conditions, analytes, reference_index);
}

std::size_t RunConfig::analyte_index(const std::string& name) const {
    for (std::size_t i = 0; i < analytes.size(); ++i)
        if (analytes[i].name == name) return i;
    throw ValidationError("analyte '" + name + "' is not defined in the config");
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: not valid JSON: ") + e.what());
    }

    check_keys(root, "config",
               {"schema_version", "geometry", "conditions", "analytes",
                "reference_analyte", "regime", "solver", "output_unit", "grid",
                "time_window", "fit", "calibration"});

    RunConfig cfg;
    cfg.config_hash = fnv1a64(json_text);

    const json& version = require(root, "config", "schema_version");
    if (!version.is_number_integer() || version.get<int>() != 1)
        fail("config.schema_version", "unsupported value (this build reads version 1)");
    cfg.schema_version = 1;

    {
        const json& g = require(root, "config", "geometry");
        check_keys(g, "config.geometry",
                   {"length_m", "inner_radius_m", "coating_thickness_m"});
        cfg.geometry.length = get_number(g, "config.geometry", "length_m");
        cfg.geometry.inner_radius = get_number(g, "config.geometry", "inner_radius_m");
        cfg.geometry.coating_thickness =
            get_number(g, "config.geometry", "coating_thickness_m");
        try {
            cfg.geometry.validate();
        } catch (const ValidationError& e) {
            fail("config.geometry", e.what());
        }
    }

    {
        const json& c = require(root, "config", "conditions");
        check_keys(c, "config.conditions",
                   {"temperature_K", "inlet_pressure_Pa", "outlet_pressure_Pa",
                    "inlet_velocity_m_s", "inlet_flow_rate_m3_s", "injection_time_s",
                    "viscosity_Pa_s"});
        cfg.conditions.temperature = get_number(c, "config.conditions", "temperature_K");
        cfg.conditions.inlet_pressure =
            get_number(c, "config.conditions", "inlet_pressure_Pa");
        cfg.conditions.outlet_pressure =
            get_number(c, "config.conditions", "outlet_pressure_Pa");
        cfg.conditions.inlet_velocity =
            get_optional_number(c, "config.conditions", "inlet_velocity_m_s");
        cfg.conditions.inlet_flow_rate =
            get_optional_number(c, "config.conditions", "inlet_flow_rate_m3_s");
        cfg.conditions.injection_time =
            get_number(c, "config.conditions", "injection_time_s");
        cfg.conditions.viscosity = get_number(c, "config.conditions", "viscosity_Pa_s");
        try {
            cfg.conditions.validate();
        } catch (const ValidationError& e) {
            fail("config.conditions", e.what());
        }
    }

    {
        const json& list = require(root, "config", "analytes");
        if (!list.is_array() || list.empty())
            fail("config.analytes", "expected a non-empty array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = "config.analytes[" + std::to_string(i) + "]";
            const json& a = list[i];
            check_keys(a, path,
                       {"name", "inlet_concentration_mol_m3", "inlet_concentration_ppb",
                        "diffusion_coefficient_m2_s", "k_a_per_s", "k_d_per_s"});
            scales::AnalyteSpec spec;
            spec.name = get_string(a, path, "name");
            const auto molar = get_optional_number(a, path, "inlet_concentration_mol_m3");
            const auto ppb = get_optional_number(a, path, "inlet_concentration_ppb");
            if (molar && ppb)
                fail(path, "give inlet concentration in mol/m^3 or ppb, not both");
            if (molar) {
                spec.inlet_concentration = *molar;
            } else if (ppb) {
                spec.inlet_concentration = scales::ppb_to_molar(
                    *ppb, cfg.conditions.temperature, cfg.conditions.inlet_pressure);
            } else {
                fail(path, "missing inlet concentration");
            }
            spec.diffusion_coefficient = get_number(a, path, "diffusion_coefficient_m2_s");
            spec.k_a = get_number(a, path, "k_a_per_s");
            spec.k_d = get_number(a, path, "k_d_per_s");
            try {
                spec.validate();
            } catch (const ValidationError& e) {
                fail(path, e.what());
            }
            for (const scales::AnalyteSpec& other : cfg.analytes)
                if (other.name == spec.name)
                    fail(path + ".name", "duplicate analyte name '" + spec.name + "'");
            cfg.analytes.push_back(std::move(spec));
        }
    }

    if (root.contains("reference_analyte")) {
        const std::string name = get_string(root, "config", "reference_analyte");
        bool found = false;
        for (std::size_t i = 0; i < cfg.analytes.size(); ++i)
            if (cfg.analytes[i].name == name) {
                cfg.reference_index = i;
                found = true;
            }
        if (!found)
            fail("config.reference_analyte", "no analyte named '" + name + "'");
    }

    if (root.contains("regime")) {
        const std::string r = get_string(root, "config", "regime");
        if (r == "constant") cfg.regime = Regime::constant_velocity;
        else if (r == "variable") cfg.regime = Regime::variable_velocity;
        else fail("config.regime", "expected 'constant' or 'variable'");
    }

    if (root.contains("solver")) {
        const std::string s = get_string(root, "config", "solver");
        if (s == "analytic") cfg.solver = Solver::analytic;
        else if (s == "fd") cfg.solver = Solver::finite_difference;
        else if (s == "both") { cfg.solver = Solver::analytic; cfg.solver_both = true; }
        else fail("config.solver", "expected 'analytic', 'fd' or 'both'");
    }

    if (root.contains("output_unit")) {
        const std::string u = get_string(root, "config", "output_unit");
        if (u == "dimensionless") cfg.output_unit = Unit::dimensionless;
        else if (u == "mol_m3") cfg.output_unit = Unit::mol_per_m3;
        else if (u == "au") cfg.output_unit = Unit::detector_au;
        else fail("config.output_unit", "expected 'dimensionless', 'mol_m3' or 'au'");
    }

    if (root.contains("grid")) {
        const json& g = root["grid"];
        check_keys(g, "config.grid", {"n_cells", "safety"});
        const double n = get_number_or(g, "config.grid", "n_cells", cfg.grid.n_cells);
        if (n < 16 || n != static_cast<int>(n))
            fail("config.grid.n_cells", "expected an integer >= 16");
        cfg.grid.n_cells = static_cast<int>(n);
        cfg.grid.safety = get_number_or(g, "config.grid", "safety", cfg.grid.safety);
        if (!(cfg.grid.safety > 0.0) || !(cfg.grid.safety <= 1.0))
            fail("config.grid.safety", "expected a value in (0, 1]");
    }

    if (root.contains("time_window")) {
        const json& w = root["time_window"];
        check_keys(w, "config.time_window", {"start_s", "end_s", "points"});
        cfg.time_window.start_s =
            get_number_or(w, "config.time_window", "start_s", 0.0);
        cfg.time_window.end_s = get_optional_number(w, "config.time_window", "end_s");
        if (cfg.time_window.end_s &&
            !(*cfg.time_window.end_s > cfg.time_window.start_s))
            fail("config.time_window.end_s", "must exceed start_s");
        const double pts = get_number_or(w, "config.time_window", "points", 2000);
        if (pts < 8 || pts != static_cast<int>(pts))
            fail("config.time_window.points", "expected an integer >= 8");
        cfg.time_window.points = static_cast<int>(pts);
        if (cfg.time_window.start_s < 0.0)
            fail("config.time_window.start_s", "must be >= 0");
    }

    if (root.contains("fit")) {
        const json& f = root["fit"];
        check_keys(f, "config.fit",
                   {"seed", "starts", "k_a_bounds_per_s", "k_d_bounds_per_s", "windows",
                    "exclusions_s", "baseline_window_s"});
        if (f.contains("seed")) {
            const json& s = f["seed"];
            if (!s.is_number_unsigned()) fail("config.fit.seed", "expected an unsigned integer");
            cfg.fit.seed = s.get<std::uint64_t>();
        }
        const double starts = get_number_or(f, "config.fit", "starts", cfg.fit.starts);
        if (starts < 1 || starts != static_cast<int>(starts))
            fail("config.fit.starts", "expected an integer >= 1");
        cfg.fit.starts = static_cast<int>(starts);
        auto read_bounds = [&](const char* key, double& lo, double& hi) {
            if (!f.contains(key)) return;
            const json& b = f[key];
            if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
                fail(std::string("config.fit.") + key, "expected [low, high]");
            lo = b[0].get<double>();
            hi = b[1].get<double>();
            if (!(lo > 0.0) || !(hi > lo))
                fail(std::string("config.fit.") + key, "expected 0 < low < high");
        };
        read_bounds("k_a_bounds_per_s", cfg.fit.k_a_min, cfg.fit.k_a_max);
        read_bounds("k_d_bounds_per_s", cfg.fit.k_d_min, cfg.fit.k_d_max);
        if (f.contains("windows")) {
            const json& ws = f["windows"];
            if (!ws.is_array()) fail("config.fit.windows", "expected an array");
            for (std::size_t i = 0; i < ws.size(); ++i) {
                const std::string path = "config.fit.windows[" + std::to_string(i) + "]";
                check_keys(ws[i], path, {"analyte", "t_start_s", "t_end_s"});
                calib::AnalyteWindow w;
                w.analyte = get_string(ws[i], path, "analyte");
                w.t_start_s = get_number(ws[i], path, "t_start_s");
                w.t_end_s = get_number(ws[i], path, "t_end_s");
                if (!(w.t_end_s > w.t_start_s)) fail(path, "t_end_s must exceed t_start_s");
                bool known = false;
                for (const auto& a : cfg.analytes) known = known || a.name == w.analyte;
                if (!known) fail(path + ".analyte", "no analyte named '" + w.analyte + "'");
                cfg.fit.windows.push_back(std::move(w));
            }
        }
        if (f.contains("exclusions_s")) {
            const json& ex = f["exclusions_s"];
            if (!ex.is_array()) fail("config.fit.exclusions_s", "expected an array of [start, end]");
            for (std::size_t i = 0; i < ex.size(); ++i) {
                const json& e = ex[i];
                const std::string path = "config.fit.exclusions_s[" + std::to_string(i) + "]";
                if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                    fail(path, "expected [start, end]");
                const double lo = e[0].get<double>(), hi = e[1].get<double>();
                if (!(hi > lo)) fail(path, "end must exceed start");
                cfg.fit.exclusions_s.emplace_back(lo, hi);
            }
        }
        if (f.contains("baseline_window_s")) {
            const json& b = f["baseline_window_s"];
            if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
                fail("config.fit.baseline_window_s", "expected [start, end]");
            cfg.fit.baseline_window_s = {{b[0].get<double>(), b[1].get<double>()}};
            if (!((*cfg.fit.baseline_window_s)[1] > (*cfg.fit.baseline_window_s)[0]))
                fail("config.fit.baseline_window_s", "end must exceed start");
        }
    }

    if (root.contains("calibration")) {
        const json& list = root["calibration"];
        if (!list.is_array()) fail("config.calibration", "expected an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = "config.calibration[" + std::to_string(i) + "]";
            check_keys(list[i], path, {"analyte", "area_au_s", "area_au_s_per_ppb"});
            CalibrationInput entry;
            entry.analyte = get_string(list[i], path, "analyte");
            entry.area_au_s = get_optional_number(list[i], path, "area_au_s");
            entry.area_au_s_per_ppb =
                get_optional_number(list[i], path, "area_au_s_per_ppb");
            if (entry.area_au_s.has_value() == entry.area_au_s_per_ppb.has_value())
                fail(path, "give exactly one of area_au_s, area_au_s_per_ppb");
            bool known = false;
            for (const auto& a : cfg.analytes) known = known || a.name == entry.analyte;
            if (!known) fail(path + ".analyte", "no analyte named '" + entry.analyte + "'");
            cfg.calibration.push_back(std::move(entry));
        }
    }

    // Resolving the velocity may append a disagreement warning.
    cfg.conditions.resolve_inlet_velocity(cfg.geometry.inner_radius, &cfg.warnings);
    if (cfg.output_unit == Unit::detector_au && cfg.calibration.empty())
        fail("config.output_unit", "'au' output needs a calibration section");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace gcsim::io
