#include "calib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "errors.hpp"
#include "flow.hpp"
#include "neldermead.hpp"
#include "parallel.hpp"

namespace gcsim::calib {

void ExperimentalChromatogram::validate() const {
    if (time_s.size() != intensity_au.size())
        throw ValidationError("chromatogram data: column lengths differ");
    if (time_s.size() < 2) throw ValidationError("chromatogram data: need at least 2 samples");
    for (std::size_t i = 0; i + 1 < time_s.size(); ++i)
        if (!(time_s[i] < time_s[i + 1]))
            throw ValidationError("chromatogram data: times must be strictly ascending");
}

double conversion_factor(double peak_area, double inlet_concentration,
                         double injection_time, double inlet_pressure,
                         double outlet_pressure) {
    if (!(peak_area > 0.0)) throw std::domain_error("conversion_factor: peak_area must be > 0");
    if (!(inlet_concentration > 0.0))
        throw std::domain_error("conversion_factor: inlet_concentration must be > 0");
    if (!(injection_time > 0.0))
        throw std::domain_error("conversion_factor: injection_time must be > 0");
    if (!(inlet_pressure > 0.0) || !(outlet_pressure > 0.0))
        throw std::domain_error("conversion_factor: pressures must be > 0");
    return peak_area * inlet_pressure /
           (inlet_concentration * injection_time * outlet_pressure);
}

double estimate_baseline(const ExperimentalChromatogram& data, double window_start_s,
                         double window_end_s) {
    data.validate();
    if (!(window_start_s < window_end_s))
        throw ValidationError("baseline: window must have positive width");
    if (window_start_s < data.time_s.front() || window_end_s > data.time_s.back())
        throw ValidationError("baseline: window outside the data range");
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < data.time_s.size(); ++i) {
        if (data.time_s[i] >= window_start_s && data.time_s[i] <= window_end_s) {
            sum += data.intensity_au[i];
            ++count;
        }
    }
    if (count < 10) throw ValidationError("baseline: window contains fewer than 10 samples");
    return sum / static_cast<double>(count);
}

namespace {

/// Scales derived from a candidate (k_a, k_d) with the analyte as its own
/// reference: beta = K_a = K_d = 1 and tau = 1/k_d. The physical trace this
/// produces does not depend on the choice of reference frame.
struct CandidateFrame {
    double tau;
    double L_hat;
    analytic::AnalyteDimensionless params;
    flow::FlowField flow;
};

CandidateFrame make_frame(const FitExperiment& e, double k_a, double k_d) {
    const double u0 = e.conditions.resolve_inlet_velocity(e.geometry.inner_radius);
    const double length_scale =
        u0 * e.geometry.inner_radius / (2.0 * e.geometry.coating_thickness * k_a);
    const double tau = 1.0 / k_d;
    const double L_hat = e.geometry.length / length_scale;
    analytic::AnalyteDimensionless params;
    params.beta = 1.0;
    params.K_a = 1.0;
    params.K_d = 1.0;
    params.Da = length_scale / (u0 * tau);
    params.t1_hat = e.conditions.injection_time / tau;
    return CandidateFrame{
        tau, L_hat, params,
        flow::FlowField(e.conditions.outlet_pressure / e.conditions.inlet_pressure, L_hat)};
}

double model_value(const CandidateFrame& frame, const FitExperiment& e, double t_s,
                   const analytic::QuadratureOptions& opts) {
    const double t_hat = t_s / frame.tau;
    const double c_hat =
        e.regime == Regime::variable_velocity
            ? analytic::concentration_variable_u(frame.params, frame.flow, frame.L_hat,
                                                 t_hat, opts)
            : analytic::concentration_constant_u(frame.params, frame.L_hat, t_hat, opts);
    return e.conversion_factor * e.inlet_concentration * c_hat;
}

// Method-of-moments start: the exchange kernel has mean omega/k_d and
// variance 2 omega/k_d^2 in seconds, so the windowed peak's first two
// moments pin (omega, k_d) and omega pins k_a through the length scale.
// Far from exact (injection width and arrival delay are folded in roughly),
// but it lands inside the basin of attraction, which the log-uniform starts
// cannot guarantee: candidates whose peak misses the window see a flat SSE.
std::optional<std::pair<double, double>> moment_start(
    const FitExperiment& e, std::span<const double> t, std::span<const double> y,
    double baseline_guess) {
    double w_sum = 0.0, t_sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double w = std::max(y[i] - baseline_guess, 0.0);
        w_sum += w;
        t_sum += w * t[i];
    }
    if (!(w_sum > 0.0)) return std::nullopt;
    const double mean = t_sum / w_sum;
    double var = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double w = std::max(y[i] - baseline_guess, 0.0);
        var += w * (t[i] - mean) * (t[i] - mean);
    }
    var /= w_sum;

    const double t1 = e.conditions.injection_time;
    const double kernel_mean = std::max(mean - 0.5 * t1, 1e-6);
    const double kernel_var = std::max(var - t1 * t1 / 12.0, 1e-9);
    const double k_d = 2.0 * kernel_mean / kernel_var;
    const double omega_hat = kernel_mean * k_d;

    const double pl = e.conditions.outlet_pressure / e.conditions.inlet_pressure;
    const double L_hat =
        e.regime == Regime::variable_velocity && pl < 1.0
            ? omega_hat * 3.0 * (1.0 - pl * pl) / (2.0 * (1.0 - pl * pl * pl))
            : omega_hat;
    const double u0 = e.conditions.resolve_inlet_velocity(e.geometry.inner_radius);
    const double k_a = u0 * e.geometry.inner_radius * L_hat /
                       (2.0 * e.geometry.coating_thickness * e.geometry.length);
    if (!(k_a > 0.0) || !(k_d > 0.0) || !std::isfinite(k_a) || !std::isfinite(k_d))
        return std::nullopt;
    return std::make_pair(k_a, k_d);
}

}  // namespace

std::vector<double> model_intensity(const FitExperiment& experiment, double k_a,
                                    double k_d, double baseline_au,
                                    std::span<const double> time_s,
                                    const analytic::QuadratureOptions& opts) {
    if (!(k_a > 0.0) || !(k_d > 0.0))
        throw std::domain_error("model_intensity: k_a and k_d must be > 0");
    const CandidateFrame frame = make_frame(experiment, k_a, k_d);
    std::vector<double> out(time_s.size());
    for (std::size_t i = 0; i < time_s.size(); ++i)
        out[i] = model_value(frame, experiment, time_s[i], opts) + baseline_au;
    return out;
}

FitResult fit_analyte(const ExperimentalChromatogram& data, const AnalyteWindow& window,
                      const FitExperiment& experiment, const FitConfig& config,
                      double reference_K) {
    data.validate();
    if (!(window.t_start_s < window.t_end_s))
        throw ValidationError("fit: window must have positive width");
    if (config.starts < 1) throw ValidationError("fit: need at least one start");

    // Window samples, minus declared overlap exclusions.
    std::vector<double> t_fit, y_fit;
    for (std::size_t i = 0; i < data.time_s.size(); ++i) {
        const double t = data.time_s[i];
        if (t < window.t_start_s || t > window.t_end_s) continue;
        bool excluded = false;
        for (const auto& [lo, hi] : config.exclusions_s)
            if (t >= lo && t <= hi) { excluded = true; break; }
        if (!excluded) {
            t_fit.push_back(t);
            y_fit.push_back(data.intensity_au[i]);
        }
    }
    if (t_fit.size() < 8)
        throw ValidationError("fit: window '" + window.analyte +
                              "' covers fewer than 8 usable samples");

    const bool fixed_baseline = config.baseline_window_s.has_value();
    const double declared_baseline =
        fixed_baseline ? estimate_baseline(data, config.baseline_window_s->first,
                                           config.baseline_window_s->second)
                       : 0.0;

    const double log_ka_lo = std::log10(config.k_a_min), log_ka_hi = std::log10(config.k_a_max);
    const double log_kd_lo = std::log10(config.k_d_min), log_kd_hi = std::log10(config.k_d_max);

    struct Objective {
        const FitExperiment& experiment;
        const FitConfig& config;
        const std::vector<double>& t_fit;
        const std::vector<double>& y_fit;
        bool fixed_baseline;
        double declared_baseline;
        double log_ka_lo, log_ka_hi, log_kd_lo, log_kd_hi;
        mutable int evaluations = 0;
        mutable double last_baseline = 0.0;

        double operator()(const std::vector<double>& logp) const {
            ++evaluations;
            // Out-of-bounds candidates get a graded penalty so the simplex
            // slides back into the box.
            double violation = 0.0;
            violation += std::max(0.0, log_ka_lo - logp[0]);
            violation += std::max(0.0, logp[0] - log_ka_hi);
            violation += std::max(0.0, log_kd_lo - logp[1]);
            violation += std::max(0.0, logp[1] - log_kd_hi);
            if (violation > 0.0) return 1e300 * (1.0 + violation);

            const double k_a = std::pow(10.0, logp[0]);
            const double k_d = std::pow(10.0, logp[1]);
            const CandidateFrame frame = make_frame(experiment, k_a, k_d);
            std::vector<double> model(t_fit.size());
            for (std::size_t i = 0; i < t_fit.size(); ++i)
                model[i] = model_value(frame, experiment, t_fit[i], config.quadrature);

            double baseline = declared_baseline;
            if (!fixed_baseline) {
                // Optimal constant offset in closed form.
                double acc = 0.0;
                for (std::size_t i = 0; i < t_fit.size(); ++i)
                    acc += y_fit[i] - model[i];
                baseline = acc / static_cast<double>(t_fit.size());
            }
            last_baseline = baseline;

            double sse = 0.0;
            for (std::size_t i = 0; i < t_fit.size(); ++i) {
                const double r = model[i] + baseline - y_fit[i];
                sse += r * r;
            }
            return sse;
        }
    };

    // Start points are drawn sequentially from the seeded generator, so the
    // set is independent of how the starts are later scheduled. A
    // data-driven moment estimate is prepended to the random starts.
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uka(log_ka_lo, log_ka_hi);
    std::uniform_real_distribution<double> ukd(log_kd_lo, log_kd_hi);
    std::vector<std::vector<double>> starts;
    starts.reserve(config.starts + 1);
    const double baseline_guess =
        fixed_baseline ? declared_baseline
                       : *std::min_element(y_fit.begin(), y_fit.end());
    if (const auto mom = moment_start(experiment, t_fit, y_fit, baseline_guess)) {
        const double la = std::clamp(std::log10(mom->first), log_ka_lo, log_ka_hi);
        const double ld = std::clamp(std::log10(mom->second), log_kd_lo, log_kd_hi);
        starts.push_back({la, ld});
    }
    for (int s = 0; s < config.starts; ++s) starts.push_back({uka(rng), ukd(rng)});

    struct RunOutcome {
        double sse = std::numeric_limits<double>::infinity();
        std::vector<double> logp;
        double baseline = 0.0;
        bool converged = false;
        int evaluations = 0;
    };
    std::vector<RunOutcome> outcomes(starts.size());

    parallel_for(starts.size(), [&](std::size_t s) {
        Objective objective{experiment, config,      t_fit,     y_fit,
                            fixed_baseline, declared_baseline,
                            log_ka_lo,  log_ka_hi, log_kd_lo, log_kd_hi};
        opt::NelderMeadOptions nm;
        nm.param_tol = config.param_tol;
        nm.max_iterations = config.max_iterations;
        const auto run = opt::nelder_mead(
            [&objective](const std::vector<double>& p) { return objective(p); },
            starts[s], {0.25, 0.25}, nm);
        objective(run.x);  // refresh last_baseline for the winning point
        outcomes[s] = RunOutcome{run.value, run.x, objective.last_baseline,
                                 run.converged, objective.evaluations};
    });

    std::size_t best = 0;
    for (std::size_t s = 1; s < outcomes.size(); ++s)
        if (outcomes[s].sse < outcomes[best].sse) best = s;
    const RunOutcome& winner = outcomes[best];
    if (!std::isfinite(winner.sse))
        throw NumericalError("fit: no start produced a finite objective");

    FitResult result;
    result.analyte = window.analyte;
    result.k_a = std::pow(10.0, winner.logp[0]);
    result.k_d = std::pow(10.0, winner.logp[1]);
    result.sse = winner.sse;
    result.baseline_au = winner.baseline;
    result.converged = winner.converged;
    for (const RunOutcome& o : outcomes) result.evaluations += o.evaluations;

    // Window-local mean for the coefficient of determination.
    double mean = 0.0;
    for (double y : y_fit) mean += y;
    mean /= static_cast<double>(y_fit.size());
    double tss = 0.0;
    for (double y : y_fit) tss += (y - mean) * (y - mean);
    result.r_squared = tss > 0.0 ? 1.0 - result.sse / tss : 0.0;

    result.equilibrium_constant = result.k_a / result.k_d;
    result.equilibrium_loading =
        result.equilibrium_constant * experiment.inlet_concentration;
    result.beta = reference_K > 0.0 ? result.equilibrium_constant / reference_K : 1.0;
    return result;
}

}  // namespace gcsim::calib
