#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "../common/btex.hpp"
#include "calib.hpp"
#include "errors.hpp"
#include "scales.hpp"

using namespace gcsim;
using calib::ExperimentalChromatogram;

namespace {

// Per-ppb concentration at the lab inlet state.
double c0_per_ppb() { return scales::ppb_to_molar(1.0, 353.15, 4.01e5); }

calib::FitExperiment lab_experiment(double c0, double f) {
    calib::FitExperiment e;
    e.geometry = btex::geometry();
    e.conditions = btex::conditions();
    e.inlet_concentration = c0;
    e.conversion_factor = f;
    e.regime = Regime::variable_velocity;
    return e;
}

}  // namespace

TEST_CASE("conversion factors reproduce the published calibration") {
    const double per_ppb = c0_per_ppb();
    for (std::size_t i = 0; i < btex::kCalibrationAuSPerPpb.size(); ++i) {
        const double f = calib::conversion_factor(btex::kCalibrationAuSPerPpb[i],
                                                  per_ppb, 4.0, 4.01e5, 1.013e5);
        CHECK(f == doctest::Approx(btex::kConversionFactor[i]).epsilon(0.005));
    }
}

TEST_CASE("conversion factor is linear and scale-invariant") {
    const double f = calib::conversion_factor(25.82, 1.366e-7, 4.0, 4.01e5, 1.013e5);
    CHECK(calib::conversion_factor(2 * 25.82, 1.366e-7, 4.0, 4.01e5, 1.013e5) ==
          doctest::Approx(2 * f).epsilon(1e-14));
    // (c0, A) -> (lambda c0, lambda A) leaves f unchanged.
    const double lambda = 3.7;
    CHECK(calib::conversion_factor(lambda * 25.82, lambda * 1.366e-7, 4.0, 4.01e5,
                                   1.013e5) == doctest::Approx(f).epsilon(1e-14));
    CHECK_THROWS_AS(calib::conversion_factor(-1.0, 1.0, 1.0, 1.0, 1.0),
                    std::domain_error);
}

TEST_CASE("baseline estimation") {
    ExperimentalChromatogram data;
    for (int i = 0; i <= 400; ++i) {
        data.time_s.push_back(i);
        data.intensity_au.push_back(5.0);
    }
    CHECK(calib::estimate_baseline(data, 100.0, 200.0) == doctest::Approx(5.0));

    // Linear ramp a + b t averages to a + b (t1 + t2)/2 when the samples
    // cover the window symmetrically.
    ExperimentalChromatogram ramp;
    const double a = 2.0, b = 0.5;
    for (int i = 0; i <= 400; ++i) {
        ramp.time_s.push_back(i);
        ramp.intensity_au.push_back(a + b * i);
    }
    CHECK(calib::estimate_baseline(ramp, 100.0, 200.0) ==
          doctest::Approx(a + b * 150.0).epsilon(1e-12));

    CHECK_THROWS_AS(calib::estimate_baseline(data, 390.0, 500.0), ValidationError);
    CHECK_THROWS_AS(calib::estimate_baseline(data, 100.0, 100.5), ValidationError);
}

TEST_CASE("model intensity endpoints") {
    const double f = 1.871e8;
    const double c0 = 2.732e-6;
    const auto experiment = lab_experiment(c0, f);

    // Long before any signal can arrive the model is the baseline alone.
    const std::vector<double> early{1.0, 5.0, 10.0};
    const auto at_baseline =
        calib::model_intensity(experiment, 1.0168e4, 14.291, 3935.4, early);
    for (double v : at_baseline) CHECK(v == doctest::Approx(3935.4));

    // Identity calibration returns the scaled concentration itself.
    auto identity = lab_experiment(1.0, 1.0);
    const std::vector<double> t{550.0};
    const auto c_hat = calib::model_intensity(identity, 1.0168e4, 14.291, 0.0, t);
    CHECK(c_hat[0] > 0.0);
    CHECK(c_hat[0] < 1.0);

    CHECK_THROWS_AS(calib::model_intensity(experiment, -1.0, 14.0, 0.0, t),
                    std::domain_error);
}

TEST_CASE("noise-free synthetic data is recovered almost exactly") {
    const double k_a_true = 1.0e4, k_d_true = 14.0;
    const double f = 1.871e8, c0 = 2.732e-6, baseline = 500.0;
    const auto experiment = lab_experiment(c0, f);

    ExperimentalChromatogram data;
    for (int i = 0; i <= 280; ++i) data.time_s.push_back(460.0 + i);
    data.intensity_au =
        calib::model_intensity(experiment, k_a_true, k_d_true, baseline, data.time_s);

    calib::AnalyteWindow window{"synthetic", 460.0, 740.0};
    calib::FitConfig config;
    config.starts = 8;
    config.baseline_window_s = {{460.0, 480.0}};

    const auto fit = calib::fit_analyte(data, window, experiment, config);
    CHECK(fit.converged);
    CHECK(fit.k_a == doctest::Approx(k_a_true).epsilon(0.005));
    CHECK(fit.k_d == doctest::Approx(k_d_true).epsilon(0.005));
    CHECK(fit.baseline_au == doctest::Approx(baseline).epsilon(1e-6));

    double sum_sq = 0.0;
    for (double y : data.intensity_au) sum_sq += y * y;
    CHECK(fit.sse <= 1e-6 * sum_sq);
    CHECK(fit.r_squared > 0.999);
    CHECK(fit.equilibrium_constant == doctest::Approx(k_a_true / k_d_true).epsilon(0.01));
}

TEST_CASE("fit without a declared flat window estimates the offset itself") {
    const double k_a_true = 1.0e4, k_d_true = 14.0, baseline = 750.0;
    const auto experiment = lab_experiment(2.732e-6, 1.871e8);

    ExperimentalChromatogram data;
    for (int i = 0; i <= 240; ++i) data.time_s.push_back(480.0 + i);
    data.intensity_au =
        calib::model_intensity(experiment, k_a_true, k_d_true, baseline, data.time_s);

    calib::AnalyteWindow window{"synthetic", 480.0, 720.0};
    calib::FitConfig config;
    config.starts = 8;  // no baseline window declared

    const auto fit = calib::fit_analyte(data, window, experiment, config);
    CHECK(fit.k_a == doctest::Approx(k_a_true).epsilon(0.01));
    CHECK(fit.k_d == doctest::Approx(k_d_true).epsilon(0.01));
    CHECK(fit.baseline_au == doctest::Approx(baseline).epsilon(0.001));
}

TEST_CASE("fits are deterministic for a fixed seed") {
    const auto experiment = lab_experiment(2.732e-6, 1.871e8);
    ExperimentalChromatogram data;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.01);
    for (int i = 0; i <= 200; ++i) data.time_s.push_back(470.0 + 1.3 * i);
    data.intensity_au =
        calib::model_intensity(experiment, 1.0e4, 14.0, 600.0, data.time_s);
    for (double& y : data.intensity_au) y *= 1.0 + noise(rng);

    calib::AnalyteWindow window{"synthetic", 470.0, 730.0};
    calib::FitConfig config;
    config.starts = 6;
    config.seed = 424242;
    config.baseline_window_s = {{470.0, 495.0}};

    const auto first = calib::fit_analyte(data, window, experiment, config);
    const auto second = calib::fit_analyte(data, window, experiment, config);
    CHECK(first.k_a == second.k_a);  // bitwise
    CHECK(first.k_d == second.k_d);
    CHECK(first.sse == second.sse);
}

TEST_CASE("window exclusions drop the flagged samples") {
    const auto experiment = lab_experiment(2.732e-6, 1.871e8);
    ExperimentalChromatogram data;
    for (int i = 0; i <= 100; ++i) data.time_s.push_back(500.0 + i);
    data.intensity_au =
        calib::model_intensity(experiment, 1.0e4, 14.0, 0.0, data.time_s);
    // Corrupt a stretch, then exclude it: the fit should not notice.
    for (int i = 40; i <= 60; ++i) data.intensity_au[i] += 1e5;

    calib::AnalyteWindow window{"synthetic", 500.0, 600.0};
    calib::FitConfig config;
    config.starts = 6;
    config.exclusions_s.emplace_back(539.5, 560.5);
    config.baseline_window_s = {{500.0, 515.0}};

    const auto fit = calib::fit_analyte(data, window, experiment, config);
    CHECK(fit.k_a == doctest::Approx(1.0e4).epsilon(0.02));
    CHECK(fit.k_d == doctest::Approx(14.0).epsilon(0.02));
}

TEST_CASE("data validation") {
    ExperimentalChromatogram data;
    data.time_s = {1.0, 1.0, 2.0};
    data.intensity_au = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(data.validate(), ValidationError);
    data.time_s = {1.0, 2.0};
    CHECK_THROWS_AS(data.validate(), ValidationError);  // length mismatch
}
