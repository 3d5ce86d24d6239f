#include "numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "errors.hpp"
#include "parallel.hpp"

namespace gcsim::numeric {

namespace {

struct FlowSamples {
    std::vector<double> u, ux, D, Dx;

    FlowSamples(const flow::FlowField& flow, const Grid& grid) {
        const int n = grid.n_nodes();
        u.resize(n);
        ux.resize(n);
        D.resize(n);
        Dx.resize(n);
        for (int j = 0; j < n; ++j) {
            const double x = std::min(j * grid.dx_hat, grid.L_hat);
            u[j] = flow.velocity(x);
            ux[j] = flow.velocity_derivative(x);
            D[j] = flow.diffusion_ratio(x);
            Dx[j] = flow.diffusion_ratio_derivative(x);
        }
    }
};

// Interior update for one analyte. The continuous balance is
//   Da c_t + u_x c + u c_x = Pe^-1 (D_x c_x + D c_xx) - beta (K_a c - K_d q),
// so with forward Euler in time and centered differences in space:
//   c_j' = c_j - (dt/Da) [ u_x,j c_j + (u_j - Pe^-1 D_x,j) c_x,j
//                          - Pe^-1 D_j c_xx,j + beta R_j ],   R_j = K_a c_j - K_d q_j,
//   q_j' = q_j + dt R_j.
// With u = D = 1 this reduces to c_j' = c_j - (dt/Da)(c_x,j - Pe^-1 c_xx,j + beta R_j).
void interior_update(const double* c, const double* q, double* cn, double* qn,
                     int n_cells, double dx, double dt, double dt_over_Da,
                     const analytic::AnalyteDimensionless& p, double pe,
                     const FlowSamples& fs) {
    const double half_inv_dx = 0.5 / dx;
    const double inv_dx2 = 1.0 / (dx * dx);
    const double beta = p.beta, Ka = p.K_a, Kd = p.K_d;
    const double* u = fs.u.data();
    const double* ux = fs.ux.data();
    const double* D = fs.D.data();
    const double* Dx = fs.Dx.data();
    for (int j = 1; j < n_cells; ++j) {
        const double cx = (c[j + 1] - c[j - 1]) * half_inv_dx;
        const double cxx = (c[j + 1] - 2.0 * c[j] + c[j - 1]) * inv_dx2;
        const double reaction = Ka * c[j] - Kd * q[j];
        cn[j] = c[j] - dt_over_Da * (ux[j] * c[j] + (u[j] - pe * Dx[j]) * cx -
                                     pe * D[j] * cxx + beta * reaction);
        qn[j] = q[j] + dt * reaction;
    }
    // Adsorbed phase at the boundary nodes follows the same kinetics.
    qn[0] = q[0] + dt * (Ka * c[0] - Kd * q[0]);
    qn[n_cells] = q[n_cells] + dt * (Ka * c[n_cells] - Kd * q[n_cells]);
}

void boundary_update(double* c, int n_cells, double dx, double u_inlet,
                     double pe, double t_hat, double t1_hat) {
    const double pulse = inlet_pulse(t_hat, t1_hat);
    c[0] = (2.0 * dx * pulse + pe * (4.0 * c[1] - c[2])) /
           (2.0 * dx * u_inlet + 3.0 * pe);
    c[n_cells] = (4.0 * c[n_cells - 1] - c[n_cells - 2]) / 3.0;
}

double trapezoid(const double* v, int n_cells, double dx) {
    double s = 0.5 * (v[0] + v[n_cells]);
    for (int j = 1; j < n_cells; ++j) s += v[j];
    return s * dx;
}

struct AnalyteTrace {
    std::vector<double> outlet;
    std::vector<MassAudit> audits;
    std::vector<std::vector<double>> snapshot_c;
    std::vector<std::vector<double>> snapshot_q;
    std::vector<double> snapshot_t;
    double min_value = 0.0;
};

AnalyteTrace run_single(const Grid& grid, const analytic::AnalyteDimensionless& p,
                        double pe, const FlowSamples& fs,
                        std::span<const double> sample_times,
                        std::span<const double> snapshot_times) {
    const int n = grid.n_cells;
    const double dx = grid.dx_hat;
    const double dt = grid.dt_hat;
    const double dt_over_Da = dt / p.Da;
    const double u_in = fs.u.front();
    const double u_out = fs.u.back();

    std::vector<double> c(n + 1, 0.0), q(n + 1, 0.0);
    std::vector<double> cn(n + 1, 0.0), qn(n + 1, 0.0);

    AnalyteTrace trace;
    trace.outlet.assign(sample_times.size(), 0.0);
    trace.audits.resize(sample_times.size());
    std::size_t next_sample = 0;
    std::size_t next_snapshot = 0;

    double exited = 0.0;
    double prev_outlet_flux = 0.0;
    double min_value = 0.0;

    const long n_steps = static_cast<long>(std::ceil(grid.t_end_hat / dt));
    boundary_update(c.data(), n, dx, u_in, pe, 0.0, p.t1_hat);

    for (long i = 0; i < n_steps; ++i) {
        const double t = i * dt;
        const double t_next = (i + 1) * dt;
        interior_update(c.data(), q.data(), cn.data(), qn.data(), n, dx, dt,
                        dt_over_Da, p, pe, fs);
        boundary_update(cn.data(), n, dx, u_in, pe, t_next, p.t1_hat);
        cn.swap(c);
        qn.swap(q);

        const double outlet_flux = u_out * c[n];
        exited += 0.5 * (prev_outlet_flux + outlet_flux) * dt;
        prev_outlet_flux = outlet_flux;

        // Outlet samples by linear interpolation across the step.
        while (next_sample < sample_times.size() && sample_times[next_sample] <= t_next) {
            const double ts = sample_times[next_sample];
            const double frac = (ts - t) / dt;
            const double prev_val = cn[n];  // pre-swap new buffer holds the old state
            trace.outlet[next_sample] = prev_val + frac * (c[n] - prev_val);

            MassAudit audit;
            audit.t_hat = ts;
            audit.injected = std::min(std::max(ts, 0.0), p.t1_hat);
            audit.mobile = p.Da * trapezoid(c.data(), n, dx);
            audit.stationary = p.beta * trapezoid(q.data(), n, dx);
            audit.exited = exited;
            const double balance = audit.mobile + audit.stationary + audit.exited;
            audit.relative_error = std::abs(balance - audit.injected) /
                                   std::max(audit.injected, 1e-30);
            trace.audits[next_sample] = audit;
            ++next_sample;
        }

        while (next_snapshot < snapshot_times.size() &&
               snapshot_times[next_snapshot] <= t_next) {
            trace.snapshot_c.push_back(c);
            trace.snapshot_q.push_back(q);
            trace.snapshot_t.push_back(t_next);
            ++next_snapshot;
        }

        if ((i & 1023) == 0 || i + 1 == n_steps) {
            double local_min = 0.0;
            bool bad = false;
            for (int j = 0; j <= n; ++j) {
                if (!std::isfinite(c[j])) { bad = true; break; }
                local_min = std::min(local_min, c[j]);
            }
            if (bad)
                throw NumericalError(
                    "fd: solution lost finiteness at t_hat = " + std::to_string(t_next) +
                    "; time step violates the stability bound");
            min_value = std::min(min_value, local_min);
        }
    }

    trace.min_value = min_value;
    return trace;
}

}  // namespace

void Grid::validate() const {
    if (n_cells < 16) throw ValidationError("grid: need at least 16 cells");
    if (!(dx_hat > 0.0) || !(dt_hat > 0.0) || !(L_hat > 0.0) || !(t_end_hat > 0.0))
        throw ValidationError("grid: dx, dt, L and t_end must be > 0");
}

Grid make_grid(int n_cells, double t_end_hat, const flow::FlowField& flow,
               std::span<const analytic::AnalyteDimensionless> params,
               std::span<const double> peclet_inverse, double safety) {
    if (n_cells < 16) throw ValidationError("grid: need at least 16 cells");
    if (params.empty() || params.size() != peclet_inverse.size())
        throw ValidationError("grid: params/peclet list mismatch");
    if (!(safety > 0.0) || !(safety <= 1.0))
        throw ValidationError("grid: safety must lie in (0, 1]");

    Grid grid;
    grid.n_cells = n_cells;
    grid.L_hat = flow.L_hat();
    grid.dx_hat = grid.L_hat / n_cells;
    grid.t_end_hat = t_end_hat;

    const double dx = grid.dx_hat;
    double dt = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= n_cells; ++j) {
        const double x = std::min(j * dx, grid.L_hat);
        const double u = flow.velocity(x);
        const double D = flow.diffusion_ratio(x);
        for (std::size_t i = 0; i < params.size(); ++i) {
            const double Da = params[i].Da;
            const double pe = peclet_inverse[i];
            dt = std::min(dt, Da * dx / u);
            if (pe > 0.0) dt = std::min(dt, Da * dx * dx / (2.0 * pe * D));
            const double damping = 2.0 * pe * D + params[i].beta * params[i].K_a * dx * dx;
            if (damping > 0.0) dt = std::min(dt, Da * damping / (u * u));
        }
    }
    for (std::size_t i = 0; i < params.size(); ++i)
        if (peclet_inverse[i] == 0.0 && params[i].beta * params[i].K_a == 0.0)
            throw ValidationError(
                "grid: explicit centered advection without diffusion or adsorption "
                "has no stable time step");

    grid.dt_hat = safety * dt;
    grid.validate();
    return grid;
}

SimulationResult simulate(const Grid& grid,
                          std::span<const analytic::AnalyteDimensionless> params,
                          std::span<const std::string> names,
                          const flow::FlowField& flow,
                          std::span<const double> peclet_inverse,
                          std::span<const double> sample_times,
                          std::span<const double> snapshot_times) {
    grid.validate();
    if (params.empty()) throw ValidationError("fd: no analytes");
    if (params.size() != peclet_inverse.size())
        throw ValidationError("fd: params/peclet list mismatch");
    if (!names.empty() && names.size() != params.size())
        throw ValidationError("fd: names/params size mismatch");
    for (const analytic::AnalyteDimensionless& p : params) p.validate();
    for (std::size_t k = 0; k + 1 < sample_times.size(); ++k)
        if (!(sample_times[k] < sample_times[k + 1]))
            throw ValidationError("fd: sample times must be strictly ascending");
    if (!sample_times.empty() && sample_times.back() > grid.t_end_hat * (1 + 1e-12))
        throw ValidationError("fd: sample times exceed t_end");

    const FlowSamples fs(flow, grid);

    std::vector<AnalyteTrace> traces(params.size());
    parallel_for(params.size(), [&](std::size_t i) {
        traces[i] = run_single(grid, params[i], peclet_inverse[i], fs,
                               sample_times, snapshot_times);
    });

    SimulationResult result;
    result.outlet.times.assign(sample_times.begin(), sample_times.end());
    result.outlet.time_unit = Chromatogram::TimeUnit::t_hat;
    result.outlet.unit = Unit::dimensionless;
    result.outlet.analytes.assign(names.begin(), names.end());
    result.outlet.values.reserve(params.size());
    result.audits.reserve(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        result.outlet.values.push_back(std::move(traces[i].outlet));
        result.audits.push_back(std::move(traces[i].audits));
        result.max_undershoot =
            std::max(result.max_undershoot, -traces[i].min_value);
    }

    const std::size_t n_snaps = traces.empty() ? 0 : traces[0].snapshot_t.size();
    for (std::size_t s = 0; s < n_snaps; ++s) {
        FieldSnapshot snap;
        snap.t_hat = traces[0].snapshot_t[s];
        snap.x_hat.resize(grid.n_nodes());
        for (int j = 0; j <= grid.n_cells; ++j)
            snap.x_hat[j] = std::min(j * grid.dx_hat, grid.L_hat);
        for (std::size_t i = 0; i < params.size(); ++i) {
            snap.c.push_back(std::move(traces[i].snapshot_c[s]));
            snap.q.push_back(std::move(traces[i].snapshot_q[s]));
        }
        result.snapshots.push_back(std::move(snap));
    }
    return result;
}

void step(FieldSnapshot& state, const Grid& grid,
          std::span<const analytic::AnalyteDimensionless> params,
          const flow::FlowField& flow, std::span<const double> peclet_inverse) {
    grid.validate();
    if (state.c.size() != params.size() || state.q.size() != params.size())
        throw ValidationError("step: state/params size mismatch");
    const FlowSamples fs(flow, grid);
    const double t_next = state.t_hat + grid.dt_hat;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (static_cast<int>(state.c[i].size()) != grid.n_nodes())
            throw ValidationError("step: state does not match the grid");
        std::vector<double> cn(state.c[i].size(), 0.0), qn(state.q[i].size(), 0.0);
        cn[0] = state.c[i][0];
        cn[grid.n_cells] = state.c[i][grid.n_cells];
        interior_update(state.c[i].data(), state.q[i].data(), cn.data(), qn.data(),
                        grid.n_cells, grid.dx_hat, grid.dt_hat,
                        grid.dt_hat / params[i].Da, params[i], peclet_inverse[i], fs);
        boundary_update(cn.data(), grid.n_cells, grid.dx_hat, fs.u.front(),
                        peclet_inverse[i], t_next, params[i].t1_hat);
        state.c[i] = std::move(cn);
        state.q[i] = std::move(qn);
        if (!std::isfinite(state.c[i][grid.n_cells / 2]))
            throw NumericalError("step: solution lost finiteness");
    }
    state.t_hat = t_next;
}

void apply_boundaries(std::span<double> c, const Grid& grid, double u_inlet,
                      double peclet_inverse, double t_hat, double t1_hat) {
    if (static_cast<int>(c.size()) != grid.n_nodes())
        throw ValidationError("apply_boundaries: state does not match the grid");
    boundary_update(c.data(), grid.n_cells, grid.dx_hat, u_inlet, peclet_inverse,
                    t_hat, t1_hat);
}

}  // namespace gcsim::numeric
