#include "hydro/exact_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hydro/detail/rootfind.hpp"

namespace hydro {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

ExactRun simulate_exact_detailed(const CascadeTopology& topo, const CascadeParams& params,
                                 const ControlTrajectory& u, const std::vector<double>& V0) {
    const std::size_t n = params.n_plants();
    if (V0.size() != n) throw std::invalid_argument("simulate_exact: V0 size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(V0[i]))
            throw std::invalid_argument("simulate_exact: V0 is not finite");
        if (V0[i] > params.plant(i).V_max)
            throw std::invalid_argument("simulate_exact: V0 exceeds V_max for plant " +
                                        std::to_string(i + 1));
    }

    const TimeGrid& grid = u.grid;
    ExactRun run{Trajectory(grid, n)};
    Trajectory& traj = run.trajectory;
    traj.V[0] = V0;

    const double event_tol = grid.horizon() * 1e-10;
    std::vector<double> V = V0;
    std::vector<double> spill(n), rate(n), spilled(n);

    for (std::size_t k = 0; k < grid.n_cells(); ++k) {
        const double cell_end = grid.node(k + 1);
        double t = grid.node(k);
        std::fill(spilled.begin(), spilled.end(), 0.0);

        const std::size_t max_events = 64 * (n + 2) * (n + 2);
        std::size_t events = 0;
        while (t < cell_end) {
            if (++events > max_events)
                throw std::runtime_error("simulate_exact: event location failed near t = " +
                                         std::to_string(t));
            // Regime pass in topological order: upstream spills feed downstream.
            for (std::size_t i = 0; i < n; ++i) {
                const auto& p = params.plant(i);
                double inflow = p.A - u.u[k][i];
                for (std::size_t j : topo.inflow_set(i)) inflow += u.u[k][j] + spill[j];
                const double snap = 1e-12 * (1.0 + std::abs(p.V_max));
                if (V[i] >= p.V_max - snap && inflow >= 0.0) {
                    V[i] = p.V_max;  // pinned arc: spill carries the whole net inflow
                    spill[i] = inflow;
                    rate[i] = 0.0;
                } else {
                    spill[i] = 0.0;
                    rate[i] = inflow;
                }
            }
            if (!all_finite(rate))
                throw std::runtime_error("simulate_exact: non-finite state at t = " +
                                         std::to_string(t));

            // Earliest boundary arrival among rising interior plants.
            double t_next = cell_end;
            for (std::size_t i = 0; i < n; ++i) {
                const auto& p = params.plant(i);
                if (rate[i] <= 0.0 || V[i] >= p.V_max) continue;
                const double gap_end = V[i] + rate[i] * (t_next - t) - p.V_max;
                if (gap_end < 0.0) continue;  // no arrival before t_next
                const double t0 = t, V0i = V[i], ri = rate[i], VM = p.V_max;
                t_next = detail::hybrid_root(
                    [&](double tau) { return V0i + ri * (tau - t0) - VM; }, t, t_next,
                    V0i - VM, gap_end, event_tol);
            }

            ExactSegment seg;
            seg.t_begin = t;
            seg.t_end = t_next;
            seg.V_begin = V;
            seg.rate = rate;
            seg.spill = spill;
            run.segments.push_back(std::move(seg));

            const double dt_seg = t_next - t;
            for (std::size_t i = 0; i < n; ++i) {
                V[i] += rate[i] * dt_seg;
                const double VM = params.plant(i).V_max;
                const double snap = 1e-12 * (1.0 + std::abs(VM));
                if (V[i] > VM - snap && rate[i] > 0.0) V[i] = VM;  // land exactly on the bound
                if (V[i] > VM) V[i] = VM;                          // shed rounding excess
                spilled[i] += spill[i] * dt_seg;
            }
            t = t_next;
        }

        traj.V[k + 1] = V;
        for (std::size_t i = 0; i < n; ++i) traj.s[k][i] = spilled[i] / grid.dt();
    }
    return run;
}

Trajectory simulate_exact(const CascadeTopology& topo, const CascadeParams& params,
                          const ControlTrajectory& u, const std::vector<double>& V0) {
    return simulate_exact_detailed(topo, params, u, V0).trajectory;
}

}  // namespace hydro
