#include "hydro/penalty_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hydro {

namespace {

constexpr double kUnderflowExponent = -745.0;  // exp() underflows to 0 below this

struct SpillEval {
    double s;       // spill rate
    double ds_dv;   // derivative w.r.t. volume
};

SpillEval eval_spill(std::size_t i, double v, const CascadeParams& params,
                     const PenaltyConfig& cfg) {
    const double g = cfg.effective_gamma(i);
    const double z = std::log(g) + g * (v - params.plant(i).V_max);
    if (z < kUnderflowExponent) return {0.0, 0.0};
    if (z > cfg.max_exponent_clamp) {
        const double cap = std::exp(cfg.max_exponent_clamp);
        return {cap * (1.0 + (z - cfg.max_exponent_clamp)), g * cap};
    }
    const double s = std::exp(z);
    return {s, g * s};
}

}  // namespace

void PenaltyConfig::validate(std::size_t n_plants) const {
    if (!(gamma > 1.0)) throw std::invalid_argument("penalty: gamma must exceed 1");
    if (!(max_exponent_clamp >= 0.0))
        throw std::invalid_argument("penalty: exponent clamp must be nonnegative");
    if (!(integrator.rel_tol > 0.0) || !(integrator.abs_tol > 0.0))
        throw std::invalid_argument("penalty: integrator tolerances must be positive");
    if (!gamma_override.empty()) {
        if (gamma_override.size() != n_plants)
            throw std::invalid_argument("penalty: gamma override needs one value per plant");
        for (std::size_t i = 0; i < gamma_override.size(); ++i) {
            if (!(gamma_override[i] > 1.0))
                throw std::invalid_argument("penalty: gamma override values must exceed 1");
            if (i > 0 && !(gamma_override[i] > gamma_override[i - 1]))
                throw std::invalid_argument(
                    "penalty: gamma override must be strictly increasing across plants");
        }
    }
}

double PenaltyConfig::effective_gamma(std::size_t plant) const {
    if (!gamma_override.empty()) return gamma_override[plant];
    if (!per_plant_exponent) return gamma;
    return std::pow(gamma, static_cast<double>(plant + 1));
}

double penalty_spill(std::size_t i, double v, const CascadeParams& params,
                     const PenaltyConfig& cfg) {
    return eval_spill(i, v, params, cfg).s;
}

double penalty_spill_derivative(std::size_t i, double v, const CascadeParams& params,
                                const PenaltyConfig& cfg) {
    return eval_spill(i, v, params, cfg).ds_dv;
}

namespace {

/// Right-hand side A - u - s(V) + M(u + s(V)) and the spill derivatives
/// that define the (lower-triangular) Jacobian.
class PenaltyOde {
public:
    PenaltyOde(const CascadeTopology& topo, const CascadeParams& params,
               const PenaltyConfig& cfg, const std::vector<double>& u_cell)
        : topo_(topo), params_(params), cfg_(cfg), u_(u_cell) {}

    void rates(const std::vector<double>& V, std::vector<double>& f,
               std::vector<double>& dspill) const {
        const std::size_t n = V.size();
        for (std::size_t i = 0; i < n; ++i) {
            const SpillEval sp = eval_spill(i, V[i], params_, cfg_);
            f[i] = params_.plant(i).A - u_[i] - sp.s;
            dspill[i] = sp.ds_dv;
            spill_scratch_[i] = sp.s;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j : topo_.inflow_set(i)) f[i] += u_[j] + spill_scratch_[j];
    }

    /// Solve (I - hd J) x = b in place; J = (M - I) diag(dspill) is lower
    /// triangular, so a single forward pass in plant order suffices.
    void solve_w(double hd, const std::vector<double>& dspill, std::vector<double>& x) const {
        const std::size_t n = x.size();
        for (std::size_t i = 0; i < n; ++i) {
            double rhs = x[i];
            for (std::size_t j : topo_.inflow_set(i)) rhs += hd * dspill[j] * x[j];
            x[i] = rhs / (1.0 + hd * dspill[i]);
        }
    }

    void resize_scratch(std::size_t n) { spill_scratch_.assign(n, 0.0); }

private:
    const CascadeTopology& topo_;
    const CascadeParams& params_;
    const PenaltyConfig& cfg_;
    const std::vector<double>& u_;
    mutable std::vector<double> spill_scratch_;
};

}  // namespace

Trajectory simulate_penalty(const CascadeTopology& topo, const CascadeParams& params,
                            const ControlTrajectory& u, const std::vector<double>& V0,
                            const PenaltyConfig& cfg) {
    const std::size_t n = params.n_plants();
    cfg.validate(n);
    if (V0.size() != n) throw std::invalid_argument("simulate_penalty: V0 size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (!(V0[i] <= params.plant(i).V_max))
            throw std::invalid_argument("simulate_penalty: V0 exceeds V_max for plant " +
                                        std::to_string(i + 1));

    const TimeGrid& grid = u.grid;
    Trajectory traj(grid, n);
    traj.V[0] = V0;

    const double d = 1.0 / (2.0 + std::sqrt(2.0));
    const double e32 = 6.0 + std::sqrt(2.0);
    const double min_step =
        cfg.integrator.min_step > 0.0 ? cfg.integrator.min_step : grid.horizon() * 1e-14;
    const double max_step = cfg.integrator.max_step > 0.0
                                ? std::min(cfg.integrator.max_step, grid.dt())
                                : grid.dt();

    std::vector<double> V = V0;
    std::vector<double> f0(n), f1(n), f2(n), dsp(n), dsp_tmp(n);
    std::vector<double> k1(n), k2(n), k3(n), ytmp(n), ynew(n), err(n);
    double h = max_step;

    for (std::size_t k = 0; k < grid.n_cells(); ++k) {
        PenaltyOde ode(topo, params, cfg, u.u[k]);
        ode.resize_scratch(n);
        double t = grid.node(k);
        const double cell_end = grid.node(k + 1);

        while (t < cell_end) {
            h = std::min({h, max_step, cell_end - t});
            ode.rates(V, f0, dsp);

            bool accepted = false;
            while (!accepted) {
                const double hd = h * d;
                // Rosenbrock(2,3) pair of Shampine-Reichelt type; the system
                // is autonomous inside a cell, so no time-derivative stage.
                k1 = f0;
                ode.solve_w(hd, dsp, k1);
                for (std::size_t i = 0; i < n; ++i) ytmp[i] = V[i] + 0.5 * h * k1[i];
                ode.rates(ytmp, f1, dsp_tmp);
                for (std::size_t i = 0; i < n; ++i) k2[i] = f1[i] - k1[i];
                ode.solve_w(hd, dsp, k2);
                for (std::size_t i = 0; i < n; ++i) k2[i] += k1[i];
                for (std::size_t i = 0; i < n; ++i) ynew[i] = V[i] + h * k2[i];
                ode.rates(ynew, f2, dsp_tmp);
                for (std::size_t i = 0; i < n; ++i)
                    k3[i] = f2[i] - e32 * (k2[i] - f1[i]) - 2.0 * (k1[i] - f0[i]);
                ode.solve_w(hd, dsp, k3);

                double err_norm = 0.0;
                std::size_t worst_plant = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    err[i] = (h / 6.0) * (k1[i] - 2.0 * k2[i] + k3[i]);
                    const double scale = cfg.integrator.abs_tol +
                                         cfg.integrator.rel_tol *
                                             std::max(std::abs(V[i]), std::abs(ynew[i]));
                    const double e = std::abs(err[i]) / scale;
                    if (e > err_norm) {
                        err_norm = e;
                        worst_plant = i;
                    }
                    if (!std::isfinite(ynew[i]))
                        throw std::runtime_error("simulate_penalty: non-finite state at t = " +
                                                 std::to_string(t));
                }

                if (err_norm <= 1.0) {
                    accepted = true;
                    t += h;
                    V = ynew;
                    const double grow = err_norm > 0.0
                                            ? 0.9 * std::pow(err_norm, -1.0 / 3.0)
                                            : 5.0;
                    h *= std::clamp(grow, 0.2, 5.0);
                } else {
                    h *= std::max(0.2, 0.9 * std::pow(err_norm, -1.0 / 3.0));
                    if (h < min_step)
                        throw std::runtime_error(
                            "simulate_penalty: step size underflow at t = " + std::to_string(t) +
                            " (plant " + std::to_string(worst_plant + 1) + ")");
                }
            }
        }

        traj.V[k + 1] = V;
        // Cell-average spills via the water-balance identity, plant order.
        for (std::size_t i = 0; i < n; ++i) {
            double avg = params.plant(i).A - u.u[k][i] -
                         (traj.V[k + 1][i] - traj.V[k][i]) / grid.dt();
            for (std::size_t j : topo.inflow_set(i)) avg += u.u[k][j] + traj.s[k][j];
            traj.s[k][i] = std::max(0.0, avg);
        }
    }
    return traj;
}

SweepReport gamma_sweep(const CascadeTopology& topo, const CascadeParams& params,
                        const ControlTrajectory& u, const std::vector<double>& V0,
                        const std::vector<double>& gammas, const PenaltyConfig& cfg) {
    if (gammas.empty()) throw std::invalid_argument("gamma_sweep: need at least one gamma");
    for (std::size_t k = 1; k < gammas.size(); ++k)
        if (!(gammas[k] > gammas[k - 1]))
            throw std::invalid_argument("gamma_sweep: gammas must be strictly increasing");

    SweepReport report;
    report.gammas = gammas;
    report.overshoot = -std::numeric_limits<double>::infinity();

    const Trajectory exact = simulate_exact(topo, params, u, V0);

    const std::size_t n = params.n_plants();
    for (double g : gammas) {
        PenaltyConfig run_cfg = cfg;
        run_cfg.gamma = g;
        const Trajectory pen = simulate_penalty(topo, params, u, V0, run_cfg);
        double sup = 0.0;
        for (std::size_t k = 0; k < pen.V.size(); ++k)
            for (std::size_t i = 0; i < n; ++i)
                sup = std::max(sup, std::abs(pen.V[k][i] - exact.V[k][i]));
        double l2 = 0.0;
        for (std::size_t k = 0; k < pen.s.size(); ++k)
            for (std::size_t i = 0; i < n; ++i) {
                const double dsp = pen.s[k][i] - exact.s[k][i];
                l2 += dsp * dsp * u.grid.dt();
            }
        report.sup_errors.push_back(sup);
        report.spill_l2_errors.push_back(std::sqrt(l2));
        for (std::size_t k = 0; k < pen.V.size(); ++k)
            for (std::size_t i = 0; i < n; ++i)
                report.overshoot =
                    std::max(report.overshoot, pen.V[k][i] - params.plant(i).V_max);
    }
    return report;
}

}  // namespace hydro
