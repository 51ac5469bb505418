#include "hydro/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hydro {

CascadeParams::CascadeParams(const CascadeTopology& topo, std::vector<PlantParams> plants)
    : plants_(std::move(plants)) {
    if (plants_.size() != topo.n_plants())
        throw std::invalid_argument("params: plant count does not match topology");
    for (std::size_t i = 0; i < plants_.size(); ++i) {
        const auto& p = plants_[i];
        const std::string tag = "params: plant " + std::to_string(i + 1) + ": ";
        if (!(p.V_min < p.V_max)) throw std::invalid_argument(tag + "requires V_min < V_max");
        if (!(p.u_min <= p.u_max)) throw std::invalid_argument(tag + "requires u_min <= u_max");
        if (!(p.S > 0.0)) throw std::invalid_argument(tag + "requires S > 0");
        if (!(p.A >= 0.0)) throw std::invalid_argument(tag + "requires A >= 0");
    }
}

PriceSignal::PriceSignal(std::vector<double> breakpoints, std::vector<double> values,
                         double horizon)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), horizon_(horizon) {
    if (breakpoints_.empty() || breakpoints_.size() != values_.size())
        throw std::invalid_argument("price: need one value per breakpoint");
    if (breakpoints_.front() != 0.0)
        throw std::invalid_argument("price: first breakpoint must be t = 0");
    for (std::size_t k = 1; k < breakpoints_.size(); ++k)
        if (!(breakpoints_[k] > breakpoints_[k - 1]))
            throw std::invalid_argument("price: breakpoints must be strictly increasing");
    if (!(horizon_ > breakpoints_.back()))
        throw std::invalid_argument("price: last breakpoint must lie before the horizon");
}

double PriceSignal::value(double t) const {
    // last interval whose start is <= t; right-open lookup
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
    return values_[idx == 0 ? 0 : idx - 1];
}

TimeGrid::TimeGrid(double horizon, std::size_t n_cells) : horizon_(horizon), n_cells_(n_cells) {
    if (!(horizon > 0.0)) throw std::invalid_argument("grid: horizon must be positive");
    if (n_cells < 1) throw std::invalid_argument("grid: need at least one cell");
}

std::size_t TimeGrid::cell_of(double t) const {
    if (t <= 0.0) return 0;
    auto k = static_cast<std::size_t>(t / dt());
    return std::min(k, n_cells_ - 1);
}

void require_price_alignment(const TimeGrid& grid, const PriceSignal& price) {
    const double tol = 1e-12 * grid.horizon();
    for (double b : price.breakpoints()) {
        const double nearest = std::round(b / grid.dt()) * grid.dt();
        if (std::abs(b - nearest) > tol)
            throw std::invalid_argument("grid: price breakpoint t = " + std::to_string(b) +
                                        " is not a grid node; refine N");
    }
}

double head(std::size_t j, const std::vector<double>& V, const CascadeParams& params,
            const CascadeTopology& topo) {
    const auto& pj = params.plant(j);
    double value = V[j] / pj.S + pj.h;
    if (auto d = topo.downstream(j)) {
        const auto& pd = params.plant(*d);
        value -= V[*d] / pd.S + pd.h;
    }
    return value;
}

double objective(const ControlTrajectory& u, const Trajectory& traj, const PriceSignal& price,
                 const CascadeParams& params, const CascadeTopology& topo) {
    if (!(u.grid == traj.grid)) throw std::invalid_argument("objective: incompatible grids");
    require_price_alignment(u.grid, price);
    const std::size_t n = params.n_plants();
    const double dt = u.grid.dt();
    std::vector<double> mid(n);
    double total = 0.0;
    for (std::size_t k = 0; k < u.grid.n_cells(); ++k) {
        // midpoint of the piecewise-linear dense output; exact for affine V
        for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (traj.V[k][i] + traj.V[k + 1][i]);
        const double c = price.value(u.grid.node(k));
        double cell = 0.0;
        for (std::size_t j = 0; j < n; ++j) cell += u.u[k][j] * head(j, mid, params, topo);
        total += c * cell * dt;
    }
    return total;
}

double water_balance_residual(const Trajectory& traj, const ControlTrajectory& u,
                              const CascadeParams& params, const CascadeTopology& topo) {
    if (!(u.grid == traj.grid)) throw std::invalid_argument("water balance: incompatible grids");
    const std::size_t n = params.n_plants();
    const double dt = u.grid.dt();
    std::vector<double> acc(n);  // V(0) + cumulative inflow integral
    for (std::size_t i = 0; i < n; ++i) acc[i] = traj.V[0][i];
    double worst = 0.0;
    for (std::size_t k = 0; k < u.grid.n_cells(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            double rate = params.plant(i).A - u.u[k][i] - traj.s[k][i];
            for (std::size_t j : topo.inflow_set(i)) rate += u.u[k][j] + traj.s[k][j];
            acc[i] += rate * dt;
            worst = std::max(worst, std::abs(traj.V[k + 1][i] - acc[i]));
        }
    }
    return worst;
}

}  // namespace hydro
