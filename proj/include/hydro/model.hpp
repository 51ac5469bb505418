#ifndef HYDRO_MODEL_HPP
#define HYDRO_MODEL_HPP

#include <cstddef>
#include <vector>

#include "hydro/topology.hpp"

namespace hydro {

/// Physical constants of one reservoir/plant. Units are consistent and
/// dimensionless (unit gravity, full conversion, cylindrical reservoir).
struct PlantParams {
    double A = 0.0;      // incoming flow rate
    double V_min = 0.0;  // volume bounds
    double V_max = 1.0;
    double u_min = 0.0;  // turbine/pump flow bounds (u_min < 0 = reversible)
    double u_max = 0.0;
    double h = 0.0;      // base elevation
    double S = 1.0;      // base area
};

/// Per-plant parameters for the whole cascade, validated against the topology.
class CascadeParams {
public:
    CascadeParams(const CascadeTopology& topo, std::vector<PlantParams> plants);

    std::size_t n_plants() const { return plants_.size(); }
    const PlantParams& plant(std::size_t i) const { return plants_[i]; }
    const std::vector<PlantParams>& plants() const { return plants_; }

private:
    std::vector<PlantParams> plants_;
};

/**
 * Piecewise-constant energy price on right-open intervals
 * [t_k, t_{k+1}); the value at t = T is taken from the last interval
 * (a single point does not affect any integral).
 */
class PriceSignal {
public:
    PriceSignal(std::vector<double> breakpoints, std::vector<double> values, double horizon);

    double value(double t) const;
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    double horizon() const { return horizon_; }

private:
    std::vector<double> breakpoints_;  // strictly increasing, starts at 0
    std::vector<double> values_;       // one per interval
    double horizon_;
};

/// Uniform time grid with N cells on [0, T].
class TimeGrid {
public:
    TimeGrid(double horizon, std::size_t n_cells);

    double horizon() const { return horizon_; }
    std::size_t n_cells() const { return n_cells_; }
    std::size_t n_nodes() const { return n_cells_ + 1; }
    double dt() const { return horizon_ / static_cast<double>(n_cells_); }
    double node(std::size_t k) const { return dt() * static_cast<double>(k); }

    /// Cell containing time t (right-open; t == T maps to the last cell).
    std::size_t cell_of(double t) const;

    bool operator==(const TimeGrid& o) const {
        return horizon_ == o.horizon_ && n_cells_ == o.n_cells_;
    }

private:
    double horizon_;
    std::size_t n_cells_;
};

/// Throws unless every price breakpoint coincides with a grid node.
void require_price_alignment(const TimeGrid& grid, const PriceSignal& price);

/// Piecewise-constant control, one vector of plant flows per grid cell.
struct ControlTrajectory {
    TimeGrid grid;
    std::vector<std::vector<double>> u;  // [cell][plant]

    ControlTrajectory(const TimeGrid& g, std::size_t n_plants, double fill = 0.0)
        : grid(g), u(g.n_cells(), std::vector<double>(n_plants, fill)) {}
};

/// Simulated state: volumes at grid nodes (piecewise-linear dense output)
/// and cell-averaged spill rates.
struct Trajectory {
    TimeGrid grid;
    std::vector<std::vector<double>> V;  // [node][plant]
    std::vector<std::vector<double>> s;  // [cell][plant], cell averages

    Trajectory(const TimeGrid& g, std::size_t n_plants)
        : grid(g),
          V(g.n_nodes(), std::vector<double>(n_plants, 0.0)),
          s(g.n_cells(), std::vector<double>(n_plants, 0.0)) {}
};

/**
 * Hydraulic head of plant j at volume state V:
 *   V_j/S_j + h_j - V_d/S_d - h_d  for downstream plant d,
 * with the downstream terms omitted when plant j is terminal.
 */
double head(std::size_t j, const std::vector<double>& V, const CascadeParams& params,
            const CascadeTopology& topo);

/**
 * Financial return sum_j int_0^T c(t) u_j(t) head_j(V(t)) dt, integrated
 * cell by cell on the piecewise-linear dense output (exact for the
 * integrands produced by the simulators, whose V is affine within cells).
 */
double objective(const ControlTrajectory& u, const Trajectory& traj, const PriceSignal& price,
                 const CascadeParams& params, const CascadeTopology& topo);

/**
 * Integrator self-check: max over grid nodes of the water-balance defect
 *   | V(t_k) - V(0) - int_0^{t_k} (A - u - s + M(u+s)) dt |_inf
 * with the cell-averaged spills.
 */
double water_balance_residual(const Trajectory& traj, const ControlTrajectory& u,
                              const CascadeParams& params, const CascadeTopology& topo);

}  // namespace hydro

#endif
