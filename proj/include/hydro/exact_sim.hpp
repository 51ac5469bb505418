#ifndef HYDRO_EXACT_SIM_HPP
#define HYDRO_EXACT_SIM_HPP

#include <vector>

#include "hydro/model.hpp"
#include "hydro/topology.hpp"

namespace hydro {

/// One constant-rate piece of the exact solution: on [t_begin, t_end) every
/// volume is affine and every spill constant.
struct ExactSegment {
    double t_begin = 0.0;
    double t_end = 0.0;
    std::vector<double> V_begin;  // volumes at t_begin
    std::vector<double> rate;     // dV/dt on the segment
    std::vector<double> spill;    // spill rates on the segment
};

struct ExactRun {
    Trajectory trajectory;
    std::vector<ExactSegment> segments;

    explicit ExactRun(const Trajectory& t) : trajectory(t) {}
};

/**
 * Integrate the complementarity limit system
 *   dV = A - u - s + M(u+s),   s >= 0,  V <= V_max,  s(V - V_max) = 0
 * exactly: plants are processed in ascending index (topological) order, a
 * plant pinned at V_max spills its net inflow while that inflow stays
 * nonnegative, and boundary arrival times are located by root finding on
 * V_i - V_i^max between upstream events. V0 must satisfy V0 <= V_max.
 */
ExactRun simulate_exact_detailed(const CascadeTopology& topo, const CascadeParams& params,
                                 const ControlTrajectory& u, const std::vector<double>& V0);

/// Trajectory-only convenience wrapper.
Trajectory simulate_exact(const CascadeTopology& topo, const CascadeParams& params,
                          const ControlTrajectory& u, const std::vector<double>& V0);

}  // namespace hydro

#endif
