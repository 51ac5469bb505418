#ifndef HYDRO_TOPOLOGY_HPP
#define HYDRO_TOPOLOGY_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace hydro {

/**
 * Cascade topology: each plant discharges into at most one downstream plant
 * of strictly higher index, so the routing graph is a forest of in-trees and
 * ascending plant index is already a topological order.
 *
 * Plant indices are 0-based throughout the library; build_topology() accepts
 * the 1-based ids used in configuration files.
 */
class CascadeTopology {
public:
    explicit CascadeTopology(std::size_t n_plants);

    std::size_t n_plants() const { return downstream_.size(); }

    /// Downstream plant of `j`, if any (0-based).
    std::optional<std::size_t> downstream(std::size_t j) const { return downstream_[j]; }

    /// Plants discharging directly into `i` (0-based, sorted ascending).
    const std::vector<std::size_t>& inflow_set(std::size_t i) const { return inflow_sets_[i]; }

    /// Dense routing matrix M with M[i][j] = 1 iff downstream(j) == i.
    /// Strictly lower triangular, at most one nonzero per column.
    std::vector<std::vector<int>> incidence_matrix() const;

private:
    friend CascadeTopology build_topology(std::size_t,
                                          const std::vector<std::pair<int, int>>&);

    std::vector<std::optional<std::size_t>> downstream_;
    std::vector<std::vector<std::size_t>> inflow_sets_;
};

/**
 * Build and validate a topology from 1-based (source, destination) edges.
 * Throws std::invalid_argument on ids out of range, destination <= source,
 * or a source listed with two destinations.
 */
CascadeTopology build_topology(std::size_t n_plants,
                               const std::vector<std::pair<int, int>>& downstream_edges);

}  // namespace hydro

#endif
