#include "hydro/topology.hpp"

#include <stdexcept>
#include <string>

namespace hydro {

CascadeTopology::CascadeTopology(std::size_t n_plants)
    : downstream_(n_plants), inflow_sets_(n_plants) {
    if (n_plants == 0) throw std::invalid_argument("topology: need at least one plant");
}

std::vector<std::vector<int>> CascadeTopology::incidence_matrix() const {
    const std::size_t n = n_plants();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        if (downstream_[j]) m[*downstream_[j]][j] = 1;
    return m;
}

CascadeTopology build_topology(std::size_t n_plants,
                               const std::vector<std::pair<int, int>>& downstream_edges) {
    CascadeTopology topo(n_plants);
    for (const auto& [src, dst] : downstream_edges) {
        if (src < 1 || static_cast<std::size_t>(src) > n_plants ||
            dst < 1 || static_cast<std::size_t>(dst) > n_plants)
            throw std::invalid_argument("topology: edge (" + std::to_string(src) + "," +
                                        std::to_string(dst) + ") out of range 1.." +
                                        std::to_string(n_plants));
        if (dst <= src)
            throw std::invalid_argument("topology: downstream index must exceed source in edge (" +
                                        std::to_string(src) + "," + std::to_string(dst) + ")");
        const auto j = static_cast<std::size_t>(src - 1);
        const auto i = static_cast<std::size_t>(dst - 1);
        if (topo.downstream_[j])
            throw std::invalid_argument("topology: plant " + std::to_string(src) +
                                        " has two downstream plants");
        topo.downstream_[j] = i;
        topo.inflow_sets_[i].push_back(j);
    }
    // inflow sets are disjoint by construction (one downstream per plant);
    // keep them sorted so traversal order is deterministic.
    for (auto& s : topo.inflow_sets_) {
        for (std::size_t k = 1; k < s.size(); ++k)
            for (std::size_t l = k; l > 0 && s[l - 1] > s[l]; --l) std::swap(s[l - 1], s[l]);
    }
    return topo;
}

}  // namespace hydro
