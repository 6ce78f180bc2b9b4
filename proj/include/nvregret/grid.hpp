#pragma once

#include "nvregret/errors.hpp"

namespace nvregret {

// Grid parameters shared by the lattice and LP searches.
//
// mesh_v / mesh_w bound the spacing of the value grids below and above the
// critical fractile (the lattice search uses mesh_v for every coordinate);
// eps is the target optimality gap of the design optimizer.
struct GridSpec {
    double mesh_v = 1.0 / 200.0;
    double mesh_w = 1.0 / 200.0;
    double eps = 0.02;

    // Mesh eps / (2 * (n_max + 2)) on both sides, as required for the design
    // optimizer's eps-optimality guarantee.
    static GridSpec for_eps(double eps, long n_max) {
        if (!(eps > 0.0)) throw invalid_parameter_error("GridSpec: eps must be positive");
        double delta = eps / (2.0 * (static_cast<double>(n_max) + 2.0));
        return GridSpec{delta, delta, eps};
    }
};

} // namespace nvregret
