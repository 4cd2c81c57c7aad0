#ifndef UOT_LAGUERRE_HPP
#define UOT_LAGUERRE_HPP

#include <vector>

#include "uot/geometry.hpp"
#include "uot/models.hpp"

namespace uot {

/// Residual label in the raster tessellation (sites are 1..M).
inline constexpr int kResidualLabel = 0;

/// Per-grid-cell labels and the value raster phi_w. phi[p] = c(p,x_i) - w_i
/// for the winning site i, +inf on the residual set.
struct Tessellation {
    int nx = 0;
    int ny = 0;
    std::vector<int> labels;
    std::vector<double> phi;
    std::vector<double> weights_used;

    int label(int ix, int iy) const { return labels[static_cast<size_t>(iy) * nx + ix]; }
};

/// Brute-force generalized Laguerre assignment: each grid cell center gets
/// the argmin over i of c(d(x, x_i)) - w_i among finite costs, the residual
/// label if none is finite. Ties go to the lowest site index.
Tessellation assign_cells(const GridDensity& g, const DiscreteMeasure& nu,
                          const EntropyModel& m, const std::vector<double>& w);

/// Voronoi assignment: plain Euclidean distance as the score, no residual.
Tessellation voronoi_assign(const GridDensity& g, const std::vector<Point>& points);

struct CellMasses {
    std::vector<double> masses;
    double residual_mass = 0.0;
};

/// mu(C_i) for each cell plus mu(R), by midpoint quadrature on g.
CellMasses cell_masses(const GridDensity& g, const Tessellation& t);

}  // namespace uot

#endif
