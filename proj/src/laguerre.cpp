#include "uot/laguerre.hpp"

#include <cmath>
#include <stdexcept>

namespace uot {

namespace {

template <typename Score>
Tessellation assign_impl(const GridDensity& g, const std::vector<Point>& sites,
                         const std::vector<double>& w, Score score) {
    const int nx = g.nx();
    const int ny = g.ny();
    const int m = static_cast<int>(sites.size());
    Tessellation t;
    t.nx = nx;
    t.ny = ny;
    t.weights_used = w;
    t.labels.assign(static_cast<size_t>(nx) * ny, kResidualLabel);
    t.phi.assign(static_cast<size_t>(nx) * ny, kInf);

#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const Point p = g.center(ix, iy);
            double best = kInf;
            int best_i = kResidualLabel;
            for (int i = 0; i < m; ++i) {
                const double s = score(p, i);
                if (s < best) {
                    best = s;
                    best_i = i + 1;
                }
            }
            const size_t idx = static_cast<size_t>(iy) * nx + ix;
            t.labels[idx] = best_i;
            t.phi[idx] = best;
        }
    }
    return t;
}

}  // namespace

Tessellation assign_cells(const GridDensity& g, const DiscreteMeasure& nu,
                          const EntropyModel& m, const std::vector<double>& w) {
    if (nu.size() == 0) throw std::invalid_argument("assign_cells: need at least one site");
    if (w.size() != nu.size())
        throw std::invalid_argument("assign_cells: weight vector has wrong length");
    const std::vector<Point>& sites = nu.points();
    return assign_impl(g, sites, w, [&](const Point& p, int i) {
        return m.cost(dist(p, sites[i])) - w[i];
    });
}

Tessellation voronoi_assign(const GridDensity& g, const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("voronoi_assign: need at least one site");
    Tessellation t = assign_impl(g, points, std::vector<double>(points.size(), 0.0),
                                 [&](const Point& p, int i) { return sq_dist(p, points[i]); });
    // phi holds squared distances here; a Voronoi tessellation has no residual.
    return t;
}

CellMasses cell_masses(const GridDensity& g, const Tessellation& t) {
    if (t.nx != g.nx() || t.ny != g.ny())
        throw std::invalid_argument("cell_masses: tessellation/grid shape mismatch");
    CellMasses cm;
    cm.masses.assign(t.weights_used.size(), 0.0);
    const std::vector<double>& vals = g.values();
    for (size_t idx = 0; idx < vals.size(); ++idx) {
        const int lab = t.labels[idx];
        if (lab == kResidualLabel)
            cm.residual_mass += vals[idx];
        else
            cm.masses[lab - 1] += vals[idx];
    }
    const double a = g.cell_area();
    for (double& m : cm.masses) m *= a;
    cm.residual_mass *= a;
    return cm;
}

}  // namespace uot
