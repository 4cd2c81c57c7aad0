#include "uot/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace uot {

double dist(const Point& a, const Point& b) { return std::sqrt(sq_dist(a, b)); }

Domain::Domain(double x0, double x1, double y0, double y1)
    : x_min(x0), x_max(x1), y_min(y0), y_max(y1) {
    if (!(x_min < x_max) || !(y_min < y_max))
        throw std::invalid_argument("Domain: require x_min < x_max and y_min < y_max");
}

GridDensity::GridDensity(Domain domain, int nx, int ny, std::vector<double> values)
    : domain_(domain), nx_(nx), ny_(ny), values_(std::move(values)) {
    if (nx_ < 1 || ny_ < 1)
        throw std::invalid_argument("GridDensity: resolution must be positive");
    if (values_.size() != static_cast<size_t>(nx_) * ny_)
        throw std::invalid_argument("GridDensity: value raster has wrong size");
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("GridDensity: values must be finite and >= 0");
    }
}

double total_mass(const GridDensity& g) {
    double s = 0.0;
    for (double v : g.values()) s += v;
    return g.cell_area() * s;
}

GridDensity uniform_density(const Domain& domain, int nx, int ny, double level) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("uniform_density: resolution must be positive");
    if (level < 0.0) throw std::invalid_argument("uniform_density: level must be >= 0");
    return GridDensity(domain, nx, ny,
                       std::vector<double>(static_cast<size_t>(nx) * ny, level));
}

DiscreteMeasure::DiscreteMeasure(const Domain& domain, std::vector<Point> points,
                                 std::vector<double> masses)
    : points_(std::move(points)), masses_(std::move(masses)) {
    if (points_.size() != masses_.size())
        throw std::invalid_argument("DiscreteMeasure: points/masses size mismatch");
    for (const Point& p : points_) {
        if (!domain.contains(p))
            throw std::invalid_argument("DiscreteMeasure: point outside domain");
    }
    for (double m : masses_) {
        if (!std::isfinite(m) || m < 0.0)
            throw std::invalid_argument("DiscreteMeasure: masses must be finite and >= 0");
    }
    // Pairwise distinctness with exact coordinate comparison.
    for (size_t i = 0; i < points_.size(); ++i)
        for (size_t j = i + 1; j < points_.size(); ++j)
            if (points_[i].x == points_[j].x && points_[i].y == points_[j].y)
                throw std::invalid_argument("DiscreteMeasure: duplicate points");
}

double DiscreteMeasure::total_mass() const {
    double s = 0.0;
    for (double m : masses_) s += m;
    return s;
}

}  // namespace uot
