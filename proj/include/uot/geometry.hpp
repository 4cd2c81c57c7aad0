#ifndef UOT_GEOMETRY_HPP
#define UOT_GEOMETRY_HPP

#include <cstddef>
#include <vector>

namespace uot {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double sq_dist(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double dist(const Point& a, const Point& b);

/// Axis-aligned rectangular domain.
struct Domain {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;

    Domain() = default;
    Domain(double x0, double x1, double y0, double y1);

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    double perimeter() const { return 2.0 * (width() + height()); }
    bool contains(const Point& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
};

/// Rasterized diffuse measure: density values at cell centers on a
/// regular nx-by-ny grid, row-major with row 0 at y_min.
class GridDensity {
public:
    GridDensity(Domain domain, int nx, int ny, std::vector<double> values);

    const Domain& domain() const { return domain_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double cell_width() const { return domain_.width() / nx_; }
    double cell_height() const { return domain_.height() / ny_; }
    double cell_area() const { return cell_width() * cell_height(); }

    Point center(int ix, int iy) const {
        return {domain_.x_min + (ix + 0.5) * cell_width(),
                domain_.y_min + (iy + 0.5) * cell_height()};
    }

    double value(int ix, int iy) const { return values_[static_cast<size_t>(iy) * nx_ + ix]; }
    const std::vector<double>& values() const { return values_; }
    size_t size() const { return values_.size(); }

private:
    Domain domain_;
    int nx_;
    int ny_;
    std::vector<double> values_;
};

double total_mass(const GridDensity& g);

GridDensity uniform_density(const Domain& domain, int nx, int ny, double level);

/// Discrete measure sum_i m_i delta_{x_i}: pairwise-distinct points in the
/// closed domain with nonnegative masses.
class DiscreteMeasure {
public:
    DiscreteMeasure(const Domain& domain, std::vector<Point> points,
                    std::vector<double> masses);

    const std::vector<Point>& points() const { return points_; }
    const std::vector<double>& masses() const { return masses_; }
    size_t size() const { return points_.size(); }
    double total_mass() const;

private:
    std::vector<Point> points_;
    std::vector<double> masses_;
};

}  // namespace uot

#endif
