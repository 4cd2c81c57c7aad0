#ifndef UOT_ASYMPTOTICS_HPP
#define UOT_ASYMPTOTICS_HPP

#include <utility>
#include <vector>

#include "uot/geometry.hpp"
#include "uot/models.hpp"

namespace uot {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int n);

    /// Integrate f over [a, b].
    template <typename F>
    double integrate(double a, double b, F&& f) const {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double s = 0.0;
        for (size_t k = 0; k < nodes.size(); ++k) s += weights[k] * f(c + h * nodes[k]);
        return h * s;
    }
};

/// Hexagonal cell energy density B(z): the model is evaluated at unit length
/// scale; the scaling enters through the argument z.
double cell_b(const EntropyModel& m, double z);

/// B'(z) = [B(z) - average of -F*(-l(d)) over the hexagon boundary] / z.
double cell_b_prime(const EntropyModel& m, double z);

/// (z_plateau, slope_plateau): B' is constant on (0, Z] with value r.
/// (0, -inf) for the balanced model.
std::pair<double, double> plateau_constants(const EntropyModel& m);

/// Unique z with B'(z) = s on the strictly increasing branch, by bisection
/// on direct quadrature evaluations of B'.
double invert_b_prime(const EntropyModel& m, double s);

/// Sampled B, B' on a log-spaced z grid with cubic Hermite interpolation;
/// used where B' inversion is called per raster cell.
class CellProblemTable {
public:
    CellProblemTable(const EntropyModel& m, int n_samples = 400, double z_min = 1e-4,
                     double z_max = 1e4);

    const std::vector<double>& z_samples() const { return z_; }
    const std::vector<double>& b_values() const { return b_; }
    const std::vector<double>& b_prime_values() const { return bp_; }
    double z_plateau() const { return z_plateau_; }
    double slope_plateau() const { return slope_plateau_; }

    double b(double z) const;
    double b_prime(double z) const;
    /// Inverse of the interpolated B' on (slope_plateau, 0).
    double invert_prime(double s) const;

private:
    std::vector<double> z_, b_, bp_;
    double z_plateau_ = 0.0;
    double slope_plateau_ = 0.0;
};

struct AsymptoticDensityResult {
    double lambda = 0.0;
    GridDensity density;
    double energy = 0.0;
    double p_target = 0.0;
};

/// Asymptotically optimal point density D with multiplier lambda < 0 such
/// that int_Omega D dx = P. The input raster holds the mass density m(x).
AsymptoticDensityResult optimal_density(const GridDensity& g, const EntropyModel& m,
                                        double P);

/// (lower, upper_extra): |Omega| B(eps^2 M/|Omega|) and the boundary term
/// F(0) |dOmega| sqrt(8|Omega|/(3 sqrt(3) M)).
std::pair<double, double> lattice_bounds(const EntropyModel& m, double omega_area,
                                         double boundary_length, int M, double eps);

/// Exactly M distinct points: triangular-lattice points whose hexagonal cell
/// fits in the domain, topped up on a coarse uniform grid.
std::vector<Point> triangular_lattice(const Domain& domain, int M);

}  // namespace uot

#endif
