#ifndef UOT_QUANTIZATION_HPP
#define UOT_QUANTIZATION_HPP

#include <cstdint>
#include <vector>

#include "uot/geometry.hpp"
#include "uot/models.hpp"

namespace uot {

enum class QuantMethod { Lloyd, Bfgs };

struct QuantizationOptions {
    QuantMethod method = QuantMethod::Lloyd;
    int max_iter = 200;
    /// Gradient tolerance, relative to mu(Omega).
    double grad_tol = 1e-6;
    std::uint64_t seed = 0;
};

struct QuantizationState {
    std::vector<Point> points;
    std::vector<double> masses;
    double energy = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    std::vector<double> energy_history;
    std::vector<char> zero_mass_flags;
};

/// Quantization energy J = int_Omega min_i -F*(-c(d(x,x_i))) dmu.
double quant_energy(const GridDensity& g, const std::vector<Point>& points,
                    const EntropyModel& m);

/// Optimal masses m_i = int_{V_i} (F*)'(-c(d(x,x_i))) dmu.
std::vector<double> quant_masses(const GridDensity& g, const std::vector<Point>& points,
                                 const EntropyModel& m);

/// dJ/dx_j = (1/eps^2) int_{V_j} r(d/eps) (x_j - x) dmu.
std::vector<Point> quant_gradient(const GridDensity& g, const std::vector<Point>& points,
                                  const EntropyModel& m);

struct LloydStepResult {
    std::vector<Point> points;
    std::vector<char> stuck;  // sites with no reachable mass, left unmoved
};

/// One fixed-point step: each site moves to the r-weighted barycenter of its
/// Voronoi cell.
LloydStepResult lloyd_step(const GridDensity& g, const std::vector<Point>& points,
                           const EntropyModel& m);

/// Run Lloyd or L-BFGS from a density-proportional seeded initialization.
QuantizationState solve_quantization(const GridDensity& g, int M, const EntropyModel& m,
                                     const QuantizationOptions& opts = {});

/// Same, from explicit initial points.
QuantizationState solve_quantization_from(const GridDensity& g,
                                          std::vector<Point> initial,
                                          const EntropyModel& m,
                                          const QuantizationOptions& opts = {});

/// Density-proportional sampling of M distinct grid-cell centers.
std::vector<Point> sample_initial_points(const GridDensity& g, int M, std::uint64_t seed);

}  // namespace uot

#endif
