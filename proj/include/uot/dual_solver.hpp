#ifndef UOT_DUAL_SOLVER_HPP
#define UOT_DUAL_SOLVER_HPP

#include <vector>

#include "uot/geometry.hpp"
#include "uot/laguerre.hpp"
#include "uot/models.hpp"

namespace uot {

/// Mass tolerance for the balanced primal/gap certificate, relative to
/// max(1, mu(Omega)).
inline constexpr double kW2MassTol = 1e-3;

struct TransportSolverOptions {
    int max_iter = 500;
    /// Gradient tolerance, relative to max(1, mu(Omega)).
    double grad_tol = 1e-7;
};

struct TransportSolution {
    std::vector<double> w;
    double g_value = 0.0;
    double grad_norm = 0.0;       // inf-norm of grad G at w
    std::vector<double> rho_values;  // reconstructed first-marginal raster
    std::vector<double> rho_cell_masses;
    double duality_gap = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// The concave dual tessellation objective G(w). Returns -inf for the
/// balanced model when the residual set carries mass.
double dual_objective(const GridDensity& g, const DiscreteMeasure& nu,
                      const EntropyModel& m, const std::vector<double>& w);

/// dG/dw_i = (F*)'(-w_i) m_i - int_{C_i} (F*)'(-c + w_i) dmu.
std::vector<double> dual_gradient(const GridDensity& g, const DiscreteMeasure& nu,
                                  const EntropyModel& m, const std::vector<double>& w);

/// First-marginal raster: mu-density times (F*)'(-phi_w), zero on the residual.
GridDensity reconstruct_rho(const GridDensity& g, const DiscreteMeasure& nu,
                            const EntropyModel& m, const Tessellation& t,
                            const std::vector<double>& w);

/// Primal tessellation objective for a candidate (w, rho).
double primal_objective(const GridDensity& g, const DiscreteMeasure& nu,
                        const EntropyModel& m, const Tessellation& t,
                        const std::vector<double>& w, const GridDensity& rho);

/// Primal-minus-dual certificate at w with the reconstructed rho. For the
/// balanced model this is the marginal defect max_i |m_i - mu(C_i(w))|.
double duality_gap(const GridDensity& g, const DiscreteMeasure& nu,
                   const EntropyModel& m, const std::vector<double>& w);

/// Maximize G by L-BFGS from w = 0 and assemble the full solution.
TransportSolution solve_weights(const GridDensity& g, const DiscreteMeasure& nu,
                                const EntropyModel& m,
                                const TransportSolverOptions& opts = {});

}  // namespace uot

#endif
