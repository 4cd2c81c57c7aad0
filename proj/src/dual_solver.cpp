#include "uot/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uot/lbfgs.hpp"

namespace uot {

namespace {

void check_transport_inputs(const DiscreteMeasure& nu) {
    if (nu.size() == 0) throw std::invalid_argument("transport: need at least one site");
    for (double m : nu.masses())
        if (!(m > 0.0)) throw std::invalid_argument("transport: masses must be > 0");
}

struct DualEval {
    double g_value;
    std::vector<double> grad;
};

// One scan over the tessellation produces both G(w) and grad G(w).
DualEval eval_dual(const GridDensity& g, const DiscreteMeasure& nu,
                   const EntropyModel& m, const std::vector<double>& w,
                   const Tessellation& t) {
    const size_t mm = nu.size();
    const double area = g.cell_area();
    const std::vector<double>& vals = g.values();

    double int_fstar = 0.0;
    double residual_mass = 0.0;
    std::vector<double> cell_int(mm, 0.0);
    for (size_t idx = 0; idx < vals.size(); ++idx) {
        const double v = vals[idx];
        if (v == 0.0) continue;
        const int lab = t.labels[idx];
        if (lab == kResidualLabel) {
            residual_mass += v;
        } else {
            const double z = -t.phi[idx];
            int_fstar += m.f_star(z) * v;
            cell_int[lab - 1] += m.f_star_prime(z) * v;
        }
    }
    int_fstar *= area;
    residual_mass *= area;

    DualEval out;
    out.grad.resize(mm);
    double mass_term = 0.0;
    for (size_t i = 0; i < mm; ++i) {
        mass_term += m.f_star(-w[i]) * nu.masses()[i];
        out.grad[i] = m.f_star_prime(-w[i]) * nu.masses()[i] - area * cell_int[i];
    }
    const double f0 = m.f_zero();
    if (residual_mass > 0.0 && std::isinf(f0)) {
        out.g_value = -kInf;
    } else {
        out.g_value = -int_fstar - mass_term + (residual_mass > 0.0 ? f0 * residual_mass : 0.0);
    }
    return out;
}

}  // namespace

double dual_objective(const GridDensity& g, const DiscreteMeasure& nu,
                      const EntropyModel& m, const std::vector<double>& w) {
    check_transport_inputs(nu);
    const Tessellation t = assign_cells(g, nu, m, w);
    return eval_dual(g, nu, m, w, t).g_value;
}

std::vector<double> dual_gradient(const GridDensity& g, const DiscreteMeasure& nu,
                                  const EntropyModel& m, const std::vector<double>& w) {
    check_transport_inputs(nu);
    const Tessellation t = assign_cells(g, nu, m, w);
    return eval_dual(g, nu, m, w, t).grad;
}

GridDensity reconstruct_rho(const GridDensity& g, const DiscreteMeasure& nu,
                            const EntropyModel& m, const Tessellation& t,
                            const std::vector<double>& w) {
    (void)nu;
    (void)w;
    std::vector<double> rho(g.size(), 0.0);
    const std::vector<double>& vals = g.values();
    for (size_t idx = 0; idx < vals.size(); ++idx) {
        if (t.labels[idx] == kResidualLabel) continue;
        rho[idx] = vals[idx] * m.f_star_prime(-t.phi[idx]);
    }
    return GridDensity(g.domain(), g.nx(), g.ny(), std::move(rho));
}

double primal_objective(const GridDensity& g, const DiscreteMeasure& nu,
                        const EntropyModel& m, const Tessellation& t,
                        const std::vector<double>& w, const GridDensity& rho) {
    check_transport_inputs(nu);
    const double area = g.cell_area();
    const std::vector<double>& mu_vals = g.values();
    const std::vector<double>& rho_vals = rho.values();
    const size_t mm = nu.size();

    std::vector<double> rho_cells(mm, 0.0);
    double cost_term = 0.0;
    double f_term = 0.0;
    const bool balanced = std::isinf(m.f_zero());
    for (size_t idx = 0; idx < mu_vals.size(); ++idx) {
        const double rv = std::max(rho_vals[idx], 0.0);
        const int lab = t.labels[idx];
        if (lab == kResidualLabel) {
            if (rv > 0.0) return kInf;  // rho must vanish on the residual set
        } else {
            rho_cells[lab - 1] += rv;
            if (rv > 0.0) cost_term += (t.phi[idx] + w[lab - 1]) * rv;
        }
        const double mv = mu_vals[idx];
        if (mv > 0.0) {
            const double s = rv / mv;
            if (balanced) {
                if (std::abs(s - 1.0) > kBalancedTol) return kInf;
            } else {
                f_term += m.f_value(s) * mv;
            }
        } else if (rv > 0.0) {
            return kInf;  // rho << mu violated
        }
    }
    cost_term *= area;
    f_term *= area;
    for (double& rc : rho_cells) rc *= area;

    double mass_term = 0.0;
    const double mu_tot = total_mass(g);
    for (size_t i = 0; i < mm; ++i) {
        const double mi = nu.masses()[i];
        if (balanced) {
            if (std::abs(rho_cells[i] - mi) > kW2MassTol * std::max(1.0, mu_tot)) return kInf;
        } else {
            mass_term += m.f_value(rho_cells[i] / mi) * mi;
        }
    }
    return cost_term + f_term + mass_term;
}

double duality_gap(const GridDensity& g, const DiscreteMeasure& nu,
                   const EntropyModel& m, const std::vector<double>& w) {
    check_transport_inputs(nu);
    const Tessellation t = assign_cells(g, nu, m, w);
    if (std::isinf(m.f_zero())) {
        // Balanced certificate: marginal defect max_i |m_i - mu(C_i(w))|.
        const CellMasses cm = cell_masses(g, t);
        double defect = 0.0;
        for (size_t i = 0; i < nu.size(); ++i)
            defect = std::max(defect, std::abs(nu.masses()[i] - cm.masses[i]));
        return defect;
    }
    const GridDensity rho = reconstruct_rho(g, nu, m, t, w);
    const double primal = primal_objective(g, nu, m, t, w, rho);
    const double dual = eval_dual(g, nu, m, w, t).g_value;
    return primal - dual;
}

TransportSolution solve_weights(const GridDensity& g, const DiscreteMeasure& nu,
                                const EntropyModel& m,
                                const TransportSolverOptions& opts) {
    check_transport_inputs(nu);
    const double mu_tot = total_mass(g);
    const double scale = std::max(1.0, mu_tot);

    std::vector<double> w0(nu.size(), 0.0);
    {
        const Tessellation t0 = assign_cells(g, nu, m, w0);
        if (std::isinf(m.f_zero()) && cell_masses(g, t0).residual_mass > 0.0)
            throw std::runtime_error("solve_weights: balanced problem with nonempty residual");
    }

    LbfgsOptions lopts;
    lopts.memory = 10;
    lopts.max_iter = opts.max_iter;
    lopts.grad_tol = opts.grad_tol * scale;
    const auto objective = [&](const std::vector<double>& w, std::vector<double>& grad) {
        const Tessellation t = assign_cells(g, nu, m, w);
        DualEval ev = eval_dual(g, nu, m, w, t);
        for (size_t i = 0; i < grad.size(); ++i) grad[i] = -ev.grad[i];
        return -ev.g_value;
    };
    std::vector<double> grad_buf(nu.size());
    LbfgsResult lr = lbfgs_minimize(
        [&](const std::vector<double>& w, std::vector<double>& grad) {
            grad.resize(w.size());
            return objective(w, grad);
        },
        w0, lopts);

    TransportSolution sol;
    sol.w = lr.x;
    sol.iterations = lr.iterations;
    const Tessellation t = assign_cells(g, nu, m, sol.w);
    const DualEval ev = eval_dual(g, nu, m, sol.w, t);
    sol.g_value = ev.g_value;
    double gn = 0.0;
    for (double gi : ev.grad) gn = std::max(gn, std::abs(gi));
    sol.grad_norm = gn;

    const GridDensity rho = reconstruct_rho(g, nu, m, t, sol.w);
    sol.rho_values = rho.values();
    const double area = g.cell_area();
    sol.rho_cell_masses.assign(nu.size(), 0.0);
    for (size_t idx = 0; idx < rho.values().size(); ++idx) {
        const int lab = t.labels[idx];
        if (lab != kResidualLabel) sol.rho_cell_masses[lab - 1] += rho.values()[idx];
    }
    for (double& rc : sol.rho_cell_masses) rc *= area;

    sol.duality_gap = duality_gap(g, nu, m, sol.w);
    const double gap_tol = (std::isinf(m.f_zero()) ? kW2MassTol : 1e-4) * scale;
    sol.converged = sol.duality_gap <= gap_tol;
    return sol;
}

}  // namespace uot
