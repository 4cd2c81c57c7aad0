#ifndef UOT_LBFGS_HPP
#define UOT_LBFGS_HPP

#include <functional>
#include <vector>

namespace uot {

struct LbfgsOptions {
    int memory = 10;
    int max_iter = 500;
    /// Stop when the inf-norm of the gradient drops to this value.
    double grad_tol = 1e-7;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    int max_line_search = 40;
};

struct LbfgsResult {
    std::vector<double> x;
    double fx = 0.0;
    double grad_inf_norm = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Objective: writes the gradient into `grad` and returns f(x).
using Objective =
    std::function<double(const std::vector<double>& x, std::vector<double>& grad)>;

/// Limited-memory BFGS minimization with a strong-Wolfe line search.
LbfgsResult lbfgs_minimize(const Objective& f, std::vector<double> x0,
                           const LbfgsOptions& opts = {});

}  // namespace uot

#endif
