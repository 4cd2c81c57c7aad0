#include "uot/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace uot {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct LineState {
    double alpha = 0.0;
    double f = 0.0;
    double dg = 0.0;  // directional derivative along the search direction
};

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& f, std::vector<double> x0,
                           const LbfgsOptions& opts) {
    const size_t n = x0.size();
    LbfgsResult res;
    res.x = std::move(x0);
    std::vector<double> g(n), x_new(n), g_new(n), dir(n);

    res.fx = f(res.x, g);
    ++res.evaluations;
    res.grad_inf_norm = inf_norm(g);

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        res.iterations = iter;
        if (res.grad_inf_norm <= opts.grad_tol) {
            res.converged = true;
            return res;
        }

        // Two-loop recursion for dir = -H*g.
        dir = g;
        std::vector<double> alpha_buf(s_hist.size());
        for (size_t k = s_hist.size(); k-- > 0;) {
            alpha_buf[k] = rho_hist[k] * dot(s_hist[k], dir);
            for (size_t i = 0; i < n; ++i) dir[i] -= alpha_buf[k] * y_hist[k][i];
        }
        if (!s_hist.empty()) {
            const double gamma =
                dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
            for (double& d : dir) d *= gamma;
        }
        for (size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * dot(y_hist[k], dir);
            for (size_t i = 0; i < n; ++i) dir[i] += (alpha_buf[k] - beta) * s_hist[k][i];
        }
        for (double& d : dir) d = -d;

        double dg0 = dot(g, dir);
        if (!(dg0 < 0.0)) {  // not a descent direction, restart with steepest descent
            for (size_t i = 0; i < n; ++i) dir[i] = -g[i];
            dg0 = -dot(g, g);
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            if (!(dg0 < 0.0)) {  // gradient is exactly zero
                res.converged = true;
                return res;
            }
        }

        auto eval = [&](double alpha) {
            for (size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + alpha * dir[i];
            const double fv = f(x_new, g_new);
            ++res.evaluations;
            return LineState{alpha, fv, dot(g_new, dir)};
        };

        // Strong-Wolfe line search: bracketing phase then bisection zoom.
        const double c1 = opts.wolfe_c1, c2 = opts.wolfe_c2;
        const double f0 = res.fx;
        LineState lo{0.0, f0, dg0};
        LineState cur;
        bool found = false, bracketed = false;
        LineState hi;
        double alpha = 1.0;
        for (int ls = 0; ls < opts.max_line_search; ++ls) {
            cur = eval(alpha);
            if (!std::isfinite(cur.f) || cur.f > f0 + c1 * alpha * dg0 ||
                (ls > 0 && cur.f >= lo.f)) {
                hi = cur;
                bracketed = true;
                break;
            }
            if (std::abs(cur.dg) <= -c2 * dg0) {
                found = true;
                break;
            }
            if (cur.dg >= 0.0) {
                hi = lo;
                lo = cur;
                bracketed = true;
                break;
            }
            lo = cur;
            alpha *= 2.0;
        }
        if (bracketed && !found) {
            for (int ls = 0; ls < opts.max_line_search; ++ls) {
                alpha = 0.5 * (lo.alpha + hi.alpha);
                cur = eval(alpha);
                if (!std::isfinite(cur.f) || cur.f > f0 + c1 * alpha * dg0 || cur.f >= lo.f) {
                    hi = cur;
                } else {
                    if (std::abs(cur.dg) <= -c2 * dg0) {
                        found = true;
                        break;
                    }
                    if (cur.dg * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                    lo = cur;
                }
                if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, std::abs(lo.alpha)))
                    break;
            }
        }
        if (!found) {
            // Accept the best sufficient-decrease point if any; otherwise give up.
            if (lo.alpha > 0.0 && std::isfinite(lo.f) && lo.f < f0) {
                cur = eval(lo.alpha);
            } else {
                return res;
            }
        }

        // Curvature update.
        std::vector<double> s(n), y(n);
        for (size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - res.x[i];
            y[i] = g_new[i] - g[i];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12 * std::sqrt(dot(s, s)) * std::sqrt(dot(y, y))) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        res.x = x_new;
        res.fx = cur.f;
        g = g_new;
        res.grad_inf_norm = inf_norm(g);
    }
    res.iterations = opts.max_iter;
    res.converged = res.grad_inf_norm <= opts.grad_tol;
    return res;
}

}  // namespace uot
