#include "uot/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "uot/laguerre.hpp"
#include "uot/lbfgs.hpp"

namespace uot {

namespace {

void check_points(const GridDensity& g, const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("quantization: need at least one point");
    for (const Point& p : points)
        if (!g.domain().contains(p))
            throw std::invalid_argument("quantization: point outside domain");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i].x == points[j].x && points[i].y == points[j].y)
                throw std::invalid_argument("quantization: duplicate points");
}

// Integrand of J: the increasing radial profile -F*(-l(d/eps)).
double j_profile(const EntropyModel& m, double d) {
    const double c = m.cost(d);
    return std::isinf(c) ? m.f_zero() : -m.f_star(-c);
}

struct QuantScan {
    double energy = 0.0;
    std::vector<double> masses;
    std::vector<Point> gradient;
    std::vector<Point> barycenter_num;
    std::vector<double> barycenter_den;
};

// Single pass over a Voronoi tessellation accumulating energy, masses,
// gradient, and the r-weighted barycenter data.
QuantScan scan(const GridDensity& g, const std::vector<Point>& points,
               const EntropyModel& m, const Tessellation& t) {
    const size_t mm = points.size();
    QuantScan out;
    out.masses.assign(mm, 0.0);
    out.gradient.assign(mm, Point{0.0, 0.0});
    out.barycenter_num.assign(mm, Point{0.0, 0.0});
    out.barycenter_den.assign(mm, 0.0);
    const double eps = m.epsilon();
    const double inv_eps2 = 1.0 / (eps * eps);
    const std::vector<double>& vals = g.values();
    for (int iy = 0; iy < g.ny(); ++iy) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            const size_t idx = static_cast<size_t>(iy) * g.nx() + ix;
            const double v = vals[idx];
            if (v == 0.0) continue;
            const int j = t.labels[idx] - 1;
            const Point p = g.center(ix, iy);
            const double d = dist(p, points[j]);
            out.energy += j_profile(m, d) * v;
            const double c = m.cost(d);
            out.masses[j] += (std::isinf(c) ? 0.0 : m.f_star_prime(-c)) * v;
            const double r = m.r_kernel(d / eps) * v;
            out.gradient[j].x += r * (points[j].x - p.x) * inv_eps2;
            out.gradient[j].y += r * (points[j].y - p.y) * inv_eps2;
            out.barycenter_num[j].x += r * p.x;
            out.barycenter_num[j].y += r * p.y;
            out.barycenter_den[j] += r;
        }
    }
    const double area = g.cell_area();
    out.energy *= area;
    for (size_t j = 0; j < mm; ++j) {
        out.masses[j] *= area;
        out.gradient[j].x *= area;
        out.gradient[j].y *= area;
    }
    return out;
}

double grad_inf_norm(const std::vector<Point>& grad) {
    double gn = 0.0;
    for (const Point& gp : grad) gn = std::max({gn, std::abs(gp.x), std::abs(gp.y)});
    return gn;
}

}  // namespace

double quant_energy(const GridDensity& g, const std::vector<Point>& points,
                    const EntropyModel& m) {
    check_points(g, points);
    // min_i of an increasing radial profile is the profile at the nearest site.
    const Tessellation t = voronoi_assign(g, points);
    double e = 0.0;
    const std::vector<double>& vals = g.values();
    for (size_t idx = 0; idx < vals.size(); ++idx) {
        const double v = vals[idx];
        if (v == 0.0) continue;
        e += j_profile(m, std::sqrt(t.phi[idx])) * v;
    }
    return e * g.cell_area();
}

std::vector<double> quant_masses(const GridDensity& g, const std::vector<Point>& points,
                                 const EntropyModel& m) {
    check_points(g, points);
    const Tessellation t = voronoi_assign(g, points);
    return scan(g, points, m, t).masses;
}

std::vector<Point> quant_gradient(const GridDensity& g, const std::vector<Point>& points,
                                  const EntropyModel& m) {
    check_points(g, points);
    const Tessellation t = voronoi_assign(g, points);
    return scan(g, points, m, t).gradient;
}

LloydStepResult lloyd_step(const GridDensity& g, const std::vector<Point>& points,
                           const EntropyModel& m) {
    check_points(g, points);
    const Tessellation t = voronoi_assign(g, points);
    const QuantScan s = scan(g, points, m, t);
    LloydStepResult out;
    out.points = points;
    out.stuck.assign(points.size(), 0);
    for (size_t j = 0; j < points.size(); ++j) {
        if (s.barycenter_den[j] > 0.0) {
            out.points[j].x = s.barycenter_num[j].x / s.barycenter_den[j];
            out.points[j].y = s.barycenter_num[j].y / s.barycenter_den[j];
        } else {
            out.stuck[j] = 1;
        }
    }
    return out;
}

std::vector<Point> sample_initial_points(const GridDensity& g, int M, std::uint64_t seed) {
    if (M < 1) throw std::invalid_argument("sample_initial_points: M must be >= 1");
    std::vector<size_t> positive;
    for (size_t idx = 0; idx < g.size(); ++idx)
        if (g.values()[idx] > 0.0) positive.push_back(idx);
    if (static_cast<size_t>(M) > positive.size())
        throw std::invalid_argument(
            "sample_initial_points: M exceeds number of positive-density cells");

    std::mt19937_64 rng(seed);
    std::vector<double> weights(positive.size());
    for (size_t k = 0; k < positive.size(); ++k) weights[k] = g.values()[positive[k]];
    std::vector<char> taken(positive.size(), 0);
    std::vector<Point> pts;
    pts.reserve(M);
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    while (static_cast<int>(pts.size()) < M) {
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng);
        size_t pick = positive.size() - 1;
        for (size_t k = 0; k < weights.size(); ++k) {
            if (taken[k]) continue;
            if (target < weights[k]) {
                pick = k;
                break;
            }
            target -= weights[k];
        }
        while (taken[pick]) --pick;  // guard against rounding at the end
        taken[pick] = 1;
        total -= weights[pick];
        const size_t idx = positive[pick];
        pts.push_back(g.center(static_cast<int>(idx % g.nx()),
                               static_cast<int>(idx / g.nx())));
    }
    return pts;
}

QuantizationState solve_quantization_from(const GridDensity& g, std::vector<Point> initial,
                                          const EntropyModel& m,
                                          const QuantizationOptions& opts) {
    check_points(g, initial);
    const double tol = opts.grad_tol * total_mass(g);
    QuantizationState st;
    st.points = std::move(initial);

    if (opts.method == QuantMethod::Lloyd) {
        for (int it = 0; it <= opts.max_iter; ++it) {
            const Tessellation t = voronoi_assign(g, st.points);
            const QuantScan s = scan(g, st.points, m, t);
            st.energy = s.energy;
            st.energy_history.push_back(s.energy);
            st.grad_norm = grad_inf_norm(s.gradient);
            st.iterations = it;
            if (st.grad_norm <= tol || it == opts.max_iter) {
                st.masses = s.masses;
                break;
            }
            std::vector<Point> next = st.points;
            for (size_t j = 0; j < next.size(); ++j) {
                if (s.barycenter_den[j] > 0.0) {
                    next[j].x = s.barycenter_num[j].x / s.barycenter_den[j];
                    next[j].y = s.barycenter_num[j].y / s.barycenter_den[j];
                }
            }
            st.points = next;
        }
    } else {
        const size_t mm = st.points.size();
        std::vector<double> x0(2 * mm);
        for (size_t j = 0; j < mm; ++j) {
            x0[2 * j] = st.points[j].x;
            x0[2 * j + 1] = st.points[j].y;
        }
        double best = kInf;
        LbfgsOptions lopts;
        lopts.max_iter = opts.max_iter;
        lopts.grad_tol = tol;
        LbfgsResult lr = lbfgs_minimize(
            [&](const std::vector<double>& x, std::vector<double>& grad) {
                std::vector<Point> pts(mm);
                for (size_t j = 0; j < mm; ++j) pts[j] = {x[2 * j], x[2 * j + 1]};
                const Tessellation t = voronoi_assign(g, pts);
                const QuantScan s = scan(g, pts, m, t);
                grad.resize(2 * mm);
                for (size_t j = 0; j < mm; ++j) {
                    grad[2 * j] = s.gradient[j].x;
                    grad[2 * j + 1] = s.gradient[j].y;
                }
                best = std::min(best, s.energy);
                st.energy_history.push_back(best);
                return s.energy;
            },
            x0, lopts);
        for (size_t j = 0; j < mm; ++j) {
            const Domain& d = g.domain();
            st.points[j] = {std::clamp(lr.x[2 * j], d.x_min, d.x_max),
                            std::clamp(lr.x[2 * j + 1], d.y_min, d.y_max)};
        }
        st.iterations = lr.iterations;
        const Tessellation t = voronoi_assign(g, st.points);
        const QuantScan s = scan(g, st.points, m, t);
        st.energy = s.energy;
        st.grad_norm = grad_inf_norm(s.gradient);
        st.masses = s.masses;
    }

    st.zero_mass_flags.assign(st.masses.size(), 0);
    for (size_t j = 0; j < st.masses.size(); ++j)
        if (st.masses[j] == 0.0) st.zero_mass_flags[j] = 1;
    return st;
}

QuantizationState solve_quantization(const GridDensity& g, int M, const EntropyModel& m,
                                     const QuantizationOptions& opts) {
    if (!(total_mass(g) > 0.0))
        throw std::invalid_argument("solve_quantization: total mass must be positive");
    return solve_quantization_from(g, sample_initial_points(g, M, opts.seed), m, opts);
}

}  // namespace uot
