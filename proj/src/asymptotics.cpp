#include "uot/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace uot {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.7320508075688772;

// -F*(-l(r)) at unit scale, with the -F*(-inf) = F(0) convention.
double j_profile_unit(const EntropyModel& m, double r) {
    const double c = m.cost_unit(r);
    return std::isinf(c) ? m.f_zero() : -m.f_star(-c);
}

const GaussLegendre& gl64() {
    static const GaussLegendre q(64);
    return q;
}

// Integral of -F*(-l(r)) r dr over [0, d], splitting at the cost cutoff.
double radial_integral(const EntropyModel& m, double d) {
    const double rc = m.unit_scale().cutoff_radius();
    const auto f = [&](double r) { return j_profile_unit(m, r) * r; };
    if (d <= rc) return gl64().integrate(0.0, d, f);
    return gl64().integrate(0.0, rc, f) + m.f_zero() * 0.5 * (d * d - rc * rc);
}

}  // namespace

GaussLegendre::GaussLegendre(int n) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

double cell_b(const EntropyModel& m, double z) {
    if (!(z > 0.0)) throw std::invalid_argument("cell_b: z must be > 0");
    // Regular hexagon of area 1/z: apothem a, ray length a/cos(alpha) over a
    // sector alpha in [-pi/6, pi/6]; six congruent sectors, two half-sectors
    // each by symmetry.
    const double a = 1.0 / std::sqrt(2.0 * kSqrt3 * z);
    const double rc = m.unit_scale().cutoff_radius();
    const auto sector = [&](double alpha) { return radial_integral(m, a / std::cos(alpha)); };
    const double alpha_max = kPi / 6.0;
    double integral;
    if (rc > a && rc < a / std::cos(alpha_max)) {
        const double alpha_star = std::acos(a / rc);  // ray crosses the cutoff here
        integral = gl64().integrate(0.0, alpha_star, sector) +
                   gl64().integrate(alpha_star, alpha_max, sector);
    } else {
        integral = gl64().integrate(0.0, alpha_max, sector);
    }
    return 12.0 * z * integral;
}

double cell_b_prime(const EntropyModel& m, double z) {
    if (!(z > 0.0)) throw std::invalid_argument("cell_b_prime: z must be > 0");
    const double a = 1.0 / std::sqrt(2.0 * kSqrt3 * z);
    const double half_edge = a / kSqrt3;
    const double rc = m.unit_scale().cutoff_radius();
    const auto f = [&](double t) { return j_profile_unit(m, std::sqrt(a * a + t * t)); };
    double edge_int;
    const double corner = 2.0 * a / kSqrt3;  // circumradius
    if (rc > a && rc < corner) {
        const double t_star = std::sqrt(rc * rc - a * a);
        edge_int = gl64().integrate(0.0, t_star, f) +
                   m.f_zero() * (half_edge - t_star);
    } else if (rc <= a) {
        edge_int = m.f_zero() * half_edge;
    } else {
        edge_int = gl64().integrate(0.0, half_edge, f);
    }
    const double boundary_avg = edge_int / half_edge;
    return (cell_b(m, z) - boundary_avg) / z;
}

namespace {

std::pair<double, double> detect_plateau(const std::vector<double>& z,
                                         const std::vector<double>& bp) {
    const double ref = bp.front();
    size_t k = 0;
    for (size_t i = 1; i < bp.size(); ++i) {
        if (std::abs(bp[i] - ref) < 1e-6)
            k = i;
        else
            break;
    }
    return {k > 0 ? z[k] : 0.0, ref};
}

std::pair<double, double> plateau_impl(const EntropyModel& m) {
    if (m.kind() == ModelKind::W2) return {0.0, -kInf};
    const int n = 200;
    std::vector<double> z(n), bp(n);
    const double lmin = std::log(1e-4), lmax = std::log(1e4);
    for (int i = 0; i < n; ++i) {
        z[i] = std::exp(lmin + (lmax - lmin) * i / (n - 1.0));
        bp[i] = cell_b_prime(m, z[i]);
    }
    return detect_plateau(z, bp);
}

}  // namespace

std::pair<double, double> plateau_constants(const EntropyModel& m) {
    static std::array<std::optional<std::pair<double, double>>, 4> cache;
    static std::mutex mtx;
    const size_t k = static_cast<size_t>(m.kind());
    std::lock_guard<std::mutex> lock(mtx);
    if (!cache[k]) cache[k] = plateau_impl(m);
    return *cache[k];
}

double invert_b_prime(const EntropyModel& m, double s) {
    const auto [z_plateau, slope] = plateau_constants(m);
    if (!(s > slope && s < 0.0))
        throw std::out_of_range("invert_b_prime: s outside (slope_plateau, 0)");
    double z_lo = z_plateau > 0.0 ? z_plateau : 1e-8;
    while (cell_b_prime(m, z_lo) > s) {
        z_lo /= 4.0;
        if (z_lo < 1e-30) throw std::out_of_range("invert_b_prime: bracket failure (low)");
    }
    double z_hi = std::max(2.0 * z_lo, 1.0);
    while (cell_b_prime(m, z_hi) < s) {
        z_hi *= 4.0;
        if (z_hi > 1e12) throw std::out_of_range("invert_b_prime: bracket failure (high)");
    }
    for (int it = 0; it < 200 && (z_hi - z_lo) > 1e-8 * z_lo; ++it) {
        const double mid = 0.5 * (z_lo + z_hi);
        if (cell_b_prime(m, mid) < s)
            z_lo = mid;
        else
            z_hi = mid;
    }
    return 0.5 * (z_lo + z_hi);
}

CellProblemTable::CellProblemTable(const EntropyModel& m, int n_samples, double z_min,
                                   double z_max) {
    z_.resize(n_samples);
    b_.resize(n_samples);
    bp_.resize(n_samples);
    const double lmin = std::log(z_min), lmax = std::log(z_max);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_samples; ++i) {
        z_[i] = std::exp(lmin + (lmax - lmin) * i / (n_samples - 1.0));
        b_[i] = cell_b(m, z_[i]);
        bp_[i] = cell_b_prime(m, z_[i]);
    }
    if (m.kind() == ModelKind::W2) {
        z_plateau_ = 0.0;
        slope_plateau_ = -kInf;
    } else {
        const auto [zp, sp] = detect_plateau(z_, bp_);
        z_plateau_ = zp;
        slope_plateau_ = sp;
    }
}

namespace {

// Cubic Hermite value and derivative on [z0, z1].
double hermite(double z, double z0, double z1, double b0, double b1, double d0, double d1,
               bool derivative) {
    const double h = z1 - z0;
    const double t = (z - z0) / h;
    const double t2 = t * t, t3 = t2 * t;
    if (!derivative) {
        return (2 * t3 - 3 * t2 + 1) * b0 + (t3 - 2 * t2 + t) * h * d0 +
               (-2 * t3 + 3 * t2) * b1 + (t3 - t2) * h * d1;
    }
    return ((6 * t2 - 6 * t) * b0 + (3 * t2 - 4 * t + 1) * h * d0 + (-6 * t2 + 6 * t) * b1 +
            (3 * t2 - 2 * t) * h * d1) /
           h;
}

}  // namespace

double CellProblemTable::b(double z) const {
    z = std::clamp(z, z_.front(), z_.back());
    const auto it = std::upper_bound(z_.begin(), z_.end(), z);
    const size_t i = std::min(z_.size() - 2, static_cast<size_t>(std::max<std::ptrdiff_t>(
                                                 0, it - z_.begin() - 1)));
    return hermite(z, z_[i], z_[i + 1], b_[i], b_[i + 1], bp_[i], bp_[i + 1], false);
}

double CellProblemTable::b_prime(double z) const {
    z = std::clamp(z, z_.front(), z_.back());
    const auto it = std::upper_bound(z_.begin(), z_.end(), z);
    const size_t i = std::min(z_.size() - 2, static_cast<size_t>(std::max<std::ptrdiff_t>(
                                                 0, it - z_.begin() - 1)));
    return hermite(z, z_[i], z_[i + 1], b_[i], b_[i + 1], bp_[i], bp_[i + 1], true);
}

double CellProblemTable::invert_prime(double s) const {
    if (s >= bp_.back()) return z_.back();
    if (s <= bp_.front()) {
        // Below the sampled range: on (plateau, bp_[0]) fall back to the
        // first interval.
        return z_.front();
    }
    const auto it = std::upper_bound(bp_.begin(), bp_.end(), s);
    const size_t i = static_cast<size_t>(it - bp_.begin() - 1);
    double lo = z_[i], hi = z_[std::min(i + 1, z_.size() - 1)];
    for (int k = 0; k < 100 && (hi - lo) > 1e-10 * lo; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (b_prime(mid) < s)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

AsymptoticDensityResult optimal_density(const GridDensity& g, const EntropyModel& m,
                                        double P) {
    if (!(total_mass(g) > 0.0))
        throw std::invalid_argument("optimal_density: total mass must be positive");
    if (!(P > 0.0)) throw std::out_of_range("optimal_density: P must be > 0");

    const CellProblemTable table(m);
    const double slope = table.slope_plateau();
    const double area = g.cell_area();
    const std::vector<double>& mv = g.values();
    const double tie_eps = std::isinf(slope) ? 0.0 : 1e-12 * (1.0 + std::abs(slope));

    // D with the lower (zero) selection on the plateau tie set.
    const auto density_at = [&](double lambda, double mval) -> double {
        if (!(mval > 0.0)) return 0.0;
        const double s = lambda / mval;
        if (s <= slope + tie_eps) return 0.0;
        if (s >= 0.0) return 0.0;
        return table.invert_prime(s);
    };
    const auto integral_d = [&](double lambda) {
        double acc = 0.0;
        for (double mval : mv) acc += density_at(lambda, mval);
        return acc * area;
    };

    double max_m = 0.0;
    for (double mval : mv) max_m = std::max(max_m, mval);

    double hi = -1e-12;
    double lo = (std::isinf(slope) ? table.b_prime_values().front() : slope) * max_m;
    if (!(lo < hi)) lo = -1.0;
    int expand = 0;
    while (integral_d(lo) > P) {
        lo *= 2.0;
        if (++expand > 200) throw std::out_of_range("optimal_density: bracket failure (low)");
    }
    if (integral_d(hi) < P)
        throw std::out_of_range("optimal_density: P not attainable with lambda < 0");

    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::abs(lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (integral_d(mid) < P)
            lo = mid;
        else
            hi = mid;
    }
    const double lambda = 0.5 * (lo + hi);

    // The plateau makes lambda -> int D a step function on a raster: cells
    // whose threshold sits inside the final bracket are the tie set; they get
    // a common interpolation fraction so the mass constraint holds exactly.
    std::vector<double> dvals(mv.size()), d_hi(mv.size());
    double i_lo = 0.0, capacity = 0.0;
    for (size_t i = 0; i < mv.size(); ++i) {
        dvals[i] = density_at(lo, mv[i]);
        d_hi[i] = density_at(hi, mv[i]);
        i_lo += dvals[i];
        capacity += d_hi[i] - dvals[i];
    }
    i_lo *= area;
    capacity *= area;
    if (capacity > 0.0) {
        const double frac = std::clamp((P - i_lo) / capacity, 0.0, 1.0);
        for (size_t i = 0; i < mv.size(); ++i)
            dvals[i] += frac * (d_hi[i] - dvals[i]);
    }

    AsymptoticDensityResult res{lambda, GridDensity(g.domain(), g.nx(), g.ny(), dvals), 0.0,
                                P};
    double energy = 0.0;
    for (size_t i = 0; i < mv.size(); ++i) {
        if (!(mv[i] > 0.0)) continue;
        energy += (dvals[i] > 0.0 ? table.b(dvals[i]) : m.f_zero()) * mv[i];
    }
    res.energy = energy * area;
    return res;
}

std::pair<double, double> lattice_bounds(const EntropyModel& m, double omega_area,
                                         double boundary_length, int M, double eps) {
    const double lower = omega_area * cell_b(m, eps * eps * M / omega_area);
    const double upper_extra =
        m.f_zero() * boundary_length * std::sqrt(8.0 * omega_area / (3.0 * kSqrt3 * M));
    return {lower, upper_extra};
}

std::vector<Point> triangular_lattice(const Domain& domain, int M) {
    if (M < 1) throw std::invalid_argument("triangular_lattice: M must be >= 1");
    const double area = domain.area();
    const double h = std::sqrt(2.0 * area / (kSqrt3 * M));  // lattice spacing
    const double row_h = h * kSqrt3 / 2.0;
    const double circum = h / kSqrt3;  // hexagon circumradius

    std::vector<Point> pts;
    for (int j = 0;; ++j) {
        const double y = domain.y_min + circum + j * row_h;
        if (y > domain.y_max - circum) break;
        const double x_off = (j % 2 == 0) ? 0.0 : h / 2.0;
        for (int i = 0;; ++i) {
            const double x = domain.x_min + circum + x_off + i * h;
            if (x > domain.x_max - circum) break;
            pts.push_back({x, y});
            if (static_cast<int>(pts.size()) == M) return pts;
        }
    }

    const auto try_add = [&](const Point& cand) {
        if (!domain.contains(cand)) return false;
        for (const Point& p : pts)
            if (sq_dist(p, cand) < 1e-24 * (1.0 + h * h)) return false;
        pts.push_back(cand);
        return true;
    };

    // Top up inside the boundary margin (no lattice point lives there, so the
    // triangular core keeps its spacing): evenly along an inset rectangle.
    const int missing = M - static_cast<int>(pts.size());
    const double inset = 0.5 * circum;
    const double iw = domain.width() - 2.0 * inset, ih = domain.height() - 2.0 * inset;
    if (iw > 0.0 && ih > 0.0) {
        const double per = 2.0 * (iw + ih);
        for (int i = 0; i < missing && static_cast<int>(pts.size()) < M; ++i) {
            double t = (i + 0.5) * per / missing;
            Point cand;
            if (t < iw) {
                cand = {domain.x_min + inset + t, domain.y_min + inset};
            } else if (t < iw + ih) {
                cand = {domain.x_max - inset, domain.y_min + inset + (t - iw)};
            } else if (t < 2.0 * iw + ih) {
                cand = {domain.x_max - inset - (t - iw - ih), domain.y_max - inset};
            } else {
                cand = {domain.x_min + inset, domain.y_max - inset - (t - 2.0 * iw - ih)};
            }
            try_add(cand);
        }
    }

    // Fallback for anything still missing: a coarse uniform interior grid.
    int c = std::max(1, static_cast<int>(std::ceil(std::sqrt(M - pts.size() + 1.0))));
    while (static_cast<int>(pts.size()) < M) {
        for (int j = 0; j < c && static_cast<int>(pts.size()) < M; ++j)
            for (int i = 0; i < c && static_cast<int>(pts.size()) < M; ++i)
                try_add({domain.x_min + (i + 0.5) * domain.width() / c,
                         domain.y_min + (j + 0.5) * domain.height() / c});
        ++c;  // denser candidate grid if collisions exhausted this one
    }
    return pts;
}

}  // namespace uot
