#include "uot/models.hpp"

#include <cmath>
#include <stdexcept>

namespace uot {

namespace {
constexpr double kPi = 3.14159265358979323846;
// WFR cost clamp just below the pi/2 cutoff to avoid log(0) overflow.
constexpr double kWfrClamp = 1e-12;
}  // namespace

EntropyModel::EntropyModel(ModelKind kind, double epsilon)
    : kind_(kind), epsilon_(epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("EntropyModel: epsilon must be > 0");
}

double EntropyModel::f_value(double s) const {
    if (s < 0.0) throw std::invalid_argument("f_value: s must be >= 0");
    switch (kind_) {
        case ModelKind::W2:
            return std::abs(s - 1.0) <= kBalancedTol ? 0.0 : kInf;
        case ModelKind::GHK:
        case ModelKind::WFR:
            return s > 0.0 ? s * std::log(s) - s + 1.0 : 1.0;
        case ModelKind::QR:
            return (s - 1.0) * (s - 1.0);
    }
    return kInf;
}

double EntropyModel::f_zero() const {
    return kind_ == ModelKind::W2 ? kInf : 1.0;
}

double EntropyModel::f_star(double z) const {
    switch (kind_) {
        case ModelKind::W2:
            return z;  // -inf passes through as -F(0) = -inf
        case ModelKind::GHK:
        case ModelKind::WFR:
            return std::isinf(z) && z < 0.0 ? -1.0 : std::expm1(z);
        case ModelKind::QR:
            return z >= -2.0 ? z * z / 4.0 + z : -1.0;
    }
    return 0.0;
}

double EntropyModel::f_star_prime(double z) const {
    switch (kind_) {
        case ModelKind::W2:
            return 1.0;
        case ModelKind::GHK:
        case ModelKind::WFR:
            return std::isinf(z) && z < 0.0 ? 0.0 : std::exp(z);
        case ModelKind::QR:
            return std::max(z / 2.0 + 1.0, 0.0);
    }
    return 0.0;
}

double EntropyModel::cost(double s) const { return cost_unit(s / epsilon_); }

double EntropyModel::cost_unit(double s) const {
    switch (kind_) {
        case ModelKind::W2:
        case ModelKind::GHK:
        case ModelKind::QR:
            return s * s;
        case ModelKind::WFR: {
            const double lim = kPi / 2.0;
            if (s >= lim) return kInf;
            if (s > lim - kWfrClamp) s = lim - kWfrClamp;
            return -2.0 * std::log(std::cos(s));
        }
    }
    return kInf;
}

double EntropyModel::cutoff_radius() const {
    return kind_ == ModelKind::WFR ? epsilon_ * kPi / 2.0 : kInf;
}

double EntropyModel::r_kernel(double s) const {
    if (s < 0.0) throw std::invalid_argument("r_kernel: s must be >= 0");
    switch (kind_) {
        case ModelKind::W2:
            return 2.0;
        case ModelKind::GHK:
            return 2.0 * std::exp(-s * s);
        case ModelKind::WFR:
            if (s == 0.0) return 2.0;  // removable singularity
            return s <= kPi / 2.0 ? std::sin(2.0 * s) / s : 0.0;
        case ModelKind::QR:
            return std::max(2.0 - s * s, 0.0);
    }
    return 0.0;
}

std::string EntropyModel::name() const {
    switch (kind_) {
        case ModelKind::W2: return "w2";
        case ModelKind::GHK: return "ghk";
        case ModelKind::WFR: return "wfr";
        case ModelKind::QR: return "qr";
    }
    return "?";
}

EntropyModel EntropyModel::parse(const std::string& kind, double epsilon) {
    if (kind == "w2") return EntropyModel(ModelKind::W2, epsilon);
    if (kind == "ghk") return EntropyModel(ModelKind::GHK, epsilon);
    if (kind == "wfr") return EntropyModel(ModelKind::WFR, epsilon);
    if (kind == "qr") return EntropyModel(ModelKind::QR, epsilon);
    throw std::invalid_argument("unknown model kind: " + kind);
}

}  // namespace uot
