#ifndef UOT_MODELS_HPP
#define UOT_MODELS_HPP

#include <limits>
#include <string>

namespace uot {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerance around s = 1 at which the balanced indicator F = iota_{1} is
/// treated as zero.
inline constexpr double kBalancedTol = 1e-9;

enum class ModelKind { W2, GHK, WFR, QR };

/// An entropy-transport model: the marginal penalty F, its conjugate F*,
/// the derivative (F*)', the radial cost with length scale epsilon, and the
/// quantization kernel r.
class EntropyModel {
public:
    explicit EntropyModel(ModelKind kind, double epsilon = 1.0);

    ModelKind kind() const { return kind_; }
    double epsilon() const { return epsilon_; }

    /// F(s) for s >= 0. +inf for W2 away from s = 1.
    double f_value(double s) const;

    /// F(0): +inf for W2, 1 for GHK/WFR/QR.
    double f_zero() const;

    /// F*(z); z = -inf maps to -F(0).
    double f_star(double z) const;

    /// (F*)'(z); z = -inf maps to 0 (1 for W2).
    double f_star_prime(double z) const;

    /// c(x,y) as a function of the unscaled Euclidean distance s: l(s/eps).
    double cost(double s) const;

    /// l(s) at unit length scale.
    double cost_unit(double s) const;

    /// Largest distance with finite cost: eps*pi/2 for WFR, +inf otherwise.
    double cutoff_radius() const;

    /// r(s) = [-F* o (-l)]'(s)/s at unit scale; s is the distance in
    /// eps-scaled units (callers pass d/eps).
    double r_kernel(double s) const;

    /// Model with the same kind at unit length scale.
    EntropyModel unit_scale() const { return EntropyModel(kind_, 1.0); }

    std::string name() const;
    static EntropyModel parse(const std::string& kind, double epsilon);

private:
    ModelKind kind_;
    double epsilon_;
};

}  // namespace uot

#endif
