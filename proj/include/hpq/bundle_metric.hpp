#ifndef HPQ_BUNDLE_METRIC_HPP
#define HPQ_BUNDLE_METRIC_HPP

#include "hpq/operators.hpp"

#include <optional>
#include <vector>

namespace hpq {

/// Parameters (p, q) of the generalised Cheeger-Gromoll metric
///
///   h(A, B) = g(dpi A, dpi B) + w(e)^p [ g(KA, KB) + q g(KA, e) g(KB, e) ],
///   w(e) = 1 / (1 + |e|^2).
///
/// For q < 0 the metric is positive definite only near the zero section;
/// everything is still evaluated and the flag below is raised.
class BundleMetricParams {
public:
    BundleMetricParams(double p, double q);

    double p() const { return p_; }
    double q() const { return q_; }
    bool only_near_zero_section() const { return q_ < 0.0; }

private:
    double p_;
    double q_;
};

/// Below this |1 + q|e|^2| the vertical part of h_pq is treated as
/// degenerate; the connection and the harmonic-map equation divide by it.
inline constexpr double kDegenerateFibre = 1e-12;

/// A point e of TM over its base point.
struct BundlePoint {
    BundlePoint(Point base, Vec e);

    Point base;
    Vec e;
};

/// A tangent vector to TM split as dpi-image (horizontal) and K-image
/// (vertical).
struct BundleTangent {
    BundlePoint at;
    Vec horizontal;
    Vec vertical;
};

struct TensionValue {
    Vec vertical;
    Vec horizontal;
};

double omega(const Point &x, const Vec &e);
double omega(const TangentVector &e);

double h_pq_eval(const BundleMetricParams &params, const BundleTangent &a, const BundleTangent &b);

enum class LiftCase { HH, HV, VH, VV };

/// Levi-Civita connection of h_{p,q} on lifts: nabla~_{X^a} Y^b for the case
/// (a, b). `dY` is nabla_X Y of the field extending Y on the base; it only
/// enters the HH and HV cases and defaults to zero.
BundleTangent tilde_nabla(const BundleMetricParams &params, LiftCase lift, const BundlePoint &at, const Vec &X,
                          const Vec &Y, const Vec &dY = Vec());

struct TensionOptions {
    /// Exponent of w(sigma) on the horizontal part; p when unset.
    std::optional<double> horizontal_exponent;
};

/// Tension field of sigma viewed as a map M -> (TM, h_{p,q}), assembled from
/// tilde_nabla applied to dsigma(e_i) = e_i^h + (nabla_{e_i} sigma)^v over a
/// frame.
TensionValue tension_field(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                           const OperatorConfig &cfg = {}, const TensionOptions &options = {});

/// Integrand |d^v sigma|^2 / 2 of the vertical energy at x.
double vertical_energy_density(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                               const OperatorConfig &cfg = {});

/// Quadrature of the vertical energy density.
double vertical_energy(const VectorFieldSpec &sigma, const BundleMetricParams &params,
                       const std::vector<Point> &samples, const std::vector<double> &weights,
                       const OperatorConfig &cfg = {});

} // namespace hpq

#endif // HPQ_BUNDLE_METRIC_HPP
