#ifndef HPQ_HARMONICITY_HPP
#define HPQ_HARMONICITY_HPP

#include "hpq/bundle_metric.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hpq {

/// Which equation a residual belongs to.
enum class Equation {
    Section,       ///< harmonic-section equation (variations through sections)
    Killing,       ///< its Killing-field specialisation
    MapHorizontal, ///< horizontal part of the harmonic-map equation
    MapVertical,   ///< vertical part of the harmonic-map equation
    Map,           ///< both parts
};

std::string to_string(Equation eq);
Equation parse_equation(const std::string &text);

/// Rejected input to the Killing-specific evaluators.
class NotKilling : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

inline constexpr double kKillingGate = 1e-6;

/// max_ij |<nabla_{e_i} s, e_j> + <nabla_{e_j} s, e_i>| over the frame.
double killing_defect(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg = {});

/// (1+|s|^2) nabla^*nabla s + 2p nabla_{X(s)} s
///   - [p|nabla s|^2 - pq|X(s)|^2 - q(1+|s|^2) Delta(|s|^2/2)] s
Vec section_residual(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                     const OperatorConfig &cfg = {});

/// Killing form of the section equation, with Ric(s) in place of the rough
/// Laplacian and -nabla_s s in place of X(s). Throws NotKilling when the
/// field fails the Killing check at x by more than kKillingGate.
Vec killing_residual(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                     const OperatorConfig &cfg = {});

struct MapResidual {
    Vec horizontal; ///< sum_i R(s, nabla_{e_i} s) e_i
    Vec vertical;
};

/// Throws DomainError where 1 + q|s|^2 = 0 (the equation divides by it).
MapResidual map_residual(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                         const OperatorConfig &cfg = {});

struct EquivalenceResult {
    double section_norm; ///< |section residual|
    double map_norm;     ///< |vertical harmonic-map residual|
};

/// Same domain as map_residual.
EquivalenceResult equivalence_check(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                                    const OperatorConfig &cfg = {});

/// The p that makes the Hopf field of norm k harmonic: 1 + 1/k^2.
double hopf_p_for_scale(double k);

/// Residual of the profile equation for F(x^2+y^2) times the rotation field
/// on S^2, at t in (0, 1).
double ode_F_residual(double f, double df, double d2f, double t, double p);
double ode_F_residual(const Profile &profile, double t, double p);

/// (1 + (1-p)|s|^2) Ric(s,s) + p (2 + q|s|^2) |nabla_s s|^2 for Killing s.
double killing_norm_identity(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                             const OperatorConfig &cfg = {});

struct GradientDiagnostics {
    double colinearity_defect;  ///< part of nabla_{nabla_s s} s orthogonal to s
    double laplacian_half_norm; ///< Delta(|s|^2/2)
    /// Factor f with nabla_{nabla_s s} s = f s that the harmonic-section
    /// equation for an eigenfunction gradient would force.
    double harmonic_factor;
};

/// Diagnostics for s = grad f on S^2 with Delta f = eigenvalue * f. The
/// eigen-equation is verified at x to 1e-6; throws DomainError when s(x) = 0.
GradientDiagnostics gradient_diag_s2(const ScalarField &f, double eigenvalue, const BundleMetricParams &params,
                                     const Point &x, const OperatorConfig &cfg = {});

/// Norm in g of the residual of the chosen equation at x.
double residual_norm(Equation eq, const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                     const OperatorConfig &cfg = {});

struct ResidualReport {
    Equation equation;
    BundleMetricParams params;
    std::vector<std::pair<Point, double>> per_point;
    double max = 0.0;
    double mean = 0.0;
    std::string field;
    std::uint64_t seed = 0;
};

ResidualReport residual_report(Equation eq, const VectorFieldSpec &sigma, const BundleMetricParams &params,
                               const std::vector<Point> &samples, std::uint64_t seed, const OperatorConfig &cfg = {});

/// Seeded samples of the field's model (avoiding singular axes).
ResidualReport residual_report(Equation eq, const VectorFieldSpec &sigma, const BundleMetricParams &params,
                               const Manifold &model, int count, std::uint64_t seed, const OperatorConfig &cfg = {});

} // namespace hpq

#endif // HPQ_HARMONICITY_HPP
