#include "hpq/harmonicity.hpp"
#include "hpq/sampling.hpp"

#include <cmath>

namespace hpq {

std::string to_string(Equation eq)
{
    switch (eq) {
    case Equation::Section:
        return "section";
    case Equation::Killing:
        return "killing";
    case Equation::MapHorizontal:
        return "map-horizontal";
    case Equation::MapVertical:
        return "map-vertical";
    case Equation::Map:
        return "map";
    }
    return {};
}

Equation parse_equation(const std::string &text)
{
    for (Equation eq :
         {Equation::Section, Equation::Killing, Equation::MapHorizontal, Equation::MapVertical, Equation::Map})
        if (to_string(eq) == text)
            return eq;
    throw InvalidInput("unknown equation '" + text + "'");
}

double killing_defect(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg)
{
    const Mat e = frame_matrix(x, cfg.frame);
    const Mat a = covariant_jacobian(x, sigma.jet(x));
    double worst = 0.0;
    for (Eigen::Index i = 0; i < e.cols(); ++i)
        for (Eigen::Index j = i; j < e.cols(); ++j) {
            const double s = metric_eval(x, a * e.col(i), e.col(j)) + metric_eval(x, a * e.col(j), e.col(i));
            worst = std::max(worst, std::abs(s));
        }
    return worst;
}

namespace {

Vec section_residual(const FieldAtPoint &f, const BundleMetricParams &params)
{
    const double p = params.p(), q = params.q();
    const double one_plus = 1.0 + f.sq_norm;
    const double rhs = p * f.grad_sq - p * q * sq_norm(f.x, f.x_sigma) - q * one_plus * f.lap_half;
    return one_plus * f.rough_lap + 2.0 * p * f.along(f.x_sigma) - rhs * f.sigma;
}

MapResidual map_residual(const FieldAtPoint &f, const BundleMetricParams &params)
{
    const double p = params.p(), q = params.q();
    const Point &x = f.x;
    MapResidual r{Vec::Zero(f.sigma.size()), Vec::Zero(f.sigma.size())};
    for (Eigen::Index i = 0; i < f.frame.cols(); ++i) {
        const Vec ei = f.frame.col(i);
        r.horizontal += curvature(x, f.sigma, f.along(ei), ei);
    }
    r.horizontal = tangent_projector(x) * r.horizontal;

    const double w = 1.0 / (1.0 + f.sq_norm);
    const double denom = 1.0 + q * f.sq_norm;
    if (std::abs(denom) <= kDegenerateFibre)
        throw DomainError("1 + q|sigma|^2 vanishes: h_pq is degenerate along the section");
    const double coeff = ((p * w + q) / denom) * f.grad_sq + (p * q * w / denom) * sq_norm(x, f.x_sigma);
    r.vertical = f.rough_lap + 2.0 * p * w * f.along(f.x_sigma) - coeff * f.sigma;
    return r;
}

void require_killing(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg)
{
    const double defect = killing_defect(sigma, x, cfg);
    if (defect > kKillingGate)
        throw NotKilling("field " + sigma.describe() + " is not Killing (defect " + std::to_string(defect) + ")");
}

} // namespace

Vec section_residual(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                     const OperatorConfig &cfg)
{
    return section_residual(analyze(sigma, x, cfg), params);
}

Vec killing_residual(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                     const OperatorConfig &cfg)
{
    require_killing(sigma, x, cfg);
    const FieldAtPoint f = analyze(sigma, x, cfg);
    const double p = params.p(), q = params.q();
    const double one_plus = 1.0 + f.sq_norm;
    const Vec ric = tangent_projector(x) * ricci(x, f.sigma, cfg.frame);
    const Vec geo = f.along(f.sigma); // nabla_s s
    const double rhs = p * f.grad_sq - p * q * sq_norm(x, geo) - q * one_plus * f.lap_half;
    return one_plus * ric - 2.0 * p * f.along(geo) - rhs * f.sigma;
}

MapResidual map_residual(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                         const OperatorConfig &cfg)
{
    return map_residual(analyze(sigma, x, cfg), params);
}

EquivalenceResult equivalence_check(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                                    const OperatorConfig &cfg)
{
    const FieldAtPoint f = analyze(sigma, x, cfg);
    const Vec r6 = section_residual(f, params);
    const Vec r7 = map_residual(f, params).vertical;
    return {std::sqrt(sq_norm(x, r6)), std::sqrt(sq_norm(x, r7))};
}

double hopf_p_for_scale(double k)
{
    if (!(k > 0.0) || !std::isfinite(k))
        throw InvalidInput("Hopf scale must be positive");
    return 1.0 + 1.0 / (k * k);
}

double ode_F_residual(double f, double df, double d2f, double t, double p)
{
    if (!(t > 0.0 && t < 1.0))
        throw DomainError("profile equation is posed on t in (0, 1)");
    return (1.0 + t * f * f) * (4.0 * t * (t - 1.0) * d2f + (10.0 * t - 8.0) * df + f) +
           4.0 * p * (1.0 - t) * (t * f * f * df + t * t * f * df * df);
}

double ode_F_residual(const Profile &profile, double t, double p)
{
    if (!(t > 0.0 && t < 1.0))
        throw DomainError("profile equation is posed on t in (0, 1)");
    return ode_F_residual(profile.value(t), profile.first(t), profile.second(t), t, p);
}

double killing_norm_identity(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                             const OperatorConfig &cfg)
{
    require_killing(sigma, x, cfg);
    const FieldAtPoint f = analyze(sigma, x, cfg);
    const double p = params.p(), q = params.q();
    const double ric = metric_eval(x, ricci(x, f.sigma, cfg.frame), f.sigma);
    return (1.0 + (1.0 - p) * f.sq_norm) * ric + p * (2.0 + q * f.sq_norm) * sq_norm(x, f.along(f.sigma));
}

GradientDiagnostics gradient_diag_s2(const ScalarField &f, double eigenvalue, const BundleMetricParams &params,
                                     const Point &x, const OperatorConfig &cfg)
{
    if (!(x.model() == Manifold::sphere(2)))
        throw InvalidInput("gradient diagnostics are defined on S^2");
    const double lap = function_laplacian(f, x, cfg);
    const double fx = f(x);
    if (std::abs(lap - eigenvalue * fx) > 1e-6)
        throw InvalidInput("scalar field is not an eigenfunction with the stated eigenvalue");

    const FieldAtPoint s = analyze(f.gradient_field(), x, cfg);
    const double nrm = std::sqrt(s.sq_norm);
    if (!(nrm > 1e-12))
        throw DomainError("gradient vanishes; diagnostics undefined at this point");
    const Vec unit = s.sigma / nrm;
    const Vec geo = s.along(s.sigma);
    const Vec v = s.along(geo);
    const double defect = (v - v.dot(unit) * unit).norm();

    const double p = params.p(), q = params.q();
    const double one_plus = 1.0 + s.sq_norm;
    const double factor = (p * s.grad_sq - p * q * geo.squaredNorm() - q * one_plus * s.lap_half -
                           (eigenvalue - 1.0) * one_plus) /
                          (2.0 * p);
    return {defect, s.lap_half, factor};
}

double residual_norm(Equation eq, const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                     const OperatorConfig &cfg)
{
    switch (eq) {
    case Equation::Section:
        return std::sqrt(sq_norm(x, section_residual(sigma, params, x, cfg)));
    case Equation::Killing:
        return std::sqrt(sq_norm(x, killing_residual(sigma, params, x, cfg)));
    default:
        break;
    }
    const MapResidual m = map_residual(sigma, params, x, cfg);
    const double h = sq_norm(x, m.horizontal), v = sq_norm(x, m.vertical);
    if (eq == Equation::MapHorizontal)
        return std::sqrt(h);
    if (eq == Equation::MapVertical)
        return std::sqrt(v);
    return std::sqrt(h + v);
}

ResidualReport residual_report(Equation eq, const VectorFieldSpec &sigma, const BundleMetricParams &params,
                               const std::vector<Point> &samples, std::uint64_t seed, const OperatorConfig &cfg)
{
    if (samples.empty())
        throw InvalidInput("residual report needs at least one sample");
    ResidualReport r{eq, params, {}, 0.0, 0.0, sigma.describe(), seed};
    r.per_point.reserve(samples.size());
    double sum = 0.0;
    for (const Point &x : samples) {
        const double v = residual_norm(eq, sigma, params, x, cfg);
        if (!std::isfinite(v))
            throw DomainError("non-finite residual for " + sigma.describe());
        r.per_point.emplace_back(x, v);
        r.max = std::max(r.max, v);
        sum += v;
    }
    r.mean = sum / static_cast<double>(samples.size());
    return r;
}

ResidualReport residual_report(Equation eq, const VectorFieldSpec &sigma, const BundleMetricParams &params,
                               const Manifold &model, int count, std::uint64_t seed, const OperatorConfig &cfg)
{
    sigma.check_compatible(model);
    return residual_report(eq, sigma, params, sample_points_for(sigma, model, count, seed), seed, cfg);
}

} // namespace hpq
