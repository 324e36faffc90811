#include "hpq/bundle_metric.hpp"

#include <cmath>

namespace hpq {

BundleMetricParams::BundleMetricParams(double p, double q) : p_(p), q_(q)
{
    if (!std::isfinite(p) || !std::isfinite(q))
        throw InvalidInput("bundle metric parameters must be finite");
}

BundlePoint::BundlePoint(Point b, Vec fiber) : base(std::move(b)), e(std::move(fiber))
{
    TangentVector check(base, e);
    (void)check;
}

double omega(const Point &x, const Vec &e) { return 1.0 / (1.0 + sq_norm(x, e)); }

double omega(const TangentVector &e) { return omega(e.base(), e.comps()); }

double h_pq_eval(const BundleMetricParams &params, const BundleTangent &a, const BundleTangent &b)
{
    if (!(a.at.base == b.at.base) || a.at.e != b.at.e)
        throw InvalidInput("h_pq_eval: tangent vectors at different points of TM");
    const Point &x = a.at.base;
    const Vec &e = a.at.e;
    const double wp = std::pow(omega(x, e), params.p());
    return metric_eval(x, a.horizontal, b.horizontal) +
           wp * (metric_eval(x, a.vertical, b.vertical) +
                 params.q() * metric_eval(x, a.vertical, e) * metric_eval(x, b.vertical, e));
}

BundleTangent tilde_nabla(const BundleMetricParams &params, LiftCase lift, const BundlePoint &at, const Vec &X,
                          const Vec &Y, const Vec &dY)
{
    const Point &x = at.base;
    const Vec &e = at.e;
    const auto d = e.size();
    const Vec dy = dY.size() == 0 ? Vec::Zero(d) : dY;
    const Mat proj = tangent_projector(x);
    const double w = omega(x, e);
    const double wp = std::pow(w, params.p());
    const double p = params.p(), q = params.q();

    BundleTangent out{at, Vec::Zero(d), Vec::Zero(d)};
    switch (lift) {
    case LiftCase::HH:
        out.horizontal = dy;
        out.vertical = -0.5 * proj * curvature(x, X, Y, e);
        break;
    case LiftCase::HV:
        out.horizontal = 0.5 * wp * proj * curvature(x, e, Y, X);
        out.vertical = dy;
        break;
    case LiftCase::VH:
        out.horizontal = 0.5 * wp * proj * curvature(x, e, X, Y);
        break;
    case LiftCase::VV: {
        // U is the vertical vector whose K-image is e itself.
        const double xe = metric_eval(x, X, e), ye = metric_eval(x, Y, e);
        const double denom = 1.0 + q * sq_norm(x, e);
        if (std::abs(denom) <= kDegenerateFibre)
            throw DomainError("1 + q|e|^2 vanishes: h_pq is degenerate at this point of TM");
        out.vertical = -p * w * (xe * Y + ye * X) + ((p * w + q) / denom) * metric_eval(x, X, Y) * e +
                       (p * q * w / denom) * xe * ye * e;
        break;
    }
    }
    return out;
}

TensionValue tension_field(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                           const OperatorConfig &cfg, const TensionOptions &options)
{
    const FieldAtPoint f = analyze(sigma, x, cfg);
    const BundlePoint at(x, f.sigma);
    const auto d = f.sigma.size();
    TensionValue tau{Vec::Zero(d), Vec::Zero(d)};

    // With a frame extension satisfying nabla_{e_i} E_i = 0 at x, the
    // dsigma(nabla_{e_i} e_i) terms vanish and nabla_{e_i}(nabla_{E_i} sigma)
    // is the second covariant derivative.
    for (Eigen::Index i = 0; i < f.frame.cols(); ++i) {
        const Vec ei = f.frame.col(i);
        const Vec di = f.along(ei);
        const Vec dd = second_covariant(x, f.jet, ei, ei);
        const BundleTangent parts[] = {
            tilde_nabla(params, LiftCase::HH, at, ei, ei),
            tilde_nabla(params, LiftCase::VH, at, di, ei),
            tilde_nabla(params, LiftCase::HV, at, ei, di, dd),
            tilde_nabla(params, LiftCase::VV, at, di, di),
        };
        for (const auto &part : parts) {
            tau.horizontal += part.horizontal;
            tau.vertical += part.vertical;
        }
    }
    if (options.horizontal_exponent) {
        const double w = omega(x, f.sigma);
        tau.horizontal *= std::pow(w, *options.horizontal_exponent - params.p());
    }
    return tau;
}

double vertical_energy_density(const VectorFieldSpec &sigma, const BundleMetricParams &params, const Point &x,
                               const OperatorConfig &cfg)
{
    const FieldAtPoint f = analyze(sigma, x, cfg);
    const double wp = std::pow(omega(x, f.sigma), params.p());
    // sum_i <nabla_i s, s>^2 = |X(s)|^2
    return 0.5 * wp * (f.grad_sq + params.q() * sq_norm(x, f.x_sigma));
}

double vertical_energy(const VectorFieldSpec &sigma, const BundleMetricParams &params,
                       const std::vector<Point> &samples, const std::vector<double> &weights,
                       const OperatorConfig &cfg)
{
    if (samples.empty())
        throw InvalidInput("vertical_energy needs at least one sample");
    if (samples.size() != weights.size())
        throw InvalidInput("vertical_energy: samples and weights differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
        total += weights[i] * vertical_energy_density(sigma, params, samples[i], cfg);
    return total;
}

} // namespace hpq
