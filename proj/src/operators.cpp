#include "hpq/operators.hpp"

namespace hpq {

void OperatorConfig::validate() const
{
    if (!(fd_step >= 1e-9 && fd_step <= 1e-2))
        throw InvalidInput("fd_step must lie in [1e-9, 1e-2]");
}

FieldAtPoint analyze(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg)
{
    FieldAtPoint f{x, frame_matrix(x, cfg.frame), sigma.jet(x), {}, {}, 0, 0, {}, {}, 0, 0};
    f.nabla = covariant_jacobian(x, f.jet);
    f.sigma = f.jet.value;
    f.sq_norm = sq_norm(x, f.sigma);

    const auto d = f.sigma.size();
    f.x_sigma = Vec::Zero(d);
    f.rough_lap = Vec::Zero(d);
    for (Eigen::Index i = 0; i < f.frame.cols(); ++i) {
        const Vec e = f.frame.col(i);
        const Vec de = f.nabla * e;
        f.grad_sq += sq_norm(x, de);
        f.x_sigma += metric_eval(x, de, f.sigma) * e;
        f.div += metric_eval(x, de, e);
        f.rough_lap -= second_covariant(x, f.jet, e, e);
    }
    // Delta(|s|^2/2) = <nabla^* nabla s, s> - |nabla s|^2
    f.lap_half = metric_eval(x, f.rough_lap, f.sigma) - f.grad_sq;
    return f;
}

Vec second_cov(const VectorFieldSpec &sigma, const Point &x, const Vec &X, const Vec &Y)
{
    return second_covariant(x, sigma.jet(x), X, Y);
}

TangentVector second_cov(const VectorFieldSpec &sigma, const TangentVector &X, const TangentVector &Y)
{
    if (!(X.base() == Y.base()))
        throw InvalidInput("second_cov: vectors at different base points");
    return TangentVector(X.base(), second_cov(sigma, X.base(), X.comps(), Y.comps()));
}

Vec rough_laplacian(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg)
{
    return analyze(sigma, x, cfg).rough_lap;
}

Mat hessian(const ScalarField &f, const Point &x)
{
    const ScalarJet j = f.jet(x);
    if (x.model().extrinsic()) {
        const Mat p = tangent_projector(x);
        const Mat s = shape_operator(x);
        const double radial = unit_normal(x).dot(j.gradient);
        return p * (j.hessian - radial * s) * p;
    }
    const Christoffel c = christoffel(x);
    Mat h = j.hessian;
    for (std::size_t i = 0; i < c.gamma.size(); ++i)
        h -= j.gradient[static_cast<Eigen::Index>(i)] * c.gamma[i];
    return h;
}

double function_laplacian(const ScalarField &f, const Point &x, const OperatorConfig &cfg)
{
    const Mat h = hessian(f, x);
    const Mat e = frame_matrix(x, cfg.frame);
    double trace = 0.0;
    for (Eigen::Index i = 0; i < e.cols(); ++i)
        trace += e.col(i).dot(h * e.col(i));
    return -trace;
}

Vec X_of_sigma(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg)
{
    return analyze(sigma, x, cfg).x_sigma;
}

double divergence(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg)
{
    return analyze(sigma, x, cfg).div;
}

FieldNorms norms_bundle(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg)
{
    const FieldAtPoint f = analyze(sigma, x, cfg);
    return {f.sq_norm, f.grad_sq, sq_norm(x, f.x_sigma), f.lap_half};
}

} // namespace hpq
