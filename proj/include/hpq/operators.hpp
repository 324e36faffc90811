#ifndef HPQ_OPERATORS_HPP
#define HPQ_OPERATORS_HPP

#include "hpq/fields.hpp"
#include "hpq/geometry.hpp"

namespace hpq {

struct OperatorConfig {
    double fd_step = 1e-5;
    FrameStrategy frame = FrameStrategy::Canonical;

    /// Throws InvalidInput unless fd_step lies in [1e-9, 1e-2].
    void validate() const;
};

/// Every first and second order quantity of a field at one point, computed
/// from a single frame pass. The residual evaluators are built on this.
struct FieldAtPoint {
    Point x;
    Mat frame;        ///< orthonormal frame, columns e_i
    FieldJet jet;
    Mat nabla;        ///< covariant jacobian: nabla_X sigma = nabla * X
    Vec sigma;
    double sq_norm;   ///< |sigma|^2
    double grad_sq;   ///< |nabla sigma|^2 (Hilbert-Schmidt)
    Vec x_sigma;      ///< X(sigma) = grad |sigma|^2 / 2
    Vec rough_lap;    ///< nabla^* nabla sigma = -trace nabla^2 sigma
    double lap_half;  ///< Delta(|sigma|^2 / 2), positive-spectrum sign
    double div;

    Vec along(const Vec &X) const { return nabla * X; }
};

FieldAtPoint analyze(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg = {});

/// nabla^2_{X,Y} sigma, tensorial in X and Y.
Vec second_cov(const VectorFieldSpec &sigma, const Point &x, const Vec &X, const Vec &Y);
TangentVector second_cov(const VectorFieldSpec &sigma, const TangentVector &X, const TangentVector &Y);

Vec rough_laplacian(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg = {});

/// Riemannian Hessian of a scalar field at x.
Mat hessian(const ScalarField &f, const Point &x);

/// Delta f = -trace Hess f.
double function_laplacian(const ScalarField &f, const Point &x, const OperatorConfig &cfg = {});

/// X(sigma), the tangent vector dual to Y -> <nabla_Y sigma, sigma>.
Vec X_of_sigma(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg = {});

double divergence(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg = {});

struct FieldNorms {
    double sq_norm;        ///< |sigma|^2
    double grad_sq_norm;   ///< |nabla sigma|^2
    double x_sq_norm;      ///< |X(sigma)|^2
    double lap_half_sq;    ///< Delta(|sigma|^2 / 2)
};

FieldNorms norms_bundle(const VectorFieldSpec &sigma, const Point &x, const OperatorConfig &cfg = {});

} // namespace hpq

#endif // HPQ_OPERATORS_HPP
