#ifndef HPQ_FD_ORACLE_HPP
#define HPQ_FD_ORACLE_HPP

#include "hpq/fields.hpp"
#include "hpq/model.hpp"

#include <functional>
#include <vector>

namespace hpq {

/// Finite-difference ground truth for the analytic operators. Everything
/// here uses only pointwise values of fields and of the metric matrix, never
/// jets or the closed-form Christoffel symbols.
namespace fd {

using FieldFn = std::function<Vec(const Point &)>;
using ScalarFn = std::function<double(const Point &)>;

FieldFn values_of(const VectorFieldSpec &sigma);

/// Geodesic exp_x(t X) on the extrinsic models; straight coordinate line
/// x + t X on the coordinate models.
Point step(const Point &x, const Vec &X, double t);

/// Central-difference partials d_l g of the metric matrix.
std::vector<Mat> metric_partials(const Point &x, double h = 1e-5);

/// Christoffel symbols from finite-difference metric partials.
std::vector<Mat> christoffel(const Point &x, double h = 1e-5);

/// nabla_X sigma.
Vec levi_civita(const FieldFn &sigma, const Point &x, const Vec &X, double h = 1e-5);

/// nabla^2_{X,Y} sigma by nested central differences.
Vec second_cov(const FieldFn &sigma, const Point &x, const Vec &X, const Vec &Y, double h = 1e-4);

/// R(X,Y)Z through the Ricci identity nabla^2_{X,Y} W - nabla^2_{Y,X} W on
/// an extension W of Z.
Vec curvature(const Point &x, const Vec &X, const Vec &Y, const Vec &Z, double h = 1e-4);

/// Riemannian gradient of a scalar function.
Vec gradient(const ScalarFn &f, const Point &x, double h = 1e-5);

/// Delta f = -trace Hess f.
double function_laplacian(const ScalarFn &f, const Point &x, double h = 1e-4);

/// Lie bracket [U, V] of coordinate-model fields.
Vec lie_bracket(const FieldFn &u, const FieldFn &v, const Point &x, double h = 1e-5);

} // namespace fd
} // namespace hpq

#endif // HPQ_FD_ORACLE_HPP
