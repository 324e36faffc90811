#ifndef HPQ_GEOMETRY_HPP
#define HPQ_GEOMETRY_HPP

#include "hpq/fields.hpp"
#include "hpq/model.hpp"

#include <vector>

namespace hpq {

/// Gram matrix of the metric in the model's representation. For the
/// extrinsic models this is the ambient identity (the induced metric on
/// tangent vectors).
Mat metric_matrix(const Point &x);

/// Analytic partial derivatives d_l g of the coordinate metric; all zero for
/// extrinsic models.
std::vector<Mat> metric_partials(const Point &x);

/// Analytic second partials d_l d_m g, indexed [l][m].
std::vector<std::vector<Mat>> metric_second_partials(const Point &x);

double metric_eval(const Point &x, const Vec &u, const Vec &v);
double metric_eval(const TangentVector &u, const TangentVector &v);

inline double sq_norm(const Point &x, const Vec &v) { return metric_eval(x, v, v); }

/// Christoffel symbols of the second kind, gamma[i](j, k) = Gamma^i_jk, for
/// the coordinate models. Computed from the hand-derived metric partials
/// through the Koszul formula.
struct Christoffel {
    std::vector<Mat> gamma;
    /// d_l Gamma^i_jk, indexed [l][i](j, k).
    std::vector<std::vector<Mat>> dgamma;

    /// Gamma(X, Y)^i = Gamma^i_jk X^j Y^k.
    Vec contract(const Vec &x, const Vec &y) const;
};

Christoffel christoffel(const Point &x);

/// Unit normal of the extrinsic models (zero vector otherwise).
Vec unit_normal(const Point &x);

/// Shape operator S X = D_X nu of the extrinsic models on tangent vectors.
Mat shape_operator(const Point &x);

/// R(X, Y) Z with R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
Vec curvature(const Point &x, const Vec &X, const Vec &Y, const Vec &Z);
TangentVector curvature_op(const TangentVector &X, const TangentVector &Y, const TangentVector &Z);

/// Curvature components in the index convention R_ijkl = g(R(e_i, e_j) e_l, e_k)
/// with respect to the canonical frame; 1-based indices as usually printed.
double curvature_component(const Point &x, int i, int j, int k, int l);

/// Ric(v) = sum_i R(v, e_i) e_i.
Vec ricci(const Point &x, const Vec &v, FrameStrategy strategy = FrameStrategy::Canonical);
TangentVector ricci_op(const TangentVector &v);

/// Deterministic metric-orthonormal frame at x.
///
/// Spheres: greedy pivoted Gram-Schmidt on the projected ambient basis
/// (ties resolved by lowest index). Heisenberg: Gram-Schmidt on
/// (d_x, d_z, d_y), returned as E1 = d_x, E2 = d_y + x d_z, E3 = d_z.
/// sl2r: Gram-Schmidt on (d_x, d_y, d_z), giving E1 = d_x,
/// E2 = z d_y - d_x, E3 = z d_z.
Frame orthonormal_frame(const Point &x, FrameStrategy strategy = FrameStrategy::Canonical);

/// Frame vectors as columns, without the TangentVector wrappers.
Mat frame_matrix(const Point &x, FrameStrategy strategy = FrameStrategy::Canonical);

/// Matrix A with nabla_X sigma = A X for tangent X.
Mat covariant_jacobian(const Point &x, const FieldJet &jet);

/// nabla_X sigma at x.
Vec levi_civita(const VectorFieldSpec &sigma, const Point &x, const Vec &X);
TangentVector levi_civita(const VectorFieldSpec &sigma, const TangentVector &X);

/// Second covariant derivative nabla^2_{X,Y} sigma from the analytic jet.
Vec second_covariant(const Point &x, const FieldJet &jet, const Vec &X, const Vec &Y);

} // namespace hpq

#endif // HPQ_GEOMETRY_HPP
