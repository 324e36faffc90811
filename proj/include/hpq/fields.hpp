#ifndef HPQ_FIELDS_HPP
#define HPQ_FIELDS_HPP

#include "hpq/model.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hpq {

/// Value, first and second partial derivatives of a vector field in the
/// model's representation (ambient components for extrinsic models).
/// hessian[i](a, b) = d^2 sigma^i / dx^a dx^b.
struct FieldJet {
    Vec value;
    Mat jacobian;
    std::vector<Mat> hessian;

    static FieldJet zero(int d);
};

/// Symmetric matrix defining the quadratic form lambda(x) = Bx.x.
class QuadraticFormSpec {
public:
    /// Symmetrises the input.
    explicit QuadraticFormSpec(const Mat &b);

    const Mat &matrix() const { return b_; }
    Eigen::Index size() const { return b_.rows(); }

    /// B^k, k >= 0.
    Mat power(int k) const;

private:
    Mat b_;
};

/// A scalar profile F with analytic first and second derivatives.
struct Profile {
    std::function<double(double)> value;
    std::function<double(double)> first;
    std::function<double(double)> second;
    std::string name;
    bool singular_at_zero = false;

    /// F(t) = c t^a.
    static Profile power(double c, double a);
    static Profile constant(double c);
};

/// Closed-form vector field from the catalog, closed under sums and scaling.
class VectorFieldSpec {
public:
    static VectorFieldSpec zero();
    /// k J x on an odd sphere, J(x1, x2, ...) = (-x2, x1, ...).
    static VectorFieldSpec hopf(double k);
    /// axis x x on S^2.
    static VectorFieldSpec rotation_s2(const Eigen::Vector3d &axis);
    /// a - <a,x> x on S^n.
    static VectorFieldSpec conformal(const Vec &a);
    /// B^k x - (B^k x . x) x on S^n.
    static VectorFieldSpec quadratic_gradient(const QuadraticFormSpec &b, int k = 1);
    /// F(|x|^2 - (axis.x)^2) (axis x x) on S^2.
    static VectorFieldSpec profiled_rotation(Profile f, const Eigen::Vector3d &axis);
    /// The model's frame field E_index, 1-based. Heisenberg and sl2r: the
    /// left-invariant frames E1..E3; s2xr: index 3 is d/dt.
    static VectorFieldSpec frame_field(const Manifold &model, int index);

    FieldJet jet(const Point &x) const;
    Vec operator()(const Point &x) const;

    /// Throws InvalidInput if the field is not defined on the model.
    void check_compatible(const Manifold &model) const;
    bool compatible(const Manifold &model) const;

    std::string describe() const;

    /// Whether the field is a catalog Killing field (Hopf, rotations,
    /// Heisenberg E3, sl2r E1, d/dt and their multiples).
    bool is_known_killing() const;

    /// Rotation axis of a profiled rotation whose profile blows up at the
    /// axis; samplers keep away from it.
    std::optional<Eigen::Vector3d> singular_axis() const;

    friend VectorFieldSpec operator+(const VectorFieldSpec &a, const VectorFieldSpec &b);
    friend VectorFieldSpec operator*(double c, const VectorFieldSpec &a);

    struct Node;

private:
    explicit VectorFieldSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct ScalarJet {
    double value = 0.0;
    Vec gradient;
    Mat hessian;
};

/// Polynomial scalar fields of degree <= 2 (restricted to the sphere when
/// the model is extrinsic).
class ScalarField {
public:
    static ScalarField constant(double c);
    /// <a, x>
    static ScalarField linear(const Vec &a);
    /// x^T C x, C symmetrised.
    static ScalarField quadratic(const Mat &c);
    /// Coordinate product x_i x_j (0-based).
    static ScalarField product(int dim, int i, int j);

    ScalarJet jet(const Point &x) const;
    double operator()(const Point &x) const { return jet(x).value; }

    /// Spherical gradient as a catalog field.
    VectorFieldSpec gradient_field() const;

    int degree() const { return degree_; }

private:
    ScalarField(int degree, double c, Vec a, Mat q) : degree_(degree), c_(c), a_(std::move(a)), q_(std::move(q)) {}

    int degree_;
    double c_;
    Vec a_;
    Mat q_;
};

// -- quadratic form calculus ------------------------------------------------

struct PowerFormValue {
    double lambda;
    Vec sigma;
};

/// lambda_k(x) = B^k x . x and sigma_k(x) = B^k x - lambda_k x.
template <typename MatDerived, typename VecDerived>
PowerFormValue sigma_lambda_k(const Eigen::MatrixBase<MatDerived> &b_power_k, const Eigen::MatrixBase<VecDerived> &x)
{
    Vec bx = b_power_k * x;
    const double lambda = bx.dot(x);
    return {lambda, bx - lambda * x};
}

PowerFormValue sigma_lambda_k(const QuadraticFormSpec &b, int k, const Point &x);

/// L_k X = B^k X - (B^k X . x) x.
template <typename MatDerived, typename XDerived, typename VDerived>
Vec apply_L_k(const Eigen::MatrixBase<MatDerived> &b_power_k, const Eigen::MatrixBase<XDerived> &x,
              const Eigen::MatrixBase<VDerived> &v)
{
    Vec bv = b_power_k * v;
    return bv - bv.dot(x) * x;
}

Vec apply_L_k(const QuadraticFormSpec &b, int k, const Point &x, const TangentVector &v);

} // namespace hpq

#endif // HPQ_FIELDS_HPP
