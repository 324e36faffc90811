#ifndef HPQ_MODEL_HPP
#define HPQ_MODEL_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hpq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Raised for inputs that violate a documented precondition (bad model
/// string, mismatched base points, non-tangent vectors, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical evaluation leaves its domain (point outside the
/// chart, vanishing field where a diagnostic needs a direction, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class ModelKind { Sphere, Heisenberg3, SL2RUniversal, SphereCrossLine };

/// One of the supported Riemannian model manifolds.
///
/// Spheres and S^2 x R are represented extrinsically (points and tangent
/// vectors carry ambient components); Heisenberg and the universal cover of
/// SL2(R) use global coordinates (x, y, z).
class Manifold {
public:
    static Manifold sphere(int n);
    static Manifold heisenberg();
    static Manifold sl2r();
    static Manifold sphere_cross_line();

    /// Accepts "sphere:<n>", "heisenberg", "sl2r", "s2xr".
    static Manifold parse(std::string_view text);

    ModelKind kind() const { return kind_; }
    int dim() const { return dim_; }

    /// Length of the coordinate vector of a point (n+1 for S^n, 4 for S^2 x R).
    int coord_dim() const;

    bool extrinsic() const { return kind_ == ModelKind::Sphere || kind_ == ModelKind::SphereCrossLine; }

    std::string name() const;

    bool operator==(const Manifold &) const = default;

private:
    Manifold(ModelKind kind, int dim) : kind_(kind), dim_(dim) {}

    ModelKind kind_;
    int dim_;
};

/// A point of a model. Sphere factors are renormalised on construction.
class Point {
public:
    Point(Manifold model, Vec coords);

    const Manifold &model() const { return model_; }
    const Vec &coords() const { return coords_; }
    double operator[](Eigen::Index i) const { return coords_[i]; }

    bool operator==(const Point &other) const { return model_ == other.model_ && coords_ == other.coords_; }

private:
    Manifold model_;
    Vec coords_;
};

/// A tangent vector: ambient components for the extrinsic models, coordinate
/// components otherwise.
class TangentVector {
public:
    TangentVector(Point base, Vec comps);

    const Point &base() const { return base_; }
    const Vec &comps() const { return comps_; }

private:
    Point base_;
    Vec comps_;
};

enum class FrameStrategy {
    Canonical, ///< Gram-Schmidt on the model's fixed seed basis
    Rotated,   ///< canonical frame composed with a fixed orthogonal matrix
};

struct Frame {
    Point base;
    std::vector<TangentVector> vectors;

    /// Frame vectors as columns.
    Mat matrix() const;
};

/// Largest |<x, v>| allowed for a tangent vector on a sphere factor.
inline constexpr double kTangencyTolerance = 1e-10;

/// Orthogonal projection of ambient components onto T_x (identity for the
/// coordinate models).
Mat tangent_projector(const Point &x);

} // namespace hpq

#endif // HPQ_MODEL_HPP
