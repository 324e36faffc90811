#include "hpq/fields.hpp"

#include <cmath>
#include <sstream>
#include <variant>

namespace hpq {

FieldJet FieldJet::zero(int d)
{
    return {Vec::Zero(d), Mat::Zero(d, d), std::vector<Mat>(static_cast<std::size_t>(d), Mat::Zero(d, d))};
}

QuadraticFormSpec::QuadraticFormSpec(const Mat &b)
{
    if (b.rows() != b.cols() || b.rows() < 2)
        throw InvalidInput("quadratic form needs a square matrix of size >= 2");
    if (!b.allFinite())
        throw InvalidInput("quadratic form has non-finite entries");
    b_ = 0.5 * (b + b.transpose());
}

Mat QuadraticFormSpec::power(int k) const
{
    if (k < 0)
        throw InvalidInput("negative power of a quadratic form");
    Mat r = Mat::Identity(b_.rows(), b_.cols());
    for (int i = 0; i < k; ++i)
        r = r * b_;
    return r;
}

Profile Profile::power(double c, double a)
{
    std::ostringstream name;
    name << c << "*t^" << a;
    return {[c, a](double t) { return c * std::pow(t, a); },
            [c, a](double t) { return a == 0.0 ? 0.0 : c * a * std::pow(t, a - 1.0); },
            [c, a](double t) { return (a == 0.0 || a == 1.0) ? 0.0 : c * a * (a - 1.0) * std::pow(t, a - 2.0); },
            name.str(), a < 0.0};
}

Profile Profile::constant(double c) { return power(c, 0.0); }

namespace {

Eigen::Matrix3d cross_matrix(const Eigen::Vector3d &w)
{
    Eigen::Matrix3d m;
    m << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
    return m;
}

Eigen::Vector3d unit_axis(const Eigen::Vector3d &axis)
{
    const double n = axis.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw InvalidInput("rotation axis must be a non-zero finite vector");
    return axis / n;
}

struct ZeroField {};
struct LinearField { // sigma = A x
    Mat a;
    std::string name;
    bool odd_sphere_only;
};
struct RotationField {
    Eigen::Vector3d axis;
};
struct ConformalField {
    Vec a;
};
struct QuadraticField {
    QuadraticFormSpec b;
    int k;
    Mat bk;
};
struct ProfiledField {
    Profile f;
    Eigen::Vector3d axis;
};
struct FrameFieldSpec {
    Manifold model;
    int index;
};
struct SumField {
    VectorFieldSpec a, b;
};
struct ScaledField {
    double c;
    VectorFieldSpec a;
};

} // namespace

struct VectorFieldSpec::Node {
    std::variant<ZeroField, LinearField, RotationField, ConformalField, QuadraticField, ProfiledField, FrameFieldSpec,
                 SumField, ScaledField>
        v;
};

VectorFieldSpec VectorFieldSpec::zero() { return VectorFieldSpec(std::make_shared<Node>(Node{ZeroField{}})); }

VectorFieldSpec VectorFieldSpec::hopf(double k)
{
    if (!(k > 0.0) || !std::isfinite(k))
        throw InvalidInput("Hopf scale must be positive");
    std::ostringstream name;
    name << "hopf(k=" << k << ")";
    // The matrix is sized lazily per sphere; store the scale in a 2x2 seed.
    Mat seed(2, 2);
    seed << 0, -k, k, 0;
    return VectorFieldSpec(std::make_shared<Node>(Node{LinearField{seed, name.str(), true}}));
}

VectorFieldSpec VectorFieldSpec::rotation_s2(const Eigen::Vector3d &axis)
{
    return VectorFieldSpec(std::make_shared<Node>(Node{RotationField{unit_axis(axis)}}));
}

VectorFieldSpec VectorFieldSpec::conformal(const Vec &a)
{
    if (a.size() < 3 || !a.allFinite())
        throw InvalidInput("conformal field needs a finite ambient vector of size >= 3");
    return VectorFieldSpec(std::make_shared<Node>(Node{ConformalField{a}}));
}

VectorFieldSpec VectorFieldSpec::quadratic_gradient(const QuadraticFormSpec &b, int k)
{
    if (k < 1)
        throw InvalidInput("quadratic gradient power must be >= 1");
    return VectorFieldSpec(std::make_shared<Node>(Node{QuadraticField{b, k, b.power(k)}}));
}

VectorFieldSpec VectorFieldSpec::profiled_rotation(Profile f, const Eigen::Vector3d &axis)
{
    if (!f.value || !f.first || !f.second)
        throw InvalidInput("profile needs value, first and second derivative");
    return VectorFieldSpec(std::make_shared<Node>(Node{ProfiledField{std::move(f), unit_axis(axis)}}));
}

VectorFieldSpec VectorFieldSpec::frame_field(const Manifold &model, int index)
{
    switch (model.kind()) {
    case ModelKind::Heisenberg3:
    case ModelKind::SL2RUniversal:
        if (index < 1 || index > 3)
            throw InvalidInput("frame index must be 1, 2 or 3");
        break;
    case ModelKind::SphereCrossLine:
        if (index != 3)
            throw InvalidInput("s2xr only has the global parallel frame field E3 = d/dt");
        break;
    case ModelKind::Sphere:
        throw InvalidInput("spheres have no global frame field in the catalog");
    }
    return VectorFieldSpec(std::make_shared<Node>(Node{FrameFieldSpec{model, index}}));
}

VectorFieldSpec operator+(const VectorFieldSpec &a, const VectorFieldSpec &b)
{
    return VectorFieldSpec(std::make_shared<VectorFieldSpec::Node>(VectorFieldSpec::Node{SumField{a, b}}));
}

VectorFieldSpec operator*(double c, const VectorFieldSpec &a)
{
    if (!std::isfinite(c))
        throw InvalidInput("non-finite field scale");
    return VectorFieldSpec(std::make_shared<VectorFieldSpec::Node>(VectorFieldSpec::Node{ScaledField{c, a}}));
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Mat hopf_matrix(const Mat &seed, int d)
{
    Mat j = Mat::Zero(d, d);
    for (int i = 0; i + 1 < d; i += 2)
        j.block(i, i, 2, 2) = seed;
    return j;
}

FieldJet linear_jet(const Mat &a, const Vec &x)
{
    const auto d = static_cast<int>(x.size());
    FieldJet j = FieldJet::zero(d);
    j.value = a * x;
    j.jacobian = a;
    return j;
}

bool is_sphere(const Manifold &m, int n = -1)
{
    return m.kind() == ModelKind::Sphere && (n < 0 || m.dim() == n);
}

} // namespace

bool VectorFieldSpec::compatible(const Manifold &model) const
{
    return std::visit(overloaded{
                          [](const ZeroField &) { return true; },
                          [&](const LinearField &f) { return is_sphere(model) && (!f.odd_sphere_only || model.dim() % 2 == 1); },
                          [&](const RotationField &) { return is_sphere(model, 2); },
                          [&](const ConformalField &f) { return is_sphere(model) && f.a.size() == model.coord_dim(); },
                          [&](const QuadraticField &f) { return is_sphere(model) && f.b.size() == model.coord_dim(); },
                          [&](const ProfiledField &) { return is_sphere(model, 2); },
                          [&](const FrameFieldSpec &f) { return f.model == model; },
                          [&](const SumField &f) { return f.a.compatible(model) && f.b.compatible(model); },
                          [&](const ScaledField &f) { return f.a.compatible(model); },
                      },
                      node_->v);
}

void VectorFieldSpec::check_compatible(const Manifold &model) const
{
    if (!compatible(model))
        throw InvalidInput("field " + describe() + " is not defined on " + model.name());
}

FieldJet VectorFieldSpec::jet(const Point &p) const
{
    check_compatible(p.model());
    const Vec &x = p.coords();
    const int d = p.model().coord_dim();

    return std::visit(
        overloaded{
            [&](const ZeroField &) { return FieldJet::zero(d); },
            [&](const LinearField &f) { return linear_jet(hopf_matrix(f.a, d), x); },
            [&](const RotationField &f) { return linear_jet(cross_matrix(f.axis), x); },
            [&](const ConformalField &f) {
                FieldJet j = FieldJet::zero(d);
                const double s = f.a.dot(x);
                j.value = f.a - s * x;
                j.jacobian = -x * f.a.transpose() - s * Mat::Identity(d, d);
                for (int i = 0; i < d; ++i) {
                    j.hessian[i].row(i) -= f.a.transpose();
                    j.hessian[i].col(i) -= f.a;
                }
                return j;
            },
            [&](const QuadraticField &f) {
                FieldJet j = FieldJet::zero(d);
                const Vec mx = f.bk * x;
                const double lambda = mx.dot(x);
                j.value = mx - lambda * x;
                j.jacobian = f.bk - 2.0 * x * mx.transpose() - lambda * Mat::Identity(d, d);
                for (int i = 0; i < d; ++i) {
                    j.hessian[i] = -2.0 * x[i] * f.bk;
                    j.hessian[i].row(i) -= 2.0 * mx.transpose();
                    j.hessian[i].col(i) -= 2.0 * mx;
                }
                return j;
            },
            [&](const ProfiledField &f) {
                FieldJet j = FieldJet::zero(d);
                const Eigen::Vector3d w = f.axis;
                const Eigen::Matrix3d r = cross_matrix(w);
                const Eigen::Vector3d x3 = x.head<3>();
                const Eigen::Vector3d rx = r * x3;
                const double wx = w.dot(x3);
                const double s = x3.squaredNorm() - wx * wx;
                if (f.f.singular_at_zero && !(s > 0.0))
                    throw DomainError("profiled field is singular on its axis");
                const Eigen::Vector3d g = 2.0 * x3 - 2.0 * wx * w;
                const Eigen::Matrix3d hs = 2.0 * (Eigen::Matrix3d::Identity() - w * w.transpose());
                const double f0 = f.f.value(s), f1 = f.f.first(s), f2 = f.f.second(s);
                j.value = f0 * rx;
                j.jacobian = f1 * rx * g.transpose() + f0 * r;
                for (int i = 0; i < 3; ++i) {
                    Eigen::Matrix3d h = f2 * rx[i] * g * g.transpose() + f1 * rx[i] * hs;
                    h += f1 * r.row(i).transpose() * g.transpose();
                    h += f1 * g * r.row(i);
                    j.hessian[i] = h;
                }
                return j;
            },
            [&](const FrameFieldSpec &f) {
                FieldJet j = FieldJet::zero(d);
                switch (f.model.kind()) {
                case ModelKind::Heisenberg3:
                    if (f.index == 1) {
                        j.value[0] = 1.0;
                    } else if (f.index == 2) {
                        j.value[1] = 1.0;
                        j.value[2] = x[0];
                        j.jacobian(2, 0) = 1.0;
                    } else {
                        j.value[2] = 1.0;
                    }
                    break;
                case ModelKind::SL2RUniversal:
                    if (f.index == 1) {
                        j.value[0] = 1.0;
                    } else if (f.index == 2) {
                        j.value[0] = -1.0;
                        j.value[1] = x[2];
                        j.jacobian(1, 2) = 1.0;
                    } else {
                        j.value[2] = x[2];
                        j.jacobian(2, 2) = 1.0;
                    }
                    break;
                case ModelKind::SphereCrossLine:
                    j.value[3] = 1.0;
                    break;
                case ModelKind::Sphere:
                    break;
                }
                return j;
            },
            [&](const SumField &f) {
                FieldJet a = f.a.jet(p);
                FieldJet b = f.b.jet(p);
                a.value += b.value;
                a.jacobian += b.jacobian;
                for (int i = 0; i < d; ++i)
                    a.hessian[i] += b.hessian[i];
                return a;
            },
            [&](const ScaledField &f) {
                FieldJet a = f.a.jet(p);
                a.value *= f.c;
                a.jacobian *= f.c;
                for (auto &h : a.hessian)
                    h *= f.c;
                return a;
            },
        },
        node_->v);
}

Vec VectorFieldSpec::operator()(const Point &x) const { return jet(x).value; }

std::string VectorFieldSpec::describe() const
{
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const ZeroField &) { os << "zero"; },
                   [&](const LinearField &f) { os << f.name; },
                   [&](const RotationField &f) {
                       os << "rotation(axis=" << f.axis.x() << "," << f.axis.y() << "," << f.axis.z() << ")";
                   },
                   [&](const ConformalField &f) { os << "conformal(|a|=" << f.a.norm() << ")"; },
                   [&](const QuadraticField &f) { os << "quadratic(n+1=" << f.b.size() << ",k=" << f.k << ")"; },
                   [&](const ProfiledField &f) { os << "profiled(" << f.f.name << ")"; },
                   [&](const FrameFieldSpec &f) { os << "frame(" << f.model.name() << ",E" << f.index << ")"; },
                   [&](const SumField &f) { os << "(" << f.a.describe() << " + " << f.b.describe() << ")"; },
                   [&](const ScaledField &f) { os << f.c << "*" << f.a.describe(); },
               },
               node_->v);
    return os.str();
}

bool VectorFieldSpec::is_known_killing() const
{
    return std::visit(overloaded{
                          [](const ZeroField &) { return true; },
                          [](const LinearField &) { return true; },
                          [](const RotationField &) { return true; },
                          [](const ConformalField &) { return false; },
                          [](const QuadraticField &) { return false; },
                          [](const ProfiledField &) { return false; },
                          [](const FrameFieldSpec &f) {
                              return (f.model.kind() == ModelKind::Heisenberg3 && f.index == 3) ||
                                     (f.model.kind() == ModelKind::SL2RUniversal && f.index == 1) ||
                                     f.model.kind() == ModelKind::SphereCrossLine;
                          },
                          [](const SumField &f) { return f.a.is_known_killing() && f.b.is_known_killing(); },
                          [](const ScaledField &f) { return f.a.is_known_killing(); },
                      },
                      node_->v);
}

std::optional<Eigen::Vector3d> VectorFieldSpec::singular_axis() const
{
    return std::visit(overloaded{
                          [](const ProfiledField &f) -> std::optional<Eigen::Vector3d> {
                              if (f.f.singular_at_zero)
                                  return f.axis;
                              return std::nullopt;
                          },
                          [](const SumField &f) -> std::optional<Eigen::Vector3d> {
                              auto a = f.a.singular_axis();
                              return a ? a : f.b.singular_axis();
                          },
                          [](const ScaledField &f) { return f.a.singular_axis(); },
                          [](const auto &) -> std::optional<Eigen::Vector3d> { return std::nullopt; },
                      },
                      node_->v);
}

// -- scalar fields ------------------------------------------------------------

ScalarField ScalarField::constant(double c) { return ScalarField(0, c, Vec(), Mat()); }

ScalarField ScalarField::linear(const Vec &a) { return ScalarField(1, 0.0, a, Mat()); }

ScalarField ScalarField::quadratic(const Mat &c)
{
    if (c.rows() != c.cols())
        throw InvalidInput("quadratic scalar field needs a square matrix");
    return ScalarField(2, 0.0, Vec(), 0.5 * (c + c.transpose()));
}

ScalarField ScalarField::product(int dim, int i, int j)
{
    if (i < 0 || j < 0 || i >= dim || j >= dim)
        throw InvalidInput("coordinate index out of range");
    Mat c = Mat::Zero(dim, dim);
    c(i, j) += 0.5;
    c(j, i) += 0.5;
    return quadratic(c);
}

ScalarJet ScalarField::jet(const Point &p) const
{
    const Vec &x = p.coords();
    const auto d = x.size();
    ScalarJet j{0.0, Vec::Zero(d), Mat::Zero(d, d)};
    switch (degree_) {
    case 0:
        j.value = c_;
        break;
    case 1:
        if (a_.size() != d)
            throw InvalidInput("linear scalar field has wrong dimension");
        j.value = a_.dot(x);
        j.gradient = a_;
        break;
    default:
        if (q_.rows() != d)
            throw InvalidInput("quadratic scalar field has wrong dimension");
        j.value = x.dot(q_ * x);
        j.gradient = 2.0 * q_ * x;
        j.hessian = 2.0 * q_;
        break;
    }
    return j;
}

VectorFieldSpec ScalarField::gradient_field() const
{
    switch (degree_) {
    case 0:
        return VectorFieldSpec::zero();
    case 1:
        return VectorFieldSpec::conformal(a_);
    default:
        return VectorFieldSpec::quadratic_gradient(QuadraticFormSpec(2.0 * q_), 1);
    }
}

// -- quadratic form calculus ------------------------------------------------------

namespace {

void check_form_point(const QuadraticFormSpec &b, const Point &x)
{
    if (x.model().kind() != ModelKind::Sphere || b.size() != x.model().coord_dim())
        throw InvalidInput("quadratic form of size " + std::to_string(b.size()) + " does not match " +
                           x.model().name());
}

} // namespace

PowerFormValue sigma_lambda_k(const QuadraticFormSpec &b, int k, const Point &x)
{
    check_form_point(b, x);
    if (k < 1)
        throw InvalidInput("power must be >= 1");
    return sigma_lambda_k(b.power(k), x.coords());
}

Vec apply_L_k(const QuadraticFormSpec &b, int k, const Point &x, const TangentVector &v)
{
    check_form_point(b, x);
    if (!(v.base() == x))
        throw InvalidInput("tangent vector is based at a different point");
    if (k < 1)
        throw InvalidInput("power must be >= 1");
    return apply_L_k(b.power(k), x.coords(), v.comps());
}

} // namespace hpq
