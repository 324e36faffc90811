#include "hpq/fd_oracle.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace hpq::fd {

namespace {

void check_step(double h)
{
    if (!(h >= 1e-9) || !std::isfinite(h))
        throw InvalidInput("finite-difference step underflow");
}

// Christoffel symbols from FD metric partials; the metric matrix itself is
// evaluated from the closed form, nothing else is shared with geometry.cpp.
Mat coord_metric(const Point &x)
{
    const Vec &c = x.coords();
    Mat g(3, 3);
    if (x.model().kind() == ModelKind::Heisenberg3)
        g << 1, 0, 0, 0, 1 + c[0] * c[0], -c[0], 0, -c[0], 1;
    else
        g << 1, 1 / c[2], 0, 1 / c[2], 2 / (c[2] * c[2]), 0, 0, 0, 1 / (c[2] * c[2]);
    return g;
}

Vec contract(const std::vector<Mat> &gamma, const Vec &a, const Vec &b)
{
    Vec r(static_cast<Eigen::Index>(gamma.size()));
    for (std::size_t i = 0; i < gamma.size(); ++i)
        r[static_cast<Eigen::Index>(i)] = a.dot(gamma[i] * b);
    return r;
}

/// Orthonormal basis of T_x for the extrinsic models, from the spectrum of
/// the tangent projector.
Mat tangent_basis(const Point &x)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(tangent_projector(x));
    return es.eigenvectors().rightCols(x.model().dim());
}

/// Metric-orthonormal basis on the coordinate models: columns of L^{-T}.
Mat coord_basis(const Point &x)
{
    const Mat g = coord_metric(x);
    Eigen::LLT<Mat> llt(g);
    Mat l = llt.matrixL();
    return l.transpose().inverse();
}

} // namespace

FieldFn values_of(const VectorFieldSpec &sigma)
{
    return [sigma](const Point &p) { return sigma(p); };
}

Point step(const Point &x, const Vec &X, double t)
{
    const Vec &c = x.coords();
    switch (x.model().kind()) {
    case ModelKind::Sphere: {
        const double a = X.norm() * t;
        if (a == 0.0)
            return x;
        return Point(x.model(), std::cos(a) * c + std::sin(a) * X / X.norm());
    }
    case ModelKind::SphereCrossLine: {
        Vec out = c;
        const Eigen::Vector3d u = c.head<3>();
        const Eigen::Vector3d xu = X.head<3>();
        const double a = xu.norm() * t;
        if (a != 0.0)
            out.head<3>() = std::cos(a) * u + std::sin(a) * xu / xu.norm();
        out[3] += t * X[3];
        return Point(x.model(), out);
    }
    default:
        return Point(x.model(), c + t * X);
    }
}

std::vector<Mat> metric_partials(const Point &x, double h)
{
    check_step(h);
    const int d = x.model().coord_dim();
    std::vector<Mat> dg(static_cast<std::size_t>(d), Mat::Zero(d, d));
    if (x.model().extrinsic())
        return dg;
    for (int l = 0; l < d; ++l) {
        const Vec e = Vec::Unit(d, l);
        dg[static_cast<std::size_t>(l)] =
            (coord_metric(Point(x.model(), x.coords() + h * e)) - coord_metric(Point(x.model(), x.coords() - h * e))) /
            (2 * h);
    }
    return dg;
}

std::vector<Mat> christoffel(const Point &x, double h)
{
    const int d = x.model().coord_dim();
    std::vector<Mat> gamma(static_cast<std::size_t>(d), Mat::Zero(d, d));
    if (x.model().extrinsic())
        return gamma;
    const auto dg = metric_partials(x, h);
    const Mat ginv = coord_metric(x).inverse();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double s = 0.0;
                for (int m = 0; m < d; ++m)
                    s += ginv(i, m) * 0.5 * (dg[j](m, k) + dg[k](m, j) - dg[m](j, k));
                gamma[i](j, k) = s;
            }
    return gamma;
}

Vec levi_civita(const FieldFn &sigma, const Point &x, const Vec &X, double h)
{
    check_step(h);
    const Vec diff = (sigma(step(x, X, h)) - sigma(step(x, X, -h))) / (2 * h);
    if (x.model().extrinsic())
        return tangent_projector(x) * diff;
    return diff + contract(christoffel(x), X, sigma(x));
}

Vec second_cov(const FieldFn &sigma, const Point &x, const Vec &X, const Vec &Y, double h)
{
    check_step(h);
    if (x.model().extrinsic()) {
        // Y extended by tangential projection has nabla_X Y = 0 at x.
        auto w = [&](const Point &z) { return levi_civita(sigma, z, tangent_projector(z) * Y, h); };
        return tangent_projector(x) * (w(step(x, X, h)) - w(step(x, X, -h))) / (2 * h);
    }
    // Y extended with constant coordinate components.
    auto w = [&](const Point &z) { return levi_civita(sigma, z, Y, h); };
    const auto gamma = christoffel(x);
    const Vec dw = (w(step(x, X, h)) - w(step(x, X, -h))) / (2 * h) + contract(gamma, X, w(x));
    return dw - levi_civita(sigma, x, contract(gamma, X, Y), h);
}

Vec curvature(const Point &x, const Vec &X, const Vec &Y, const Vec &Z, double h)
{
    FieldFn ext;
    if (x.model().extrinsic())
        ext = [Z](const Point &p) { return Vec(tangent_projector(p) * Z); };
    else
        ext = [Z](const Point &) { return Z; };
    return second_cov(ext, x, X, Y, h) - second_cov(ext, x, Y, X, h);
}

Vec gradient(const ScalarFn &f, const Point &x, double h)
{
    check_step(h);
    const Mat e = x.model().extrinsic() ? tangent_basis(x) : coord_basis(x);
    Vec g = Vec::Zero(x.model().coord_dim());
    for (Eigen::Index i = 0; i < e.cols(); ++i) {
        const Vec ei = e.col(i);
        g += (f(step(x, ei, h)) - f(step(x, ei, -h))) / (2 * h) * ei;
    }
    return g;
}

double function_laplacian(const ScalarFn &f, const Point &x, double h)
{
    check_step(h);
    const double f0 = f(x);
    double trace = 0.0;
    if (x.model().extrinsic()) {
        const Mat e = tangent_basis(x);
        for (Eigen::Index i = 0; i < e.cols(); ++i) {
            const Vec ei = e.col(i);
            trace += (f(step(x, ei, h)) - 2 * f0 + f(step(x, ei, -h))) / (h * h);
        }
        return -trace;
    }
    const Mat e = coord_basis(x);
    const auto gamma = christoffel(x);
    for (Eigen::Index i = 0; i < e.cols(); ++i) {
        const Vec ei = e.col(i);
        const Vec gee = contract(gamma, ei, ei);
        const double second = (f(step(x, ei, h)) - 2 * f0 + f(step(x, ei, -h))) / (h * h);
        const double first = (f(step(x, gee, h)) - f(step(x, gee, -h))) / (2 * h);
        trace += second - first;
    }
    return -trace;
}

Vec lie_bracket(const FieldFn &u, const FieldFn &v, const Point &x, double h)
{
    check_step(h);
    if (x.model().extrinsic())
        throw InvalidInput("lie_bracket oracle is only defined on coordinate models");
    const Vec ux = u(x), vx = v(x);
    const Vec dv_u = (v(step(x, ux, h)) - v(step(x, ux, -h))) / (2 * h);
    const Vec du_v = (u(step(x, vx, h)) - u(step(x, vx, -h))) / (2 * h);
    return dv_u - du_v;
}

} // namespace hpq::fd
