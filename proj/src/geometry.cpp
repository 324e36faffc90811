#include "hpq/geometry.hpp"

#include <array>
#include <cmath>

namespace hpq {

Mat metric_matrix(const Point &p)
{
    const Vec &c = p.coords();
    switch (p.model().kind()) {
    case ModelKind::Heisenberg3: {
        // dx^2 + dy^2 + (dz - x dy)^2
        const double x = c[0];
        Mat g(3, 3);
        g << 1, 0, 0, 0, 1 + x * x, -x, 0, -x, 1;
        return g;
    }
    case ModelKind::SL2RUniversal: {
        // (dx + dy/z)^2 + (dy^2 + dz^2)/z^2
        const double z = c[2];
        Mat g(3, 3);
        g << 1, 1 / z, 0, 1 / z, 2 / (z * z), 0, 0, 0, 1 / (z * z);
        return g;
    }
    default:
        return Mat::Identity(p.model().coord_dim(), p.model().coord_dim());
    }
}

std::vector<Mat> metric_partials(const Point &p)
{
    const int d = p.model().coord_dim();
    std::vector<Mat> dg(static_cast<std::size_t>(d), Mat::Zero(d, d));
    const Vec &c = p.coords();
    switch (p.model().kind()) {
    case ModelKind::Heisenberg3: {
        const double x = c[0];
        dg[0] << 0, 0, 0, 0, 2 * x, -1, 0, -1, 0;
        break;
    }
    case ModelKind::SL2RUniversal: {
        const double z = c[2];
        const double z2 = z * z, z3 = z2 * z;
        dg[2] << 0, -1 / z2, 0, -1 / z2, -4 / z3, 0, 0, 0, -2 / z3;
        break;
    }
    default:
        break;
    }
    return dg;
}

std::vector<std::vector<Mat>> metric_second_partials(const Point &p)
{
    const int d = p.model().coord_dim();
    std::vector<std::vector<Mat>> ddg(static_cast<std::size_t>(d),
                                      std::vector<Mat>(static_cast<std::size_t>(d), Mat::Zero(d, d)));
    switch (p.model().kind()) {
    case ModelKind::Heisenberg3:
        ddg[0][0](1, 1) = 2.0;
        break;
    case ModelKind::SL2RUniversal: {
        const double z = p.coords()[2];
        const double z3 = z * z * z, z4 = z3 * z;
        ddg[2][2] << 0, 2 / z3, 0, 2 / z3, 12 / z4, 0, 0, 0, 6 / z4;
        break;
    }
    default:
        break;
    }
    return ddg;
}

double metric_eval(const Point &x, const Vec &u, const Vec &v)
{
    if (x.model().extrinsic())
        return u.dot(v);
    return u.dot(metric_matrix(x) * v);
}

double metric_eval(const TangentVector &u, const TangentVector &v)
{
    if (!(u.base() == v.base()))
        throw InvalidInput("metric_eval: tangent vectors at different base points");
    return metric_eval(u.base(), u.comps(), v.comps());
}

Vec Christoffel::contract(const Vec &x, const Vec &y) const
{
    Vec r(static_cast<Eigen::Index>(gamma.size()));
    for (std::size_t i = 0; i < gamma.size(); ++i)
        r[static_cast<Eigen::Index>(i)] = x.dot(gamma[i] * y);
    return r;
}

Christoffel christoffel(const Point &p)
{
    const int d = p.model().coord_dim();
    const auto n = static_cast<std::size_t>(d);
    Christoffel c;
    c.gamma.assign(n, Mat::Zero(d, d));
    c.dgamma.assign(n, std::vector<Mat>(n, Mat::Zero(d, d)));
    if (p.model().extrinsic())
        return c;

    const Mat g = metric_matrix(p);
    const Mat ginv = g.inverse();
    const auto dg = metric_partials(p);
    const auto ddg = metric_second_partials(p);

    // first kind: first[m](j,k) = 1/2 (d_j g_mk + d_k g_mj - d_m g_jk)
    std::vector<Mat> first(n, Mat::Zero(d, d));
    for (int m = 0; m < d; ++m)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                first[m](j, k) = 0.5 * (dg[j](m, k) + dg[k](m, j) - dg[m](j, k));

    for (int i = 0; i < d; ++i)
        for (int m = 0; m < d; ++m)
            c.gamma[i] += ginv(i, m) * first[m];

    for (int l = 0; l < d; ++l) {
        const Mat dginv = -ginv * dg[l] * ginv;
        std::vector<Mat> dfirst(n, Mat::Zero(d, d));
        for (int m = 0; m < d; ++m)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    dfirst[m](j, k) = 0.5 * (ddg[l][j](m, k) + ddg[l][k](m, j) - ddg[l][m](j, k));
        for (int i = 0; i < d; ++i)
            for (int m = 0; m < d; ++m)
                c.dgamma[l][i] += dginv(i, m) * first[m] + ginv(i, m) * dfirst[m];
    }
    return c;
}

Vec unit_normal(const Point &p)
{
    Vec nu = Vec::Zero(p.model().coord_dim());
    if (p.model().kind() == ModelKind::Sphere)
        nu = p.coords();
    else if (p.model().kind() == ModelKind::SphereCrossLine)
        nu.head<3>() = p.coords().head<3>();
    return nu;
}

Mat shape_operator(const Point &p)
{
    const int d = p.model().coord_dim();
    if (p.model().kind() == ModelKind::Sphere)
        return Mat::Identity(d, d);
    Mat s = Mat::Zero(d, d);
    if (p.model().kind() == ModelKind::SphereCrossLine)
        s.topLeftCorner<3, 3>().setIdentity();
    return s;
}

Vec curvature(const Point &p, const Vec &X, const Vec &Y, const Vec &Z)
{
    if (p.model().extrinsic()) {
        // Gauss equation for a hypersurface of flat space.
        const Mat s = shape_operator(p);
        const Vec sx = s * X, sy = s * Y;
        return sy.dot(Z) * sx - sx.dot(Z) * sy;
    }
    const Christoffel c = christoffel(p);
    const int d = p.model().coord_dim();
    Vec r = c.contract(X, c.contract(Y, Z)) - c.contract(Y, c.contract(X, Z));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            r[i] += X[k] * Y.dot(c.dgamma[k][i] * Z) - Y[k] * X.dot(c.dgamma[k][i] * Z);
    return r;
}

TangentVector curvature_op(const TangentVector &X, const TangentVector &Y, const TangentVector &Z)
{
    if (!(X.base() == Y.base()) || !(X.base() == Z.base()))
        throw InvalidInput("curvature_op: vectors at different base points");
    const Point &p = X.base();
    return TangentVector(p, tangent_projector(p) * curvature(p, X.comps(), Y.comps(), Z.comps()));
}

double curvature_component(const Point &x, int i, int j, int k, int l)
{
    const int n = x.model().dim();
    if (std::min({i, j, k, l}) < 1 || std::max({i, j, k, l}) > n)
        throw InvalidInput("curvature component index out of range");
    const Mat e = frame_matrix(x);
    const Vec r = curvature(x, e.col(i - 1), e.col(j - 1), e.col(l - 1));
    return metric_eval(x, r, e.col(k - 1));
}

Vec ricci(const Point &x, const Vec &v, FrameStrategy strategy)
{
    const Mat e = frame_matrix(x, strategy);
    Vec r = Vec::Zero(v.size());
    for (Eigen::Index i = 0; i < e.cols(); ++i)
        r += curvature(x, v, e.col(i), e.col(i));
    return r;
}

TangentVector ricci_op(const TangentVector &v)
{
    const Point &p = v.base();
    return TangentVector(p, tangent_projector(p) * ricci(p, v.comps()));
}

namespace {

/// Fixed orthogonal matrix made of Givens rotations in consecutive planes.
Mat rotation_mixer(int n)
{
    Mat q = Mat::Identity(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        const double a = 0.4 + 0.3 * i;
        Mat r = Mat::Identity(n, n);
        r(i, i) = std::cos(a);
        r(i, i + 1) = -std::sin(a);
        r(i + 1, i) = std::sin(a);
        r(i + 1, i + 1) = std::cos(a);
        q = q * r;
    }
    return q;
}

Mat gram_schmidt_fixed(const Mat &g, const Mat &seeds)
{
    Mat out(seeds.rows(), seeds.cols());
    for (Eigen::Index c = 0; c < seeds.cols(); ++c) {
        Vec v = seeds.col(c);
        for (Eigen::Index b = 0; b < c; ++b)
            v -= v.dot(g * out.col(b)) * out.col(b);
        const double nrm = std::sqrt(v.dot(g * v));
        if (!(nrm > 1e-12))
            throw DomainError("degenerate seed basis in Gram-Schmidt");
        out.col(c) = v / nrm;
    }
    return out;
}

Mat extrinsic_frame(const Point &p)
{
    const int d = p.model().coord_dim();
    const int n = p.model().dim();
    const Mat proj = tangent_projector(p);
    Mat out(d, n);
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    for (int c = 0; c < n; ++c) {
        int best = -1;
        double best_norm = 0.0;
        Vec best_vec;
        for (int a = 0; a < d; ++a) {
            if (used[static_cast<std::size_t>(a)])
                continue;
            Vec v = proj.col(a);
            for (int b = 0; b < c; ++b)
                v -= v.dot(out.col(b)) * out.col(b);
            const double nrm = v.norm();
            if (nrm > best_norm * (1.0 + 1e-12)) {
                best = a;
                best_norm = nrm;
                best_vec = v;
            }
        }
        if (best < 0 || !(best_norm > 1e-8))
            throw DomainError("degenerate seed basis in Gram-Schmidt");
        used[static_cast<std::size_t>(best)] = true;
        out.col(c) = best_vec / best_norm;
    }
    return out;
}

} // namespace

Mat frame_matrix(const Point &p, FrameStrategy strategy)
{
    Mat e;
    switch (p.model().kind()) {
    case ModelKind::Heisenberg3: {
        Mat seeds = Mat::Zero(3, 3);
        seeds(0, 0) = 1; // d_x
        seeds(2, 1) = 1; // d_z
        seeds(1, 2) = 1; // d_y
        const Mat gs = gram_schmidt_fixed(metric_matrix(p), seeds);
        e.resize(3, 3);
        e.col(0) = gs.col(0);
        e.col(1) = gs.col(2);
        e.col(2) = gs.col(1);
        break;
    }
    case ModelKind::SL2RUniversal:
        e = gram_schmidt_fixed(metric_matrix(p), Mat::Identity(3, 3));
        break;
    default:
        e = extrinsic_frame(p);
        break;
    }
    if (strategy == FrameStrategy::Rotated)
        e = e * rotation_mixer(static_cast<int>(e.cols()));
    return e;
}

Frame orthonormal_frame(const Point &x, FrameStrategy strategy)
{
    const Mat e = frame_matrix(x, strategy);
    Frame f{x, {}};
    f.vectors.reserve(static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.cols(); ++i)
        f.vectors.emplace_back(x, e.col(i));
    return f;
}

Mat covariant_jacobian(const Point &x, const FieldJet &jet)
{
    if (x.model().extrinsic()) {
        const Mat p = tangent_projector(x);
        return p * jet.jacobian * p;
    }
    const Christoffel c = christoffel(x);
    Mat a = jet.jacobian;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        a.row(i) += (c.gamma[static_cast<std::size_t>(i)] * jet.value).transpose();
    return a;
}

Vec levi_civita(const VectorFieldSpec &sigma, const Point &x, const Vec &X)
{
    return covariant_jacobian(x, sigma.jet(x)) * X;
}

TangentVector levi_civita(const VectorFieldSpec &sigma, const TangentVector &X)
{
    return TangentVector(X.base(), levi_civita(sigma, X.base(), X.comps()));
}

Vec second_covariant(const Point &x, const FieldJet &jet, const Vec &X, const Vec &Y)
{
    const auto d = jet.value.size();
    Vec hxy(d);
    for (Eigen::Index i = 0; i < d; ++i)
        hxy[i] = X.dot(jet.hessian[static_cast<std::size_t>(i)] * Y);

    if (x.model().extrinsic()) {
        // P D^2 sigma[X,Y] - <nu, D sigma Y> S X - <S X, Y> P D sigma nu
        const Mat p = tangent_projector(x);
        const Mat s = shape_operator(x);
        const Vec nu = unit_normal(x);
        const Vec sx = s * X;
        return p * hxy - nu.dot(jet.jacobian * Y) * sx - sx.dot(Y) * (p * (jet.jacobian * nu));
    }

    const Christoffel c = christoffel(x);
    const Mat a = covariant_jacobian(x, jet);
    Vec r = hxy + c.contract(Y, jet.jacobian * X) + c.contract(X, a * Y) - a * c.contract(X, Y);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index l = 0; l < d; ++l)
            r[i] += X[l] * Y.dot(c.dgamma[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] * jet.value);
    return r;
}

} // namespace hpq
