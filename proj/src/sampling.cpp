#include "hpq/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace hpq {

namespace {

Vec gaussian(int n, Rng &rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i)
        v[i] = normal(rng);
    return v;
}

double uniform(Rng &rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Point draw(const Manifold &model, Rng &rng)
{
    switch (model.kind()) {
    case ModelKind::Sphere:
        return Point(model, gaussian(model.coord_dim(), rng));
    case ModelKind::SphereCrossLine: {
        Vec c(4);
        c.head<3>() = gaussian(3, rng);
        c[3] = uniform(rng, -2.0, 2.0);
        return Point(model, c);
    }
    case ModelKind::Heisenberg3: {
        Vec c(3);
        for (int i = 0; i < 3; ++i)
            c[i] = uniform(rng, -2.0, 2.0);
        return Point(model, c);
    }
    case ModelKind::SL2RUniversal: {
        Vec c(3);
        c[0] = uniform(rng, -2.0, 2.0);
        c[1] = uniform(rng, -2.0, 2.0);
        c[2] = uniform(rng, 0.25, 4.0);
        return Point(model, c);
    }
    }
    throw InvalidInput("unknown model");
}

} // namespace

std::vector<Point> sample_points(const Manifold &model, int count, std::uint64_t seed, const SampleOptions &options)
{
    if (count < 1)
        throw InvalidInput("sample count must be >= 1");
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        Point p = draw(model, rng);
        if (options.avoid_axis) {
            const Eigen::Vector3d u = p.coords().head<3>();
            const double wx = options.avoid_axis->normalized().dot(u);
            if (u.squaredNorm() - wx * wx < options.min_axis_sq)
                continue;
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Point> sample_points_for(const VectorFieldSpec &sigma, const Manifold &model, int count,
                                     std::uint64_t seed)
{
    SampleOptions options;
    options.avoid_axis = sigma.singular_axis();
    return sample_points(model, count, seed, options);
}

Vec random_tangent(const Point &x, Rng &rng)
{
    const Vec g = gaussian(x.model().coord_dim(), rng);
    return tangent_projector(x) * g;
}

Mat random_symmetric(int size, Rng &rng)
{
    Mat m(size, size);
    for (int i = 0; i < size; ++i)
        m.col(i) = gaussian(size, rng);
    return 0.5 * (m + m.transpose());
}

double sphere_volume(int n)
{
    const double k = 0.5 * (n + 1);
    return 2.0 * std::pow(std::numbers::pi, k) / std::tgamma(k);
}

WeightedSamples monte_carlo(const Manifold &model, int count, std::uint64_t seed)
{
    WeightedSamples ws{sample_points(model, count, seed), {}};
    ws.weights.reserve(ws.points.size());
    for (const Point &p : ws.points) {
        double w = 0.0;
        switch (model.kind()) {
        case ModelKind::Sphere:
            w = sphere_volume(model.dim());
            break;
        case ModelKind::SphereCrossLine:
            w = sphere_volume(2) * 4.0;
            break;
        case ModelKind::Heisenberg3:
            w = 64.0; // det g = 1
            break;
        case ModelKind::SL2RUniversal: {
            const double z = p.coords()[2];
            w = 16.0 * 3.75 / (z * z); // sqrt(det g) = 1/z^2
            break;
        }
        }
        ws.weights.push_back(w / count);
    }
    return ws;
}

std::pair<Vec, Vec> gauss_legendre(int count)
{
    if (count < 1)
        throw InvalidInput("quadrature needs at least one node");
    Mat jacobi = Mat::Zero(count, count);
    for (int i = 1; i < count; ++i) {
        const double b = i / std::sqrt(4.0 * i * i - 1.0);
        jacobi(i, i - 1) = b;
        jacobi(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(jacobi);
    Vec weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
    return {es.eigenvalues(), weights};
}

WeightedSamples s2_product_quadrature(int nz, int nphi)
{
    if (nphi < 1)
        throw InvalidInput("quadrature needs at least one azimuth node");
    const auto [nodes, weights] = gauss_legendre(nz);
    const Manifold s2 = Manifold::sphere(2);
    WeightedSamples ws;
    for (int i = 0; i < nz; ++i) {
        const double z = nodes[i];
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * std::numbers::pi * (j + 0.5) / nphi;
            Vec c(3);
            c << r * std::cos(phi), r * std::sin(phi), z;
            ws.points.emplace_back(s2, c);
            ws.weights.push_back(weights[i] * 2.0 * std::numbers::pi / nphi);
        }
    }
    return ws;
}

} // namespace hpq
