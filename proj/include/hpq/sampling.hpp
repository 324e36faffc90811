#ifndef HPQ_SAMPLING_HPP
#define HPQ_SAMPLING_HPP

#include "hpq/fields.hpp"
#include "hpq/model.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace hpq {

using Rng = std::mt19937_64;

struct SampleOptions {
    /// Reject sphere points with |x|^2 - (axis.x)^2 below min_axis_sq.
    std::optional<Eigen::Vector3d> avoid_axis;
    double min_axis_sq = 0.05;
};

/// Seeded sample points. Spheres: uniform. Heisenberg: the box [-2,2]^3.
/// sl2r: x, y in [-2,2], z in [0.25, 4]. s2xr: uniform sphere factor,
/// t in [-2, 2].
std::vector<Point> sample_points(const Manifold &model, int count, std::uint64_t seed,
                                 const SampleOptions &options = {});

/// Sample points that stay away from the singular set of the field, if any.
std::vector<Point> sample_points_for(const VectorFieldSpec &sigma, const Manifold &model, int count,
                                     std::uint64_t seed);

/// Gaussian tangent vector at x (coordinate components for coordinate models).
Vec random_tangent(const Point &x, Rng &rng);

/// Symmetric matrix with standard normal entries.
Mat random_symmetric(int size, Rng &rng);

struct WeightedSamples {
    std::vector<Point> points;
    std::vector<double> weights;
};

double sphere_volume(int n);

/// Uniform Monte Carlo rule over the sampling region of sample_points,
/// weighted by the Riemannian volume density.
WeightedSamples monte_carlo(const Manifold &model, int count, std::uint64_t seed);

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
std::pair<Vec, Vec> gauss_legendre(int count);

/// Tensor rule on S^2: Gauss-Legendre in z times the trapezoid rule in the
/// azimuth. Exact for polynomials of degree < 2 * nz in z.
WeightedSamples s2_product_quadrature(int nz, int nphi);

} // namespace hpq

#endif // HPQ_SAMPLING_HPP
