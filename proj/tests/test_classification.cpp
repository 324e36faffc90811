#include "catalog.hpp"
#include "hpq/classification.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace hpq;
using namespace hpq::testing;

namespace {

Mat random_orthogonal(int size, Rng &rng)
{
    const Mat a = random_symmetric(size, rng) + Mat::Identity(size, size) * 0.1;
    Eigen::HouseholderQR<Mat> qr(a);
    return qr.householderQ();
}

bool contains(const std::vector<std::string> &v, const std::string &needle)
{
    return std::any_of(v.begin(), v.end(), [&](const std::string &s) { return s.find(needle) != std::string::npos; });
}

} // namespace

TEST(Identities, NamesAreDistinct)
{
    auto names = identity_names();
    std::sort(names.begin(), names.end());
    EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
}

TEST(Identities, RandomFormsAcrossDimensions)
{
    Rng rng(71);
    for (int n = 2; n <= 9; ++n)
        for (int trial = 0; trial < 3; ++trial) {
            const QuadraticFormSpec b(random_symmetric(n + 1, rng));
            for (const Point &x : sample_points(Manifold::sphere(n), 10, 72 + trial)) {
                const IdentityReport r = verify_sigma_identities(b, n, x);
                EXPECT_EQ(r.n, n);
                for (int i = 0; i < kIdentityCount; ++i)
                    EXPECT_LE(r.residual[i], 1e-9) << identity_names()[i] << " n=" << n;
            }
        }
}

TEST(Identities, IdentityFormIsTrivial)
{
    const QuadraticFormSpec b(Mat::Identity(4, 4));
    for (const Point &x : sample_points(Manifold::sphere(3), 5, 73)) {
        EXPECT_LT(sigma_lambda_k(b, 2, x).sigma.norm(), 1e-15);
        EXPECT_LE(verify_sigma_identities(b, 3, x).max(), 1e-12);
    }
}

TEST(Identities, CodifferentialAndRoughLaplacian)
{
    Rng rng(74);
    for (int n : {2, 3, 5}) {
        const QuadraticFormSpec b(random_symmetric(n + 1, rng));
        for (const Point &x : sample_points(Manifold::sphere(n), 5, 75))
            for (int k : {1, 2, 3}) {
                const Vec sk = sigma_lambda_k(b, k, x).sigma;
                EXPECT_LT((codifferential_L_k(b, k, x) - (n + 1.0) * sk).norm(), 1e-9 * std::max(1.0, sk.norm()));
                const Vec lap = rough_laplacian(VectorFieldSpec::quadratic_gradient(b, k), x);
                EXPECT_LT((lap - (n + 3.0) * sk).norm(), 1e-9 * std::max(1.0, sk.norm()));
            }
    }
}

TEST(Identities, CovariantDerivativeOfLk)
{
    // (nabla_X L_k) Y against the difference of nabla_X (L_k Y) and L_k (nabla_X Y)
    // on a coordinate-free extension, using the field oracle for sigma_k.
    Rng rng(76);
    const int n = 3;
    const QuadraticFormSpec b(random_symmetric(n + 1, rng));
    for (const Point &x : sample_points(Manifold::sphere(n), 5, 77)) {
        const Vec X = random_tangent(x, rng), Y = random_tangent(x, rng);
        // L_k is symmetric, so <(nabla_X L_k) Y, Y'> is symmetric in Y, Y'.
        const Vec Y2 = random_tangent(x, rng);
        const Vec a = covariant_derivative_L_k(b, 2, x, X, Y);
        const Vec c = covariant_derivative_L_k(b, 2, x, X, Y2);
        EXPECT_NEAR(a.dot(Y2), c.dot(Y), 1e-10);
        EXPECT_NEAR(a.dot(x.coords()), 0.0, 1e-12);
        // nabla sigma_k = L_k - lambda_k Id and X(lambda_k) = 2<sigma_k, X>, so
        // (nabla_X L_k) Y = nabla^2_{X,Y} sigma_k + 2<sigma_k, X> Y.
        const Vec expected = second_cov(VectorFieldSpec::quadratic_gradient(b, 2), x, X, Y) +
                             2.0 * sigma_lambda_k(b, 2, x).sigma.dot(X) * Y;
        EXPECT_LT((a - expected).norm(), 1e-10 * std::max(1.0, expected.norm()));
    }
}

TEST(TwoEigenvalues, Detection)
{
    const TwoEigenvalueResult a = two_eigenvalue_test(QuadraticFormSpec(diag({1, 1, 0, 0})));
    EXPECT_TRUE(a.is_two);
    EXPECT_NEAR(a.m, 1.0, 1e-12);
    EXPECT_NEAR(a.c, 0.0, 1e-12);
    EXPECT_LE(a.check, 1e-8);
    EXPECT_FALSE(two_eigenvalue_test(QuadraticFormSpec(Mat::Identity(3, 3))).is_two);
    EXPECT_FALSE(two_eigenvalue_test(QuadraticFormSpec(diag({1, 2, 3}))).is_two);

    const TwoEigenvalueResult b = two_eigenvalue_test(QuadraticFormSpec(diag({2, -1, 2, -1, -1})));
    EXPECT_TRUE(b.is_two);
    EXPECT_NEAR(b.m, 1.0, 1e-12);
    EXPECT_NEAR(b.c, 2.0, 1e-12);

    Rng rng(78);
    const Mat q = random_orthogonal(4, rng);
    const TwoEigenvalueResult c = two_eigenvalue_test(QuadraticFormSpec(q * diag({3, 3, -0.5, -0.5}) * q.transpose()));
    EXPECT_TRUE(c.is_two);
    EXPECT_NEAR(c.m, 2.5, 1e-10);
    EXPECT_NEAR(c.c, 1.5, 1e-10);
}

TEST(TwoEigenvalues, Colinearity)
{
    for (const Point &x : sample_points(Manifold::sphere(3), 20, 79))
        EXPECT_LT(sigma3_colinearity(QuadraticFormSpec(diag({1, 1, 0, 0})), x).defect, 1e-12);
    double worst = 0.0;
    for (const Point &x : sample_points(Manifold::sphere(2), 50, 80))
        worst = std::max(worst, sigma3_colinearity(QuadraticFormSpec(diag({1, 2, 3})), x).defect);
    EXPECT_GT(worst, 1e-6);
    EXPECT_THROW(sigma3_colinearity(QuadraticFormSpec(diag({1, 2, 3})), Point(Manifold::sphere(2), vec({1, 0, 0}))),
                 DomainError);
}

TEST(Coefficients, Structure)
{
    const CoefficientSystem s = coefficient_polynomials(5, 3, 2.0, 0.0, 1.5);
    EXPECT_EQ(s.rhs[3], 0.0);
    EXPECT_EQ(s.rhs[4], 0.0);
    EXPECT_EQ(s.lhs[3], 0.0);
    EXPECT_EQ(s.lhs[4], 0.0);
    EXPECT_THROW(coefficient_polynomials(5, 3, 2.0, 1.0, 0.0), InvalidInput);
    EXPECT_THROW(coefficient_polynomials(5, 3, 2.0, 1.0, -1.0), InvalidInput);
    // t^4 vanishes exactly at p = (n+3)/2 for any q, mu
    EXPECT_NEAR(coefficient_polynomials(7, 4, 5.0, -0.7, 2.0).difference()[4], 0.0, 1e-12);
}

TEST(Coefficients, MatchDirectResidual)
{
    // Independent oracle: along sigma, the section residual divided by |sigma|^2
    // is a polynomial in t = |x_mu|^2. Fit it from sampled points and compare
    // with the coefficient system up to a common factor.
    Rng rng(81);
    std::uniform_real_distribution<double> uni(-2.0, 3.0);
    for (auto [n, k] : {std::pair{5, 3}, std::pair{4, 2}, std::pair{7, 4}, std::pair{6, 2}}) {
        for (int trial = 0; trial < 4; ++trial) {
            const double p = std::abs(uni(rng)) + 0.3, q = uni(rng), mu = 0.5 + std::abs(uni(rng));
            Vec d = Vec::Zero(n + 1);
            d.head(k).setConstant(mu);
            const VectorFieldSpec s = VectorFieldSpec::quadratic_gradient(QuadraticFormSpec(d.asDiagonal().toDenseMatrix()));
            const auto pts = sample_points(Manifold::sphere(n), 40, 82 + trial);
            Mat a(static_cast<Eigen::Index>(pts.size()), 5);
            Vec rhs(static_cast<Eigen::Index>(pts.size()));
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const Point &x = pts[i];
                const double t = x.coords().head(k).squaredNorm();
                const Vec sig = s(x);
                const Vec r = section_residual(s, {p, q}, x);
                // residual is parallel to sigma
                EXPECT_LT((r - r.dot(sig) / sig.squaredNorm() * sig).norm(), 1e-10 * std::max(1.0, r.norm()));
                const auto row = static_cast<Eigen::Index>(i);
                for (int j = 0; j < 5; ++j)
                    a(row, j) = std::pow(t, j);
                rhs[row] = r.dot(sig) / sig.squaredNorm();
            }
            const Vec fit = a.colPivHouseholderQr().solve(rhs);
            const auto diff = coefficient_polynomials(n, k, p, q, mu * mu).difference();
            const Vec dv = Eigen::Map<const Vec>(diff.data(), 5);
            const double scale = fit.dot(dv) / dv.squaredNorm();
            EXPECT_LT((fit - scale * dv).norm(), 1e-7 * std::max(1.0, fit.norm())) << n << " " << k;
            EXPECT_GT(std::abs(scale), 1e-3);
        }
    }
}

TEST(CanonicalForm, Examples)
{
    const QuadraticFormSpec b = canonical_B(5, 2.0);
    EXPECT_LT((b.matrix() - diag({2, 2, 2, 0, 0, 0})).norm(), 1e-15);
    EXPECT_THROW(canonical_B(4, 1.0), InvalidInput);
    EXPECT_THROW(canonical_B(5, 0.0), InvalidInput);
    EXPECT_THROW(canonical_B(5, -1.0), InvalidInput);
}

TEST(CanonicalForm, ResidualInvariances)
{
    Rng rng(83);
    const int n = 5;
    const Mat b = canonical_B(n, 1.3).matrix();
    const Mat q = random_orthogonal(n + 1, rng);
    const VectorFieldSpec s = VectorFieldSpec::quadratic_gradient(QuadraticFormSpec(b));
    const VectorFieldSpec shifted =
        VectorFieldSpec::quadratic_gradient(QuadraticFormSpec(b + 0.7 * Mat::Identity(n + 1, n + 1)));
    const VectorFieldSpec rotated = VectorFieldSpec::quadratic_gradient(QuadraticFormSpec(q * b * q.transpose()));
    const BundleMetricParams params(4.0, -0.5);
    for (const Point &x : sample_points(Manifold::sphere(n), 10, 84)) {
        const Vec r = section_residual(s, params, x);
        EXPECT_LT((section_residual(shifted, params, x) - r).norm(), 1e-10);
        const Point qx(Manifold::sphere(n), q * x.coords());
        EXPECT_LT((section_residual(rotated, params, qx) - q * r).norm(), 1e-10);
    }
}

TEST(Classification, FiveDimensions)
{
    const ClassificationReport r = solve_classification(5, 100, 42);
    EXPECT_NEAR(r.p, 4.0, 1e-9);
    EXPECT_NEAR(r.k_real, 3.0, 1e-9);
    EXPECT_EQ(r.k_mult, 3);
    EXPECT_TRUE(r.q_zero_rejected);
    ASSERT_EQ(r.printed_roots.size(), 2u);
    std::vector<double> qs = {r.printed_roots[0].q, r.printed_roots[1].q};
    std::sort(qs.begin(), qs.end());
    EXPECT_NEAR(qs[0], -1.0 - 1.0 / std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(qs[1], -1.0 + 1.0 / std::sqrt(3.0), 1e-12);
    for (const PrintedRoot &pr : r.printed_roots) {
        // printed mu^2 = (9 - n^2)/(4q) - 2(n+3), kept with its sign
        EXPECT_NEAR(pr.mu_sq_printed, (9.0 - 25.0) / (4.0 * pr.q) - 16.0, 1e-12);
        EXPECT_LT(pr.mu_sq_printed, 0.0);
        EXPECT_NEAR(pr.mu_sq_system, (9.0 - 25.0) / (2.0 * pr.q) - 16.0, 1e-9);
    }
    int validated = 0;
    for (const ClassificationCandidate &c : r.candidates) {
        if (c.validated) {
            ++validated;
            ASSERT_TRUE(c.residual_max.has_value());
            EXPECT_LE(*c.residual_max, kAnalytic);
            EXPECT_EQ(c.source, "coefficient-system");
            EXPECT_NEAR(c.q, -1.0 + 1.0 / std::sqrt(3.0), 1e-9);
        }
        if (!(c.mu_sq > 0.0)) {
            EXPECT_FALSE(c.B.has_value());
            EXPECT_FALSE(c.residual_max.has_value());
            EXPECT_FALSE(c.validated);
        }
    }
    EXPECT_EQ(validated, 1);
    EXPECT_TRUE(contains(r.discrepancies, "printed mu^2 formula"));
}

TEST(Classification, SevenDimensions)
{
    const ClassificationReport r = solve_classification(7, 50, 43);
    EXPECT_NEAR(r.p, 5.0, 1e-9);
    EXPECT_NEAR(r.k_real, 4.0, 1e-9);
    EXPECT_EQ(r.k_mult, 4);
    ASSERT_EQ(r.printed_roots.size(), 2u);
    bool any = false;
    for (const ClassificationCandidate &c : r.candidates)
        any = any || c.validated;
    EXPECT_TRUE(any);
    EXPECT_FALSE(r.discrepancies.empty());
}

TEST(Classification, RejectedDimensions)
{
    for (int n : {3, 4, 6, 2, 1}) {
        try {
            solve_classification(n);
            ADD_FAILURE() << "n=" << n << " accepted";
        } catch (const InvalidInput &e) {
            EXPECT_NE(std::string(e.what()).find("n = " + std::to_string(n)), std::string::npos) << e.what();
        }
    }
    EXPECT_THROW(solve_classification(5, 0), InvalidInput);
}

TEST(Classification, SeedIndependentConclusion)
{
    const ClassificationReport a = solve_classification(5, 30, 1);
    const ClassificationReport b = solve_classification(5, 30, 99);
    ASSERT_EQ(a.candidates.size(), b.candidates.size());
    for (std::size_t i = 0; i < a.candidates.size(); ++i) {
        EXPECT_EQ(a.candidates[i].validated, b.candidates[i].validated);
        EXPECT_DOUBLE_EQ(a.candidates[i].q, b.candidates[i].q);
    }
    EXPECT_EQ(a.discrepancies.size(), b.discrepancies.size());
}
