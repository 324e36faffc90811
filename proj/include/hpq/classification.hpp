#ifndef HPQ_CLASSIFICATION_HPP
#define HPQ_CLASSIFICATION_HPP

#include "hpq/harmonicity.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hpq {

// -- sigma_k identity suite ---------------------------------------------------

inline constexpr int kIdentityCount = 16;

/// Names of the identities, in report order. The first seven concern the
/// family sigma_k, L_k (k, l in {1,2,3}); the next seven sigma = sigma_1;
/// the last two are the codifferential of L_k and the rough Laplacian of
/// sigma_k.
const std::array<std::string, kIdentityCount> &identity_names();

struct IdentityReport {
    int n = 0;
    std::array<double, kIdentityCount> residual{}; ///< max over k, l, frame pairs
    double max() const;
};

/// Evaluates every identity at x (x on S^n, B of size n+1). Differential
/// identities are checked on all pairs of frame vectors.
IdentityReport verify_sigma_identities(const QuadraticFormSpec &b, int n, const Point &x);

/// -sum_i (nabla_{e_i} L_k)(e_i), differentiating numerically along great
/// circles.
Vec codifferential_L_k(const QuadraticFormSpec &b, int k, const Point &x);

/// (nabla_X L_k)(Y), with Y extended by projection onto the tangent spaces
/// and differentiated numerically along the great circle tangent to X.
Vec covariant_derivative_L_k(const QuadraticFormSpec &b, int k, const Point &x, const Vec &X, const Vec &Y);

// -- two eigenvalues -----------------------------------------------------------

inline constexpr double kEigenClusterTolerance = 1e-9;

struct TwoEigenvalueResult {
    bool is_two = false;
    double m = 0.0;     ///< mu + nu
    double c = 0.0;     ///< -mu nu
    double check = 0.0; ///< max |B^2 - mB - cI|
};

TwoEigenvalueResult two_eigenvalue_test(const QuadraticFormSpec &b);

struct ColinearityValue {
    double defect; ///< part of sigma_3 - 3 lambda sigma_2 orthogonal to sigma
    double factor; ///< its component along sigma, divided by |sigma|^2
};

/// Throws DomainError when sigma(x) = 0.
ColinearityValue sigma3_colinearity(const QuadraticFormSpec &b, const Point &x);

// -- coefficient matching ------------------------------------------------------

/// Both sides of the harmonic-section equation for B = mu diag(1_k, 0) as
/// multiples of sigma, written as polynomials in t = |x_mu|^2 with the
/// coefficients exactly as printed. Index i holds the coefficient of t^i.
struct CoefficientSystem {
    std::array<double, 5> lhs{};
    std::array<double, 5> rhs{};

    std::array<double, 5> difference() const;
};

CoefficientSystem coefficient_polynomials(int n, double k_mult, double p, double q, double mu_sq);

/// mu diag(1, ..., 1, 0, ..., 0) with (n+1)/2 ones; n odd, mu > 0.
QuadraticFormSpec canonical_B(int n, double mu);

struct ClassificationCandidate {
    std::string source; ///< "coefficient-system" or "printed-formula"
    int n = 0;
    double p = 0.0;
    double q = 0.0;
    int k_mult = 0;
    double mu_sq = 0.0;
    std::optional<QuadraticFormSpec> B; ///< only when mu_sq > 0
    bool validated = false;
    std::optional<double> residual_max; ///< unset when B cannot be built
};

struct PrintedRoot {
    double q;
    double mu_sq_printed;  ///< from the printed mu^2 formula
    double mu_sq_system;   ///< from the coefficient equations at the same q
    double printed_system; ///< printed first equation evaluated at (q, mu_sq_system)
};

struct ClassificationReport {
    int n = 0;
    double p = 0.0;      ///< recovered from the t^4 equation
    double k_real = 0.0; ///< recovered from the t^3 equation
    int k_mult = 0;
    bool q_zero_rejected = true;
    std::vector<PrintedRoot> printed_roots;
    std::vector<ClassificationCandidate> candidates;
    std::vector<std::string> discrepancies;
    int validation_samples = 0;
    std::uint64_t seed = 0;
};

/// Classification of (p,q)-harmonic quadratic gradient fields on S^n. n must
/// be odd and at least 5; other values are rejected with the reason.
ClassificationReport solve_classification(int n, int samples = 200, std::uint64_t seed = 42);

} // namespace hpq

#endif // HPQ_CLASSIFICATION_HPP
