#include "hpq/classification.hpp"
#include "hpq/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hpq {

const std::array<std::string, kIdentityCount> &identity_names()
{
    static const std::array<std::string, kIdentityCount> names = {
        "sigma_k.inner_product",   "sigma_k.L_l_sigma_k",    "sigma_k.covariant_derivative",
        "sigma_k.divergence",      "sigma_k.L_k_norm",       "sigma_k.nabla_L_k",
        "sigma_k.second_covariant", "sigma.norm_sq",          "sigma.X_sigma",
        "sigma.covariant_derivative", "sigma.nabla_X_sigma", "sigma.grad_norm_sq",
        "sigma.rough_laplacian",   "sigma.laplacian_norm_sq", "L_k.codifferential",
        "sigma_k.rough_laplacian",
    };
    return names;
}

double IdentityReport::max() const { return *std::max_element(residual.begin(), residual.end()); }

namespace {

// W(z) = L_k(z) P_z Y, whose derivative along X projects to (nabla_X L_k)(Y)
// because nabla_X (P_z Y) = 0 at x.
Vec w_field(const Mat &bk, const Vec &z, const Vec &Y)
{
    const Vec py = Y - Y.dot(z) * z;
    return apply_L_k(bk, z, py);
}

void require_sphere(const QuadraticFormSpec &b, const Point &x)
{
    if (x.model().kind() != ModelKind::Sphere)
        throw InvalidInput("quadratic form calculus lives on spheres");
    if (b.size() != x.model().coord_dim())
        throw InvalidInput("quadratic form size does not match the sphere");
}

void bump(double &slot, double v) { slot = std::max(slot, v); }

} // namespace

Vec covariant_derivative_L_k(const QuadraticFormSpec &b, int k, const Point &x, const Vec &X, const Vec &Y)
{
    require_sphere(b, x);
    const double len = X.norm();
    if (len == 0.0)
        return Vec::Zero(x.coords().size());
    const Mat bk = b.power(k);
    const Vec u = X / len;
    // Along the great circle cos(s) x + sin(s) u, W is a trigonometric
    // polynomial of degree 3, so periodic spectral differentiation on 16
    // nodes is exact up to rounding.
    constexpr int nodes = 16;
    Vec d = Vec::Zero(x.coords().size());
    for (int j = 1; j < nodes; ++j) {
        const double s = 2.0 * std::numbers::pi * j / nodes;
        const double w = 0.5 * (j % 2 == 0 ? -1.0 : 1.0) / std::tan(0.5 * s);
        d += w * w_field(bk, std::cos(s) * x.coords() + std::sin(s) * u, Y);
    }
    return tangent_projector(x) * (len * d);
}

Vec codifferential_L_k(const QuadraticFormSpec &b, int k, const Point &x)
{
    const Mat e = frame_matrix(x);
    Vec out = Vec::Zero(x.coords().size());
    for (Eigen::Index i = 0; i < e.cols(); ++i)
        out -= covariant_derivative_L_k(b, k, x, e.col(i), e.col(i));
    return out;
}

IdentityReport verify_sigma_identities(const QuadraticFormSpec &b, int n, const Point &x)
{
    if (x.model() != Manifold::sphere(n))
        throw InvalidInput("point is not on S^" + std::to_string(n));
    require_sphere(b, x);
    IdentityReport r;
    r.n = n;
    auto &res = r.residual;

    const Mat e = frame_matrix(x);
    const Vec &xc = x.coords();
    std::array<PowerFormValue, 7> pw;
    for (int k = 0; k <= 6; ++k)
        pw[k] = sigma_lambda_k(b.power(k), xc);

    for (int k = 1; k <= 3; ++k) {
        const Mat bk = b.power(k);
        const Vec &sk = pw[k].sigma;
        const double lk = pw[k].lambda;
        const VectorFieldSpec field = VectorFieldSpec::quadratic_gradient(b, k);

        for (int l = 1; l <= 3; ++l) {
            bump(res[0], std::abs(sk.dot(pw[l].sigma) - (pw[k + l].lambda - lk * pw[l].lambda)));
            const Vec lhs = apply_L_k(b.power(l), xc, sk);
            bump(res[1], (lhs - (pw[k + l].sigma - lk * pw[l].sigma)).norm());
        }

        bump(res[3], std::abs(divergence(field, x) - (bk.trace() - (n + 1) * lk)));

        double lk_norm = 0.0;
        for (Eigen::Index i = 0; i < e.cols(); ++i) {
            const Vec X = e.col(i);
            lk_norm += apply_L_k(bk, xc, X).squaredNorm();
            bump(res[2], (levi_civita(field, x, X) - (apply_L_k(bk, xc, X) - lk * X)).norm());
            for (Eigen::Index j = 0; j < e.cols(); ++j) {
                const Vec Y = e.col(j);
                const double xy = X.dot(Y);
                const Vec dl = -xy * sk - sk.dot(Y) * X;
                bump(res[5], (covariant_derivative_L_k(b, k, x, X, Y) - dl).norm());
                bump(res[6], (second_cov(field, x, X, Y) - (dl - 2.0 * sk.dot(X) * Y)).norm());
            }
        }
        bump(res[4], std::abs(lk_norm - (bk.squaredNorm() - 2.0 * pw[2 * k].lambda + lk * lk)));

        bump(res[14], (codifferential_L_k(b, k, x) - (n + 1) * sk).norm());
        bump(res[15], (rough_laplacian(field, x) - (n + 3) * sk).norm());
    }

    // sigma = sigma_1
    const FieldAtPoint f = analyze(VectorFieldSpec::quadratic_gradient(b, 1), x);
    const Mat &bm = b.matrix();
    const double lam = pw[1].lambda, lam2 = pw[2].lambda, trb = bm.trace(), bsq = bm.squaredNorm();
    const Vec &s = pw[1].sigma;
    res[7] = std::abs(f.sq_norm - (lam2 - lam * lam));
    res[8] = (f.x_sigma - (pw[2].sigma - 2.0 * lam * s)).norm();
    for (Eigen::Index i = 0; i < e.cols(); ++i) {
        const Vec X = e.col(i);
        bump(res[9], (f.along(X) - (apply_L_k(bm, xc, X) - lam * X)).norm());
    }
    res[10] = (f.along(f.x_sigma) - (pw[3].sigma - 3.0 * lam * pw[2].sigma + (4.0 * lam * lam - lam2) * s)).norm();
    res[11] = std::abs(f.grad_sq - (bsq - 2.0 * lam2 - 2.0 * lam * trb + (n + 3) * lam * lam));
    res[12] = (f.rough_lap - (n + 3) * s).norm();
    res[13] =
        std::abs(2.0 * f.lap_half - (-2.0 * bsq + 2.0 * (n + 5) * lam2 + 4.0 * lam * trb - 4.0 * (n + 3) * lam * lam));
    return r;
}

TwoEigenvalueResult two_eigenvalue_test(const QuadraticFormSpec &b)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(b.matrix(), Eigen::EigenvaluesOnly);
    const Vec ev = es.eigenvalues();
    std::vector<std::vector<double>> clusters;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (clusters.empty() || ev[i] - clusters.back().front() > kEigenClusterTolerance)
            clusters.push_back({});
        clusters.back().push_back(ev[i]);
    }
    TwoEigenvalueResult r;
    if (clusters.size() != 2)
        return r;
    auto mean = [](const std::vector<double> &c) {
        double s = 0.0;
        for (double v : c)
            s += v;
        return s / static_cast<double>(c.size());
    };
    const double mu = mean(clusters[0]), nu = mean(clusters[1]);
    r.m = mu + nu;
    r.c = -mu * nu;
    const Mat &bm = b.matrix();
    const Mat defect = bm * bm - r.m * bm - r.c * Mat::Identity(bm.rows(), bm.cols());
    r.check = defect.cwiseAbs().maxCoeff();
    r.is_two = r.check <= 1e-8;
    return r;
}

ColinearityValue sigma3_colinearity(const QuadraticFormSpec &b, const Point &x)
{
    require_sphere(b, x);
    const Vec &xc = x.coords();
    const PowerFormValue s1 = sigma_lambda_k(b.matrix(), xc);
    const PowerFormValue s2 = sigma_lambda_k(b.power(2), xc);
    const PowerFormValue s3 = sigma_lambda_k(b.power(3), xc);
    const double nsq = s1.sigma.squaredNorm();
    if (!(nsq > 1e-24))
        throw DomainError("sigma vanishes; colinearity undefined");
    const Vec v = s3.sigma - 3.0 * s1.lambda * s2.sigma;
    const double factor = v.dot(s1.sigma) / nsq;
    return {(v - factor * s1.sigma).norm(), factor};
}

// -- coefficient matching ------------------------------------------------------

std::array<double, 5> CoefficientSystem::difference() const
{
    std::array<double, 5> d{};
    for (int i = 0; i < 5; ++i)
        d[i] = lhs[i] - rhs[i];
    return d;
}

namespace {

CoefficientSystem coefficients(int n, double k, double p, double q, double mu_sq)
{
    const double m2 = mu_sq, m4 = mu_sq * mu_sq;
    CoefficientSystem s;
    s.lhs = {2.0 * p * m2 + n + 3, (n + 3 - 8.0 * p) * m2, (8.0 * p - n - 3) * m2, 0.0, 0.0};
    s.rhs = {
        k * m2 * (p + q),
        m2 * (-2.0 * p * (k + 1) - p * q * m2 + k * q * m2 - q * (n + 5 + 2 * k)),
        m2 * (p * (n + 3) + 5.0 * p * q * m2 - q * (n + 5 + 2 * k) * m2 - k * q * m2 + 2.0 * (n + 3) * q),
        q * m4 * (-8.0 * p + 2.0 * (n + 3) + n + 5 + 2 * k),
        2.0 * q * m4 * (2.0 * p - n - 3),
    };
    return s;
}

// Root of an affine function of one variable, from two evaluations.
template <typename F> double affine_root(F f, double a, double b)
{
    const double fa = f(a), fb = f(b);
    if (fa == fb)
        throw DomainError("coefficient equation does not determine its unknown");
    return a - fa * (b - a) / (fb - fa);
}

struct QMu {
    double q;
    double mu_sq;
    double consistency;
};

// Newton on the t^0 and t^1 equations in (q, mu^2), multi-start; the t^2
// equation is then the consistency check.
std::vector<QMu> solve_low_order(int n, double k, double p)
{
    auto eqs = [&](double q, double m2) {
        const auto d = coefficients(n, k, p, q, m2).difference();
        return Eigen::Vector3d(d[0], d[1], d[2]);
    };
    std::vector<QMu> roots;
    const double q_starts[] = {-5.0, -3.0, -2.0, -1.5, -1.0, -0.7, -0.5, -0.3, -0.1, 0.1, 0.5, 1.0, 2.0, 3.0};
    const double m_starts[] = {-20.0, -10.0, -3.0, -1.0, 1.0, 3.0, 10.0, 20.0};
    for (double q0 : q_starts)
        for (double m0 : m_starts) {
            Eigen::Vector2d v(q0, m0);
            bool ok = false;
            for (int it = 0; it < 100 && std::isfinite(v[0]) && std::isfinite(v[1]); ++it) {
                const Eigen::Vector3d r = eqs(v[0], v[1]);
                Eigen::Matrix2d jac;
                for (int c = 0; c < 2; ++c) {
                    Eigen::Vector2d vp = v, vm = v;
                    const double h = 1e-6 * std::max(1.0, std::abs(v[c]));
                    vp[c] += h;
                    vm[c] -= h;
                    jac.col(c) = (eqs(vp[0], vp[1]) - eqs(vm[0], vm[1])).head<2>() / (2.0 * h);
                }
                const Eigen::Vector2d step = jac.fullPivLu().solve(r.head<2>());
                if (!step.allFinite())
                    break;
                v -= step;
                if (step.norm() < 1e-14 * std::max(1.0, v.norm())) {
                    ok = true;
                    break;
                }
            }
            if (!ok || !v.allFinite())
                continue;
            const double consistency = eqs(v[0], v[1]).cwiseAbs().maxCoeff();
            if (consistency > 1e-9)
                continue;
            if (std::abs(v[0]) < 1e-9 || std::abs(v[1]) < 1e-9)
                continue; // q = 0 is excluded; mu = 0 is the trivial field
            const bool seen = std::any_of(roots.begin(), roots.end(), [&](const QMu &r) {
                return std::abs(r.q - v[0]) < 1e-7 && std::abs(r.mu_sq - v[1]) < 1e-7;
            });
            if (!seen)
                roots.push_back({v[0], v[1], consistency});
        }
    std::sort(roots.begin(), roots.end(), [](const QMu &a, const QMu &b) { return a.q > b.q; });
    return roots;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void validate(ClassificationCandidate &c, int samples, std::uint64_t seed)
{
    if (!(c.mu_sq > 0.0))
        return;
    c.B = canonical_B(c.n, std::sqrt(c.mu_sq));
    const VectorFieldSpec field = VectorFieldSpec::quadratic_gradient(*c.B, 1);
    const ResidualReport rep = residual_report(Equation::Section, field, BundleMetricParams(c.p, c.q),
                                               Manifold::sphere(c.n), samples, seed);
    c.residual_max = rep.max;
    c.validated = rep.max <= 1e-8;
}

} // namespace

CoefficientSystem coefficient_polynomials(int n, double k_mult, double p, double q, double mu_sq)
{
    if (!(mu_sq > 0.0))
        throw InvalidInput("mu^2 must be positive");
    return coefficients(n, k_mult, p, q, mu_sq);
}

QuadraticFormSpec canonical_B(int n, double mu)
{
    if (n < 1 || n % 2 == 0)
        throw InvalidInput("canonical_B needs odd n");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw InvalidInput("canonical_B needs mu > 0");
    Vec d = Vec::Zero(n + 1);
    d.head((n + 1) / 2).setConstant(mu);
    return QuadraticFormSpec(d.asDiagonal().toDenseMatrix());
}

ClassificationReport solve_classification(int n, int samples, std::uint64_t seed)
{
    if (n % 2 == 0)
        throw InvalidInput("n = " + std::to_string(n) +
                           " rejected: there are no (p,q)-harmonic quadratic gradient fields on even-dimensional "
                           "spheres (the multiplicity (n+1)/2 is not an integer)");
    if (n == 3)
        throw InvalidInput("n = 3 rejected: (n^2-9) vanishes, so the coefficient system leaves only q = 0, which "
                           "the t^3 equation rules out");
    if (n < 5)
        throw InvalidInput("n = " + std::to_string(n) + " rejected: the classification needs odd n >= 5");
    if (samples < 1)
        throw InvalidInput("validation needs at least one sample");

    ClassificationReport rep;
    rep.n = n;
    rep.validation_samples = samples;
    rep.seed = seed;

    // t^4 fixes p for any q, mu != 0; t^3 then fixes k.
    const double probe_q = 0.7, probe_m = 1.3;
    rep.p = affine_root([&](double p) { return coefficients(n, 1.0, p, probe_q, probe_m).difference()[4]; }, 0.0,
                        1.0);
    if (std::abs(coefficients(n, 2.0, rep.p, -1.9, 4.1).difference()[4]) > 1e-9)
        throw DomainError("t^4 equation does not fix p independently of the other unknowns");
    rep.k_real = affine_root(
        [&](double k) { return coefficients(n, k, rep.p, probe_q, probe_m).difference()[3]; }, 0.0, 1.0);
    rep.k_mult = static_cast<int>(std::lround(rep.k_real));
    if (std::abs(rep.k_real - rep.k_mult) > 1e-9 || rep.k_mult < 1 || rep.k_mult > n)
        throw DomainError("t^3 equation gives a non-integer multiplicity " + fmt(rep.k_real));

    for (const QMu &r : solve_low_order(n, rep.k_mult, rep.p)) {
        ClassificationCandidate c;
        c.source = "coefficient-system";
        c.n = n;
        c.p = rep.p;
        c.q = r.q;
        c.k_mult = rep.k_mult;
        c.mu_sq = r.mu_sq;
        validate(c, samples, seed);
        rep.candidates.push_back(std::move(c));
    }

    // The printed closed forms, evaluated independently.
    const double a = 8.0 * (n + 1), b = 2.0 * (3.0 * n * n - 2.0 * n - 17.0), c0 = (n - 3.0) * (n * n - 9.0);
    const double disc = b * b - 4.0 * a * c0;
    if (disc < 0.0) {
        rep.discrepancies.push_back("printed quadratic in q has no real roots");
    } else {
        for (double sgn : {1.0, -1.0}) {
            const double q = (-b + sgn * std::sqrt(disc)) / (2.0 * a);
            PrintedRoot pr;
            pr.q = q;
            pr.mu_sq_printed = (9.0 - n * n) / (4.0 * q) - 2.0 * (n + 3);
            pr.mu_sq_system = affine_root(
                [&](double m2) { return coefficients(n, rep.k_mult, rep.p, q, m2).difference()[0]; }, 1.0, 2.0);
            pr.printed_system = (n * n - 9.0) / 4.0 + q * (pr.mu_sq_system + 2.0 * (n + 3));
            rep.printed_roots.push_back(pr);

            ClassificationCandidate pc;
            pc.source = "printed-formula";
            pc.n = n;
            pc.p = rep.p;
            pc.q = q;
            pc.k_mult = rep.k_mult;
            pc.mu_sq = pr.mu_sq_printed;
            validate(pc, samples, seed);
            rep.candidates.push_back(std::move(pc));
        }
    }

    // Cross-checks between the printed forms, the coefficient equations and
    // the direct residual.
    auto &dis = rep.discrepancies;
    for (const PrintedRoot &pr : rep.printed_roots) {
        const bool matched = std::any_of(rep.candidates.begin(), rep.candidates.end(), [&](const auto &c) {
            return c.source == "coefficient-system" && std::abs(c.q - pr.q) < 1e-7;
        });
        if (!matched)
            dis.push_back("printed quadratic root q = " + fmt(pr.q) + " does not solve the coefficient equations");
        if (std::abs(pr.mu_sq_printed - pr.mu_sq_system) > 1e-9 * std::max(1.0, std::abs(pr.mu_sq_system)))
            dis.push_back("at q = " + fmt(pr.q) + " the printed mu^2 formula gives " + fmt(pr.mu_sq_printed) +
                          " but the coefficient equations give " + fmt(pr.mu_sq_system));
        if (std::abs(pr.printed_system) > 1e-9)
            dis.push_back("printed relation (n^2-9)/4 + q(mu^2 + 2(n+3)) = 0 fails at q = " + fmt(pr.q) +
                          " with the coefficient-system mu^2 (value " + fmt(pr.printed_system) + ")");
    }
    for (const auto &c : rep.candidates) {
        if (c.source != "coefficient-system")
            continue;
        const bool matched = std::any_of(rep.printed_roots.begin(), rep.printed_roots.end(),
                                         [&](const PrintedRoot &pr) { return std::abs(c.q - pr.q) < 1e-7; });
        if (!matched)
            dis.push_back("coefficient-system root q = " + fmt(c.q) + " is not a root of the printed quadratic");
    }
    const bool printed_positive = std::any_of(rep.printed_roots.begin(), rep.printed_roots.end(),
                                              [](const PrintedRoot &pr) { return pr.mu_sq_printed > 0.0; });
    if (!printed_positive)
        dis.push_back("printed mu^2 formula is negative at every root of the printed quadratic");
    const auto validated = std::count_if(rep.candidates.begin(), rep.candidates.end(), [](const auto &c) {
        return c.source == "coefficient-system" && c.validated;
    });
    if (validated != 1)
        dis.push_back(std::to_string(validated) + " coefficient-system candidates pass direct validation; one "
                                                  "was expected");
    for (const auto &c : rep.candidates)
        if (c.source == "coefficient-system" && c.mu_sq > 0.0 && !c.validated)
            dis.push_back("coefficient-system candidate q = " + fmt(c.q) + " fails direct residual validation");
    return rep;
}

} // namespace hpq
