// Acceptance suite: one pass/fail line per criterion, nonzero exit if any fail.

#include "catalog.hpp"
#include "hpq/classification.hpp"
#include "hpq/fd_oracle.hpp"

#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

using namespace hpq;
using namespace hpq::testing;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::vector<double> range(double start, double stop, double step)
{
    std::vector<double> v;
    for (int i = 0; start + i * step <= stop + 1e-12; ++i)
        v.push_back(start + i * step);
    return v;
}

// 1. sigma_k identity suite
Outcome identities()
{
    constexpr double tol = 1e-9;
    Rng rng(2024);
    double worst = 0.0;
    std::string where;
    for (int n = 2; n <= 9; ++n)
        for (int m = 0; m < 20; ++m) {
            const QuadraticFormSpec b(random_symmetric(n + 1, rng));
            for (const Point &x : sample_points(Manifold::sphere(n), 100, 1000 + 31 * n + m)) {
                const IdentityReport r = verify_sigma_identities(b, n, x);
                for (int i = 0; i < kIdentityCount; ++i)
                    if (r.residual[i] > worst) {
                        worst = r.residual[i];
                        where = identity_names()[i] + " n=" + std::to_string(n);
                    }
            }
        }
    return {worst <= tol, "max residual " + sci(worst) + " (" + where + "), tol 1e-9"};
}

// 2. Heisenberg and SL2~ spot values
Outcome spot_values()
{
    constexpr double tol = 1e-10;
    double worst = 0.0;
    const Manifold h3 = Manifold::heisenberg(), sl = Manifold::sl2r();
    for (const Point &x : sample_points(h3, 20, 7)) {
        const Mat e = frame_matrix(x);
        worst = std::max(worst, (ricci(x, e.col(2)) - 0.5 * e.col(2)).norm());
        worst = std::max(worst, std::abs(curvature_component(x, 1, 2, 2, 1) - 0.75));
        worst = std::max(worst, std::abs(curvature_component(x, 1, 3, 3, 1) + 0.25));
        worst = std::max(worst, std::abs(curvature_component(x, 2, 3, 3, 2) + 0.25));
    }
    for (const Point &x : sample_points(sl, 20, 8)) {
        const Mat e = frame_matrix(x);
        worst = std::max(worst, (ricci(x, e.col(0)) - 0.5 * e.col(0)).norm());
    }
    return {worst <= tol, "max deviation " + sci(worst) + ", tol 1e-10"};
}

// 3. Hopf family
Outcome hopf()
{
    constexpr double tol = 1e-8, raised = 1e-3;
    double worst = 0.0, weakest = INFINITY;
    for (int n : {3, 5})
        for (double k : {0.5, 1.0, 2.0}) {
            const VectorFieldSpec h = VectorFieldSpec::hopf(k);
            const double p = hopf_p_for_scale(k);
            for (double q : {0.0, 1.0, 2.0}) {
                for (Equation eq :
                     {Equation::Section, Equation::Killing, Equation::MapHorizontal, Equation::MapVertical})
                    worst = std::max(worst, residual_report(eq, h, {p, q}, Manifold::sphere(n), 200, 42).max);
                weakest = std::min(
                    weakest, residual_report(Equation::Section, h, {p + 0.5, q}, Manifold::sphere(n), 200, 42).max);
            }
        }
    return {worst <= tol && weakest > raised,
            "max residual " + sci(worst) + " (tol 1e-8); perturbed p min of max " + sci(weakest) + " (> 1e-3)"};
}

// 4. Conformal fields
Outcome conformal()
{
    const Manifold s3 = Manifold::sphere(3), s2 = Manifold::sphere(2);
    const double r3 = residual_report(Equation::Section, VectorFieldSpec::conformal(vec({0.6, 0.0, 0.8, 0.0})),
                                      {4.0, -1.0}, s3, 200, 42)
                          .max;
    const auto pts = sample_points(s2, 200, 42);
    double best = INFINITY;
    for (const Vec &a : {vec({0, 0, 0.5}), vec({0, 0, 1}), vec({0.6, 0.0, 0.8}), vec({1.2, -0.4, 1.0})})
        for (double p : range(0.25, 4.0, 0.25))
            for (double q : range(-2.0, 3.0, 0.25))
                best = std::min(best, max_residual(Equation::Section, VectorFieldSpec::conformal(a), {p, q}, pts));
    return {r3 <= 1e-8 && best > 1e-3,
            "S^3 p=4 q=-1 max " + sci(r3) + " (tol 1e-8); S^2 grid min of max " + sci(best) + " (> 1e-3)"};
}

// 5. Rotation fields on S^2
Outcome rotation()
{
    const auto pts = sample_points(Manifold::sphere(2), 200, 42);
    double best = INFINITY;
    for (double c : {0.25, 0.5, 1.0, 2.0, 4.0})
        for (const Eigen::Vector3d &axis : {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 2, -0.5)})
            for (double p : range(0.25, 4.0, 0.25))
                for (double q : range(0.0, 3.0, 0.25))
                    best = std::min(best, max_residual(Equation::Section, c * VectorFieldSpec::rotation_s2(axis),
                                                       {p, q}, pts));
    return {best > 1e-3, "grid min of max residual " + sci(best) + " (> 1e-3)"};
}

// 6. Profile equation
Outcome profile()
{
    double worst = 0.0, const_dev = 0.0;
    for (double p : {1.5, 2.0, 4.0}) {
        const Profile f = Profile::power(1.0 / std::sqrt(p - 1.0), -0.5);
        for (int i = 0; i < 50; ++i) {
            const double t = 0.05 + 0.9 * (i + 0.5) / 50.0;
            worst = std::max(worst, std::abs(ode_F_residual(f, t, p)));
            for (double c : {-2.0, 0.5, 1.0, 3.0})
                const_dev = std::max(const_dev, std::abs(std::abs(ode_F_residual(Profile::constant(c), t, p)) -
                                                         std::abs(c * (1.0 + t * c * c))));
        }
    }
    return {worst <= 1e-10 && const_dev <= 1e-12,
            "solution residual " + sci(worst) + " (tol 1e-10); constant-F deviation " + sci(const_dev)};
}

// 7. Section equation vanishes iff the vertical map equation does
Outcome equivalence()
{
    constexpr double tol = 1e-8;
    int violations = 0, configs = 0, degenerate = 0;
    std::string first;
    for (const Entry &e : full_catalog()) {
        const auto pts = sample_points_for(e.field, e.model, 50, 42);
        for (const BundleMetricParams &params : param_grid()) {
            double r6 = 0.0, r7 = 0.0;
            try {
                for (const Point &x : pts) {
                    const EquivalenceResult r = equivalence_check(e.field, params, x);
                    r6 = std::max(r6, r.section_norm);
                    r7 = std::max(r7, r.map_norm);
                }
            } catch (const DomainError &) {
                ++degenerate; // 1 + q|s|^2 = 0: the map equation is undefined
                continue;
            }
            ++configs;
            if ((r6 <= tol) != (r7 <= tol) && violations++ == 0)
                first = " first: " + e.label;
        }
    }
    return {violations == 0,
            std::to_string(violations) + " XOR violations over " + std::to_string(configs) + " configurations (" +
                std::to_string(degenerate) + " with 1 + q|s|^2 = 0 excluded)" + first};
}

// 8. Tension field against the residual evaluators
Outcome tension()
{
    double gap = 0.0, horizontal = 0.0;
    int tested = 0;
    for (const Entry &e : full_catalog())
        for (const BundleMetricParams &params : param_grid())
            for (const Point &x : sample_points_for(e.field, e.model, 10, 42)) {
                if (std::abs(1.0 + params.q() * sq_norm(x, e.field(x))) <= kDegenerateFibre)
                    continue;
                const double tv = std::sqrt(sq_norm(x, tension_field(e.field, params, x).vertical));
                gap = std::max(gap, std::abs(tv - residual_norm(Equation::MapVertical, e.field, params, x)));
                ++tested;
            }
    const Manifold h3 = Manifold::heisenberg(), sl = Manifold::sl2r();
    const std::vector<Entry> flat = {{"hopf", Manifold::sphere(3), VectorFieldSpec::hopf(1.0)},
                                     {"hopf.s5", Manifold::sphere(5), VectorFieldSpec::hopf(0.5)},
                                     {"h3.E3", h3, VectorFieldSpec::frame_field(h3, 3)},
                                     {"sl2r.E1", sl, VectorFieldSpec::frame_field(sl, 1)}};
    for (const Entry &e : flat)
        for (const BundleMetricParams &params : param_grid())
            for (const Point &x : sample_points(e.model, 50, 43)) {
                if (std::abs(1.0 + params.q() * sq_norm(x, e.field(x))) <= kDegenerateFibre)
                    continue;
                horizontal =
                    std::max(horizontal, std::sqrt(sq_norm(x, tension_field(e.field, params, x).horizontal)));
            }
    return {gap <= 1e-8 && horizontal <= 1e-8, "|tau_v| vs vertical residual gap " + sci(gap) + " at " +
                                                   std::to_string(tested) + " points; horizontal max " +
                                                   sci(horizontal) + " (tol 1e-8)"};
}

// 9. Classification of quadratic gradient fields
Outcome classification()
{
    bool ok = true;
    std::string detail;
    for (int n : {5, 7}) {
        const ClassificationReport r = solve_classification(n, 200, 42);
        const bool pk = std::abs(r.p - (n + 3) / 2.0) < 1e-9 && std::abs(r.k_real - (n + 1) / 2.0) < 1e-9;
        bool roots = r.printed_roots.size() == 2;
        if (n == 5 && roots) {
            std::vector<double> qs = {r.printed_roots[0].q, r.printed_roots[1].q};
            std::sort(qs.begin(), qs.end());
            roots = std::abs(qs[0] + 1.0 + 1.0 / std::sqrt(3.0)) < 1e-12 &&
                    std::abs(qs[1] + 1.0 - 1.0 / std::sqrt(3.0)) < 1e-12;
        }
        bool statuses = !r.candidates.empty();
        int validated = 0;
        for (const ClassificationCandidate &c : r.candidates) {
            statuses = statuses && (c.residual_max.has_value() || !(c.mu_sq > 0.0));
            validated += c.validated;
        }
        const bool surfaced = !r.discrepancies.empty();
        ok = ok && pk && roots && statuses && surfaced;
        detail += "n=" + std::to_string(n) + ": p=" + sci(r.p) + " k=" + sci(r.k_real) + ", " +
                  std::to_string(r.printed_roots.size()) + " printed roots, " + std::to_string(validated) +
                  " validated, " + std::to_string(r.discrepancies.size()) + " discrepancies; ";
    }
    int rejected = 0;
    for (int n : {3, 4, 6}) {
        try {
            solve_classification(n);
        } catch (const InvalidInput &) {
            ++rejected;
        }
    }
    ok = ok && rejected == 3;
    detail += std::to_string(rejected) + "/3 of n in {3,4,6} rejected";
    return {ok, detail};
}

// 10. Analytic operators against the finite-difference oracle
Outcome oracle()
{
    Rng rng(10);
    double first = 0.0, second = 0.0;
    for (const Entry &e : full_catalog())
        for (const Point &x : sample_points_for(e.field, e.model, 10, 42)) {
            const fd::FieldFn values = fd::values_of(e.field);
            const Vec X = random_tangent(x, rng), Y = random_tangent(x, rng), Z = random_tangent(x, rng);
            const Vec a1 = levi_civita(e.field, x, X);
            first = std::max(first, (a1 - fd::levi_civita(values, x, X)).norm() / std::max(1.0, a1.norm()));
            const Vec a2 = second_cov(e.field, x, X, Y);
            second = std::max(second, (a2 - fd::second_cov(values, x, X, Y)).norm() / std::max(1.0, a2.norm()));
            const Vec rc = curvature(x, X, Y, Z);
            second = std::max(second, (rc - fd::curvature(x, X, Y, Z)).norm() / std::max(1.0, rc.norm()));
            const FieldAtPoint f = analyze(e.field, x);
            Vec trace = Vec::Zero(x.coords().size());
            for (Eigen::Index i = 0; i < f.frame.cols(); ++i)
                trace -= fd::second_cov(values, x, f.frame.col(i), f.frame.col(i));
            second = std::max(second, (f.rough_lap - trace).norm() / std::max(1.0, f.rough_lap.norm()));
            const double lap = fd::function_laplacian([&](const Point &y) { return 0.5 * sq_norm(y, e.field(y)); }, x);
            second = std::max(second, std::abs(f.lap_half - lap) / std::max(1.0, std::abs(lap)));
            const Vec g = fd::gradient([&](const Point &y) { return 0.5 * sq_norm(y, e.field(y)); }, x);
            first = std::max(first, (f.x_sigma - g).norm() / std::max(1.0, g.norm()));
        }
    return {first <= 1e-6 && second <= 1e-4,
            "first-order max " + sci(first) + " (tol 1e-6); second-order max " + sci(second) + " (tol 1e-4)"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"sigma_k identity suite", identities},
        {"model geometry spot values", spot_values},
        {"scaled Hopf fields are harmonic exactly at p = 1 + 1/k^2", hopf},
        {"conformal fields (S^3 solution, S^2 nonexistence)", conformal},
        {"no harmonic rotation field on S^2", rotation},
        {"profile equation", profile},
        {"section and vertical map equations vanish together", equivalence},
        {"tension field consistency", tension},
        {"classification of quadratic gradient fields", classification},
        {"finite-difference oracle agreement", oracle},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
