#include "helpers.hpp"

#include <ltl/errors.hpp>
#include <ltl/generators.hpp>
#include <ltl/studies.hpp>

#include <doctest.h>

#include <numbers>
#include <set>
#include <sstream>

using namespace ltl;
using doctest::Approx;

namespace {

PolynomialField::Coefficients coefficients(std::initializer_list<std::pair<PolynomialField::Exponent, double>> terms)
{
    PolynomialField::Coefficients c{};
    const auto& ex = PolynomialField::exponents();
    for (const auto& [e, value] : terms) {
        const auto it = std::find(ex.begin(), ex.end(), e);
        REQUIRE(it != ex.end());
        c[static_cast<std::size_t>(it - ex.begin())] = value;
    }
    return c;
}

// Δ_Σ p by second differences along two orthonormal tangent great circles of the unit sphere.
double sphere_laplacian_by_differences(const PolynomialField& p, const Vec3& x)
{
    const Vec3 a = (std::abs(x.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(x).normalized();
    const Vec3 b = x.cross(a);
    const double h = 1e-3;
    double sum = 0;
    for (const Vec3& t : {a, b}) {
        const auto at = [&](double s) { return p.value(std::cos(s) * x + std::sin(s) * t); };
        sum += (at(h) - 2 * at(0) + at(-h)) / (h * h);
    }
    return sum;
}

} // namespace

TEST_SUITE("polynomial")
{
    TEST_CASE("exponent table covers total degree <= 4 once")
    {
        const auto& ex = PolynomialField::exponents();
        std::set<PolynomialField::Exponent> seen(ex.begin(), ex.end());
        CHECK(seen.size() == 35);
        int previous = 0;
        for (const auto& e : ex) {
            const int d = e[0] + e[1] + e[2];
            CHECK(d <= 4);
            CHECK(d >= previous);
            previous = d;
        }
        CHECK(ex[0] == PolynomialField::Exponent{0, 0, 0});
        CHECK(ex[1] == PolynomialField::Exponent{1, 0, 0});
        CHECK(ex[3] == PolynomialField::Exponent{0, 0, 1});
        CHECK(ex[4] == PolynomialField::Exponent{2, 0, 0});
        CHECK(ex[5] == PolynomialField::Exponent{1, 1, 0});
    }

    TEST_CASE("value, gradient and Hessian against finite differences")
    {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> u(-1, 1);
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = PolynomialField::random(rng);
            const Vec3 x(u(rng), u(rng), u(rng));
            double direct = 0;
            const auto& ex = PolynomialField::exponents();
            for (std::size_t t = 0; t < 35; ++t) {
                direct += p.coefficients()[t] * std::pow(x.x(), ex[t][0]) * std::pow(x.y(), ex[t][1]) * std::pow(x.z(), ex[t][2]);
            }
            CHECK(p.value(x) == Approx(direct).epsilon(1e-13));

            const double h = 1e-5;
            for (int a = 0; a < 3; ++a) {
                const Vec3 e = Vec3::Unit(a);
                CHECK(p.gradient(x)[a] == Approx((p.value(x + h * e) - p.value(x - h * e)) / (2 * h)).epsilon(1e-7));
                for (int b = 0; b < 3; ++b) {
                    const Vec3 f = Vec3::Unit(b);
                    const double fd = (p.gradient(x + h * f)[a] - p.gradient(x - h * f)[a]) / (2 * h);
                    CHECK(p.hessian(x)(a, b) == Approx(fd).epsilon(1e-7));
                }
            }
        }
    }

    TEST_CASE("zero polynomial is rejected; parsing")
    {
        CHECK_THROWS_AS(PolynomialField(PolynomialField::Coefficients{}), DomainError);
        CHECK_THROWS_AS(PolynomialField::parse("0,0,0"), DomainError);
        const auto p = PolynomialField::parse("1, 2,0,0,0.5");
        CHECK(p.value(Vec3(1, 0, 0)) == Approx(3.5));
        CHECK_THROWS_AS(PolynomialField::parse("1,x"), DomainError);
        std::string many = "1";
        for (int i = 0; i < 35; ++i) many += ",1";
        CHECK_THROWS_AS(PolynomialField::parse(many), DomainError);
    }

    TEST_CASE("random polynomials are reproducible")
    {
        std::mt19937_64 a(5), b(5);
        CHECK(PolynomialField::random(a).coefficients() == PolynomialField::random(b).coefficients());
    }
}

TEST_SUITE("studies")
{
    TEST_CASE("analytic Laplacian examples")
    {
        const Vec3 x = Vec3(0.3, -0.5, 0.7).normalized();
        const PolynomialField z(coefficients({{{0, 0, 1}, 1.0}}));
        CHECK(analytic_laplacian_on_surface(z, Surface::sphere, x) == Approx(-2 * x.z()).epsilon(1e-14));
        const PolynomialField one(coefficients({{{0, 0, 0}, 1.0}}));
        CHECK(analytic_laplacian_on_surface(one, Surface::sphere, x) == 0.0);
        const PolynomialField r2(coefficients({{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, 1.0}}));
        CHECK(std::abs(analytic_laplacian_on_surface(r2, Surface::sphere, x)) < 1e-14);

        // on the torus (rho - 1)^2 + z^2 = 1/4; with rho^2 = x^2 + y^2 the polynomial
        // x^2 + y^2 + z^2 equals 2 rho - 3/4, whose Laplacian follows from the chart
        const Vec3 t = torus_point(0.4, 1.1);
        CHECK(analytic_laplacian_on_surface(one, Surface::torus, t) == 0.0);
        CHECK(analytic_laplacian_on_surface(r2, Surface::torus, t) ==
              Approx(chart_laplacian(r2, Surface::torus, 0.4, 1.1)).epsilon(1e-12));

        CHECK_THROWS_AS(analytic_laplacian_on_surface(z, Surface::sphere, Vec3(0, 0, 1.1)), DomainError);
        CHECK_THROWS_AS(analytic_laplacian_on_surface(z, Surface::torus, Vec3(0, 0, 0)), DomainError);
    }

    TEST_CASE("ambient and chart routes agree")
    {
        std::mt19937_64 rng(22);
        std::uniform_real_distribution<double> u(0, 1);
        for (int trial = 0; trial < 200; ++trial) {
            const auto p = PolynomialField::random(rng);
            const double theta = 2 * std::numbers::pi * u(rng);
            const double eta_s = 0.1 + (std::numbers::pi - 0.2) * u(rng);
            const double eta_t = 2 * std::numbers::pi * u(rng);
            const Vec3 xs = surface_point(Surface::sphere, theta, eta_s);
            const Vec3 xt = surface_point(Surface::torus, theta, eta_t);
            CHECK(analytic_laplacian_on_surface(p, Surface::sphere, xs) ==
                  Approx(chart_laplacian(p, Surface::sphere, theta, eta_s)).epsilon(1e-10));
            CHECK(analytic_laplacian_on_surface(p, Surface::torus, xt) ==
                  Approx(chart_laplacian(p, Surface::torus, theta, eta_t)).epsilon(1e-10));
        }
    }

    TEST_CASE("sphere oracle matches second differences along great circles")
    {
        std::mt19937_64 rng(23);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 50; ++trial) {
            const auto p = PolynomialField::random(rng);
            const Vec3 x = Vec3(g(rng), g(rng), g(rng)).normalized();
            CHECK(analytic_laplacian_on_surface(p, Surface::sphere, x) ==
                  Approx(sphere_laplacian_by_differences(p, x)).epsilon(1e-5));
        }
    }

    TEST_CASE("surface normals")
    {
        const Vec3 t = torus_point(1.0, 2.0);
        const Vec3 n = surface_normal(Surface::torus, t);
        CHECK((n - Vec3(std::cos(2.0) * std::cos(1.0), std::cos(2.0) * std::sin(1.0), std::sin(2.0))).norm() < 1e-14);
    }

    TEST_CASE("slope fit recovers exact power laws")
    {
        for (double p : {0.5, 1.0, 2.0, 3.7}) {
            std::vector<double> r{0.4, 0.2, 0.1, 0.05, 0.03}, e;
            for (double x : r) e.push_back(2.5 * std::pow(x, p));
            CHECK(std::abs(fit_loglog_slope(r, e) - p) <= 1e-6);
        }
        const std::vector<double> one{0.1};
        CHECK_THROWS_AS(fit_loglog_slope(one, one), DomainError);
        const std::vector<double> r{0.1, 0.2}, bad{1.0, 0.0};
        CHECK_THROWS_AS(fit_loglog_slope(r, bad), DomainError);
    }

    TEST_CASE("study meshes")
    {
        CHECK(study_mesh(Surface::sphere, 3).num_triangles() == 1280);
        const auto t = study_mesh(Surface::torus, 3);
        CHECK(t.num_vertices() == 64 * 32);
    }

    TEST_CASE("polynomial study is deterministic and ordered")
    {
        const std::vector<int> levels{3, 2};
        const auto a = run_polynomial_study(Surface::sphere, levels, 8, 7);
        const auto b = run_polynomial_study(Surface::sphere, levels, 8, 7);
        std::ostringstream ca, cb;
        write_csv(ca, a);
        write_csv(cb, b);
        CHECK(ca.str() == cb.str());
        CHECK(ca.str().rfind("level,r,linf,l2,slope_linf,slope_l2\n", 0) == 0);

        REQUIRE(a.levels.size() == 2);
        CHECK(a.levels[0].r > a.levels[1].r);
        CHECK(a.levels[0].level == 2);
        for (const auto& row : a.levels) {
            CHECK(row.l2_median <= row.linf_median);
            CHECK(row.l2_max <= row.linf_max);
            CHECK(row.linf_median <= row.linf_max);
        }

        const auto c = run_polynomial_study(Surface::sphere, levels, 8, 8);
        CHECK(c.levels[0].linf_median != a.levels[0].linf_median);

        std::ostringstream summary;
        write_summary(summary, a);
        CHECK(summary.str().find("area-weighted") != std::string::npos);

        const std::vector<int> single{2};
        CHECK_THROWS_AS(run_polynomial_study(Surface::sphere, single, 4, 1), DomainError);
    }

    TEST_CASE("polynomial study converges on both surfaces")
    {
        const std::vector<int> levels{2, 3, 4};
        const auto s = run_polynomial_study(Surface::sphere, levels, 20, 3);
        MESSAGE("sphere slope " << s.slope_linf);
        CHECK(s.slope_linf >= 0.8);
        const auto t = run_polynomial_study(Surface::torus, levels, 20, 3);
        MESSAGE("torus slope " << t.slope_linf);
        CHECK(t.slope_linf >= 0.8);
    }

    TEST_CASE("conservation study")
    {
        const Discretization d(gen_icosphere(3));
        const auto report = run_conservation_study(d, 20, 7);
        CHECK(report.trials.size() == 20);
        CHECK(report.max_divergence <= 1e-10);
        CHECK(report.max_laplacian <= 1e-10);

        const auto empty = run_conservation_study(d, 0, 7);
        CHECK(empty.trials.empty());
        CHECK(empty.max_divergence == 0.0);

        std::ostringstream a, b;
        write_csv(a, report);
        write_csv(b, run_conservation_study(d, 20, 7));
        CHECK(a.str() == b.str());
        CHECK(a.str().rfind("trial,div_residual,lap_residual\n", 0) == 0);

        const Discretization open(test::hex_patch(2), DiscretizationOptions{.allow_boundary = true});
        CHECK_THROWS_WITH_AS(run_conservation_study(open, 3, 1), doctest::Contains("boundary"), BoundaryError);
    }
}
