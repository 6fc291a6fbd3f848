#include "helpers.hpp"

#include <ltl/errors.hpp>
#include <ltl/frame.hpp>
#include <ltl/generators.hpp>

#include <doctest.h>

#include <Eigen/Geometry>

#include <numbers>

using namespace ltl;

namespace {

// Centroid-weighted normal, recomputed from scratch.
Vec3 brute_force_normal(const TriangleMesh& m, Index v)
{
    Vec3 sum = Vec3::Zero();
    double wsum = 0.0;
    for (const auto& t : m.triangles()) {
        if (t[0] != v && t[1] != v && t[2] != v) continue;
        const Vec3 a = m.vertex(t[0]), b = m.vertex(t[1]), c = m.vertex(t[2]);
        const Vec3 g = (a + b + c) / 3.0;
        const double w = 1.0 / (g - m.vertex(v)).squaredNorm();
        sum += w * (b - a).cross(c - a).normalized();
        wsum += w;
    }
    return (sum / wsum).normalized();
}

void check_frame(const TangentFrame& f)
{
    CHECK(std::abs(f.normal.norm() - 1) < 1e-12);
    CHECK(std::abs(f.e1.norm() - 1) < 1e-12);
    CHECK(std::abs(f.e2.norm() - 1) < 1e-12);
    CHECK(std::abs(f.e1.dot(f.e2)) < 1e-12);
    CHECK(std::abs(f.e1.dot(f.normal)) < 1e-12);
    CHECK(std::abs(f.e2.dot(f.normal)) < 1e-12);
    CHECK(f.e1.cross(f.e2).dot(f.normal) > 0);
}

double max_normal_error(const TriangleMesh& m)
{
    const auto normals = vertex_normals(m);
    double err = 0.0;
    for (Index v = 0; v < m.num_vertices(); ++v) err = std::max(err, (normals[v] - m.vertex(v)).norm());
    return err;
}

} // namespace

TEST_SUITE("frame")
{
    TEST_CASE("planar mesh normal is exactly +z")
    {
        const auto patch = test::hex_patch(2, 0.2);
        for (const Vec3& n : vertex_normals(patch)) CHECK(n == Vec3::UnitZ());
    }

    TEST_CASE("icosahedron vertex normal is the vertex direction")
    {
        const auto m = make_icosahedron();
        const auto normals = vertex_normals(m);
        for (Index v = 0; v < 12; ++v) CHECK((normals[v] - m.vertex(v)).norm() < 1e-12);
    }

    TEST_CASE("normal matches brute-force centroid weighting")
    {
        const auto m = gen_torus(9, 7);
        const auto normals = vertex_normals(m);
        for (Index v = 0; v < m.num_vertices(); ++v) CHECK((normals[v] - brute_force_normal(m, v)).norm() < 1e-14);
    }

    TEST_CASE("normal is invariant under scaling")
    {
        const auto m = gen_icosphere(2);
        const auto a = vertex_normals(m);
        const auto b = vertex_normals(test::transformed(m, 1e-3, Vec3(4, 5, 6)));
        for (Index v = 0; v < m.num_vertices(); ++v) CHECK((a[v] - b[v]).norm() < 1e-11);
    }

    TEST_CASE("cancelling normals raise")
    {
        // the same triangle with both windings
        const TriangleMesh m({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)}, {Triangle{0, 1, 2}, Triangle{0, 2, 1}});
        const Index incident[] = {0, 1};
        CHECK_THROWS_WITH_AS(vertex_normal(m, incident, 0), doctest::Contains("degenerate normal"), DegenerateError);
    }

    TEST_CASE("tangent frame axis rule")
    {
        const auto z = tangent_frame(Vec3::UnitZ());
        CHECK(z.e1 == Vec3::UnitX());
        CHECK(z.e2 == Vec3::UnitY());

        // y and z tie at |component| = 0; y comes first
        const auto x = tangent_frame(Vec3::UnitX());
        CHECK(x.e1 == Vec3::UnitY());
        CHECK(x.e2 == Vec3::UnitZ());

        const auto d = tangent_frame(Vec3(1, 1, 1).normalized());
        CHECK((d.e1 - Vec3(2, -1, -1).normalized()).norm() < 1e-15);
    }

    TEST_CASE("tangent frames are orthonormal and right-handed")
    {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> g;
        for (int i = 0; i < 2000; ++i) {
            const Vec3 n = Vec3(g(rng), g(rng), g(rng)).normalized();
            const auto f = tangent_frame(n);
            check_frame(f);
            check_frame(f.rotated(g(rng)));
        }
    }

    TEST_CASE("frames are deterministic")
    {
        const auto m = gen_icosphere(3);
        const auto a = tangent_frames(vertex_normals(m));
        const auto b = tangent_frames(vertex_normals(gen_icosphere(3)));
        for (Index v = 0; v < m.num_vertices(); ++v) {
            CHECK(a[v].normal == b[v].normal);
            CHECK(a[v].e1 == b[v].e1);
            CHECK(a[v].e2 == b[v].e2);
        }
    }

    TEST_CASE("lifting examples")
    {
        const TriangleMesh flat({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 3)}, {});
        const TangentFrame f = tangent_frame(Vec3::UnitZ());
        const Index nb[] = {1, 2};
        const auto lifted = lift_points(flat, 0, nb, f);
        CHECK(lifted.lifted[0] == Vec2(1, 0));
        CHECK(lifted.lifted[1] == Vec2(0, 0));

        const double rho = 0.3;
        const TriangleMesh sphere({Vec3(0, 0, 1), Vec3(std::sin(rho), 0, std::cos(rho))}, {});
        const Index one[] = {1};
        CHECK(lift_points(sphere, 0, one, f).lifted[0].x() == doctest::Approx(std::sin(rho)).epsilon(1e-15));
    }

    TEST_CASE("lifted points recompose and are tangent")
    {
        const auto m = gen_torus(20, 10);
        const auto normals = vertex_normals(m);
        const auto frames = tangent_frames(normals);
        const auto stars = build_stars(m, normals);
        for (Index v = 0; v < m.num_vertices(); ++v) {
            const auto poly = lift_polygon(m, stars[v], frames[v]);
            CHECK(poly.neighbors == stars[v].ring);
            for (std::size_t i = 0; i < poly.neighbors.size(); ++i) {
                const Vec3 d = m.vertex(poly.neighbors[i]) - m.vertex(v);
                const Vec3 projected = d - d.dot(normals[v]) * normals[v];
                const Vec3 recomposed = frames[v].to_ambient(poly.lifted[i]);
                CHECK((recomposed - projected).norm() <= 1e-12);
                CHECK(std::abs(recomposed.dot(normals[v])) <= 1e-12);
            }
        }
    }

    TEST_CASE("scalar lifting passes values through")
    {
        const auto m = gen_icosphere(1);
        const auto normals = vertex_normals(m);
        const auto stars = build_stars(m, normals);
        const auto poly = lift_polygon(m, stars[20], tangent_frame(normals[20]));

        std::vector<double> c(m.num_vertices(), 2.5);
        const auto lc = lift_scalar(c, poly);
        CHECK(lc.center == 2.5);
        for (double x : lc.values) CHECK(x == 2.5);

        std::vector<double> id(m.num_vertices());
        for (Index v = 0; v < id.size(); ++v) id[v] = static_cast<double>(v);
        const auto li = lift_scalar(id, poly);
        CHECK(li.center == 20.0);
        for (std::size_t i = 0; i < poly.neighbors.size(); ++i) CHECK(li.values[i] == static_cast<double>(poly.neighbors[i]));
    }

    TEST_CASE("vector lifting is a projection")
    {
        const Vec3 n = Vec3(0.2, -0.4, 0.9).normalized();
        const auto f = tangent_frame(n);
        CHECK((lift_vector(f.e1, n) - f.e1).norm() < 1e-15);
        CHECK(lift_vector(n, n).norm() < 1e-15);
        std::mt19937_64 rng(2);
        std::normal_distribution<double> g;
        for (int i = 0; i < 100; ++i) {
            const Vec3 w(g(rng), g(rng), g(rng));
            const Vec3 once = lift_vector(w, n);
            CHECK((lift_vector(once, n) - once).norm() < 1e-14);
            CHECK(std::abs(once.dot(n)) < 1e-14);
        }
    }

    TEST_CASE("normal error converges on the torus grid")
    {
        std::vector<double> r, e;
        for (int k = 0; k < 4; ++k) {
            const auto m = gen_torus(16 << k, 8 << k);
            const auto normals = vertex_normals(m);
            double err = 0.0;
            for (Index v = 0; v < m.num_vertices(); ++v) {
                const Vec2 q = m.chart_coords()[v];
                const Vec3 exact(std::cos(q.y()) * std::cos(q.x()), std::cos(q.y()) * std::sin(q.x()), std::sin(q.y()));
                err = std::max(err, (normals[v] - exact).norm());
            }
            r.push_back(mesh_size(m).r);
            e.push_back(err);
        }
        MESSAGE("torus normal slope " << test::slope(r, e));
        CHECK(test::slope(r, e) >= 1.8);
    }

    TEST_CASE("median normal error converges quadratically on icospheres")
    {
        std::vector<double> r, e;
        for (int k = 2; k <= 5; ++k) {
            const auto m = gen_icosphere(k);
            const auto normals = vertex_normals(m);
            std::vector<double> err(m.num_vertices());
            for (Index v = 0; v < m.num_vertices(); ++v) err[v] = (normals[v] - m.vertex(v)).norm();
            std::nth_element(err.begin(), err.begin() + err.size() / 2, err.end());
            r.push_back(mesh_size(m).r);
            e.push_back(err[err.size() / 2]);
        }
        CHECK(test::slope(r, e) >= 1.8);
    }

    // Fails: the 60 neighbors of the 12 valence-5 vertices keep an O(r) error
    // (k = 1 is exact by symmetry and makes the fit meaningless as well).
    TEST_CASE("max normal error slope on icospheres k = 1..5" * doctest::may_fail())
    {
        std::vector<double> r, e;
        for (int k = 1; k <= 5; ++k) {
            const auto m = gen_icosphere(k);
            r.push_back(mesh_size(m).r);
            e.push_back(std::max(max_normal_error(m), 1e-300));
        }
        MESSAGE("icosphere max normal error slope " << test::slope(r, e));
        CHECK(test::slope(r, e) >= 1.8);
    }
}
