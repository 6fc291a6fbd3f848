#include <ltl/errors.hpp>
#include <ltl/generators.hpp>

#include <cmath>
#include <map>
#include <numbers>

namespace ltl {

TriangleMesh make_icosahedron()
{
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> vertices = {
        {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1},
    };
    for (auto& v : vertices) v.normalize();

    std::vector<Triangle> triangles = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };
    return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh gen_icosphere(int subdivisions)
{
    if (subdivisions < 0 || subdivisions > 8) {
        throw Error("icosphere subdivisions must be in [0, 8], got " + std::to_string(subdivisions));
    }
    TriangleMesh base = make_icosahedron();
    std::vector<Vec3> vertices = base.vertices();
    std::vector<Triangle> triangles = base.triangles();

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<Index, Index>, Index> midpoints;
        auto midpoint = [&](Index a, Index b) {
            auto key = std::minmax(a, b);
            auto [it, inserted] = midpoints.try_emplace({key.first, key.second}, vertices.size());
            if (inserted) vertices.push_back(((vertices[a] + vertices[b]) * 0.5).normalized());
            return it->second;
        };

        std::vector<Triangle> refined;
        refined.reserve(triangles.size() * 4);
        for (const Triangle& tri : triangles) {
            Index ab = midpoint(tri[0], tri[1]);
            Index bc = midpoint(tri[1], tri[2]);
            Index ca = midpoint(tri[2], tri[0]);
            refined.push_back({tri[0], ab, ca});
            refined.push_back({tri[1], bc, ab});
            refined.push_back({tri[2], ca, bc});
            refined.push_back({ab, bc, ca});
        }
        triangles = std::move(refined);
    }
    return TriangleMesh(std::move(vertices), std::move(triangles));
}

Vec3 torus_point(double theta, double eta)
{
    const double ring = 0.5 * std::cos(eta) + 1.0;
    return {ring * std::cos(theta), ring * std::sin(theta), 0.5 * std::sin(eta)};
}

TriangleMesh gen_torus(int n_theta, int n_eta)
{
    if (n_theta < 3 || n_eta < 3) {
        throw Error("torus resolution must be at least 3x3");
    }
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Vec3> vertices;
    std::vector<Vec2> coords;
    vertices.reserve(static_cast<std::size_t>(n_theta) * n_eta);
    coords.reserve(vertices.capacity());
    for (int i = 0; i < n_theta; ++i) {
        const double theta = two_pi * i / n_theta;
        for (int j = 0; j < n_eta; ++j) {
            const double eta = two_pi * j / n_eta;
            vertices.push_back(torus_point(theta, eta));
            coords.emplace_back(theta, eta);
        }
    }

    auto id = [&](int i, int j) {
        return static_cast<Index>((i % n_theta) * n_eta + (j % n_eta));
    };
    std::vector<Triangle> triangles;
    triangles.reserve(2 * static_cast<std::size_t>(n_theta) * n_eta);
    for (int i = 0; i < n_theta; ++i) {
        for (int j = 0; j < n_eta; ++j) {
            // x_θ × x_η points outward, so (θ, η) order is counterclockwise seen from outside.
            triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    TriangleMesh mesh(std::move(vertices), std::move(triangles));
    mesh.set_chart_coords(std::move(coords));
    return mesh;
}

} // namespace ltl
