#pragma once

#include <ltl/generators.hpp>
#include <ltl/mesh.hpp>

#include <cmath>
#include <map>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace ltl::test {

/// Hexagonal lattice patch in the z = 0 plane: all axial points (q, s) with
/// |q|, |s|, |q + s| ≤ rings. Vertex 0 is the origin. Interior points are
/// jittered by up to `jitter` (deterministic).
inline TriangleMesh hex_patch(int rings, double jitter = 0.0, unsigned seed = 1)
{
    std::map<std::pair<int, int>, Index> index;
    std::vector<Vec3> vertices;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    auto add = [&](int q, int s) {
        index[{q, s}] = vertices.size();
        Vec3 p(q + 0.5 * s, std::sqrt(3.0) / 2.0 * s, 0.0);
        if (jitter > 0.0 && (q != 0 || s != 0)) p += jitter * Vec3(u(rng), u(rng), 0.0);
        vertices.push_back(p);
    };
    add(0, 0);
    for (int q = -rings; q <= rings; ++q) {
        for (int s = -rings; s <= rings; ++s) {
            if ((q != 0 || s != 0) && std::abs(q + s) <= rings) add(q, s);
        }
    }

    std::vector<Triangle> triangles;
    auto has = [&](int q, int s) { return index.count({q, s}) > 0; };
    for (const auto& [key, a] : index) {
        const auto [q, s] = key;
        if (has(q + 1, s) && has(q, s + 1)) triangles.push_back({a, index[{q + 1, s}], index[{q, s + 1}]});
        if (has(q, s + 1) && has(q - 1, s + 1)) triangles.push_back({a, index[{q, s + 1}], index[{q - 1, s + 1}]});
    }
    return TriangleMesh(std::move(vertices), std::move(triangles));
}

/// Applies `f` to every vertex.
template <typename F>
std::vector<double> sample(const TriangleMesh& mesh, F&& f)
{
    std::vector<double> out(mesh.num_vertices());
    for (Index v = 0; v < mesh.num_vertices(); ++v) out[v] = f(mesh.vertex(v));
    return out;
}

/// Least-squares log-log slope, written out independently of the library.
inline double slope(const std::vector<double>& r, const std::vector<double>& e)
{
    const double n = static_cast<double>(r.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double x = std::log(r[i]), y = std::log(e[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline TriangleMesh without_triangle(const TriangleMesh& mesh, Index t)
{
    std::vector<Triangle> tris = mesh.triangles();
    tris.erase(tris.begin() + static_cast<std::ptrdiff_t>(t));
    return TriangleMesh(mesh.vertices(), std::move(tris));
}

inline TriangleMesh transformed(const TriangleMesh& mesh, double scale, const Vec3& shift)
{
    std::vector<Vec3> v = mesh.vertices();
    for (Vec3& p : v) p = scale * p + shift;
    return TriangleMesh(std::move(v), mesh.triangles());
}

} // namespace ltl::test
