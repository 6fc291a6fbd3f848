#pragma once

#include <ltl/types.hpp>

#include <span>
#include <string>
#include <vector>

namespace ltl {

///
/// Indexed triangle mesh. Immutable once constructed; all queries are const.
///
/// Meshes produced by a parametric generator (e.g. the torus) additionally
/// carry the chart coordinates of every vertex so that fields defined in
/// parameter space can be sampled exactly.
///
class TriangleMesh
{
public:
    TriangleMesh() = default;
    TriangleMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

    const std::vector<Vec3>& vertices() const { return m_vertices; }
    const std::vector<Triangle>& triangles() const { return m_triangles; }

    const Vec3& vertex(Index v) const { return m_vertices[v]; }
    const Triangle& triangle(Index t) const { return m_triangles[t]; }

    std::size_t num_vertices() const { return m_vertices.size(); }
    std::size_t num_triangles() const { return m_triangles.size(); }

    bool has_chart_coords() const { return !m_chart_coords.empty(); }
    const std::vector<Vec2>& chart_coords() const { return m_chart_coords; }
    void set_chart_coords(std::vector<Vec2> coords);

private:
    std::vector<Vec3> m_vertices;
    std::vector<Triangle> m_triangles;
    std::vector<Vec2> m_chart_coords;
};

/// Maximum edge length of a triangulation.
struct MeshSize
{
    double r = 0.0;
};

struct ValidationReport
{
    std::size_t num_vertices = 0;
    std::size_t num_edges = 0;
    std::size_t num_triangles = 0;

    std::size_t boundary_edges = 0;
    std::size_t nonmanifold_edges = 0;
    /// Edges traversed in the same direction by two of their triangles.
    std::size_t inconsistent_edges = 0;

    std::vector<Index> out_of_range_triangles;
    std::vector<Index> degenerate_triangles;
    std::vector<Index> unreferenced_vertices;
    std::vector<Index> nonmanifold_vertices;

    bool closed = false;

    bool manifold() const { return nonmanifold_edges == 0 && nonmanifold_vertices.empty(); }
    bool oriented() const { return inconsistent_edges == 0; }

    /// All checks pass; boundary is permitted.
    bool valid() const
    {
        return manifold() && oriented() && out_of_range_triangles.empty() &&
               degenerate_triangles.empty() && unreferenced_vertices.empty();
    }

    long euler_characteristic() const
    {
        return static_cast<long>(num_vertices) - static_cast<long>(num_edges) +
               static_cast<long>(num_triangles);
    }

    std::string summary() const;
};

ValidationReport validate(const TriangleMesh& mesh);

/// Throws MeshError for invalid meshes and BoundaryError for open ones.
void require_valid_closed(const TriangleMesh& mesh);

/// Throws DegenerateError when area < 1e-12 * (longest edge)^2.
double triangle_area(const TriangleMesh& mesh, Index t);

Vec3 triangle_centroid(const TriangleMesh& mesh, Index t);

/// Unit normal following the stored winding.
Vec3 triangle_normal(const TriangleMesh& mesh, Index t);

MeshSize mesh_size(const TriangleMesh& mesh);

double total_area(const TriangleMesh& mesh);

/// Unique undirected edges, each stored as (min, max).
std::vector<std::array<Index, 2>> unique_edges(const TriangleMesh& mesh);

/// For every vertex, the triangles that reference it, in triangle order.
std::vector<std::vector<Index>> incident_triangles(const TriangleMesh& mesh);

///
/// One-ring of a vertex.
///
/// For a closed star `ring` holds the n distinct neighbors v_0..v_{n-1} (the
/// cyclic closure v_n = v_0 is implicit) and `ring_triangles[j]` is the triangle
/// (v, v_j, v_{j+1 mod n}). For an open (boundary) star `ring` holds n+1
/// vertices and `ring_triangles` n triangles.
///
struct VertexStar
{
    Index center = 0;
    std::vector<Index> ring;
    std::vector<Index> ring_triangles;
    bool closed = true;

    std::size_t num_sectors() const { return ring_triangles.size(); }
    Index sector_start(std::size_t j) const { return ring[j]; }
    Index sector_end(std::size_t j) const { return ring[closed ? (j + 1) % ring.size() : j + 1]; }
};

///
/// Builds the one-ring of every vertex by walking shared edges, then fixes the
/// sense of each ring so it turns counterclockwise about `normals[v]`.
///
/// Throws MeshError naming the vertex when its incident triangles do not form
/// a single fan.
///
std::vector<VertexStar> build_stars(const TriangleMesh& mesh, std::span<const Vec3> normals);

/// Sum of |T_j| over the star's triangles.
double star_area(const TriangleMesh& mesh, const VertexStar& star);

} // namespace ltl
