#pragma once

#include <ltl/mesh.hpp>

#include <span>
#include <vector>

namespace ltl {

///
/// Approximate unit normal and orthonormal tangent basis at a vertex.
/// (e1, e2, normal) is right-handed.
///
struct TangentFrame
{
    Vec3 normal = Vec3::UnitZ();
    Vec3 e1 = Vec3::UnitX();
    Vec3 e2 = Vec3::UnitY();

    /// Coordinates of w in (e1, e2); the normal component is dropped.
    Vec2 to_local(const Vec3& w) const { return {w.dot(e1), w.dot(e2)}; }
    Vec3 to_ambient(const Vec2& c) const { return c.x() * e1 + c.y() * e2; }

    /// Same normal, basis rotated by `angle` radians about it.
    TangentFrame rotated(double angle) const;
};

///
/// Centroid-weighted normal at v:
///   N_A(v) = normalize(Σ_T ω_T N_T),  ω_T = ‖G_T − v‖⁻² / Σ_T' ‖G_T' − v‖⁻²
/// over the triangles in `incident`. N_T follows the stored winding.
/// Throws DegenerateError when the weighted sum cancels.
///
Vec3 vertex_normal(const TriangleMesh& mesh, std::span<const Index> incident, Index v);

std::vector<Vec3> vertex_normals(const TriangleMesh& mesh);

/// e1 is the global axis least aligned with the normal (ties: x, y, z) projected
/// onto the tangent plane; e2 = normal × e1.
TangentFrame tangent_frame(const Vec3& normal);

std::vector<TangentFrame> tangent_frames(std::span<const Vec3> normals);

/// Neighbors of a vertex lifted into its tangent plane, in frame coordinates.
struct LiftedPolygon
{
    Index center = 0;
    std::vector<Index> neighbors;
    std::vector<Vec2> lifted;
};

/// Lifts the distinct ring vertices of `star`, in ring order.
LiftedPolygon lift_polygon(const TriangleMesh& mesh, const VertexStar& star, const TangentFrame& frame);

/// Lifts an arbitrary neighbor list (used for extended 2-ring stencils).
LiftedPolygon lift_points(const TriangleMesh& mesh, Index center, std::span<const Index> neighbors,
                          const TangentFrame& frame);

struct LiftedValues
{
    double center = 0.0;
    std::vector<double> values;
};

/// Function values carried onto the lifted polygon: f(x_i, y_i) = h(v_i), f(0, 0) = h(v).
LiftedValues lift_scalar(std::span<const double> field, const LiftedPolygon& polygon);

/// Tangential part of w at a vertex with the given normal: w − ⟨w, N⟩N.
inline Vec3 lift_vector(const Vec3& w, const Vec3& normal)
{
    return w - w.dot(normal) * normal;
}

} // namespace ltl
