#include <ltl/errors.hpp>
#include <ltl/frame.hpp>

#include <Eigen/Geometry>

#include <cmath>

namespace ltl {

TangentFrame TangentFrame::rotated(double angle) const
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    TangentFrame out;
    out.normal = normal;
    out.e1 = c * e1 + s * e2;
    out.e2 = -s * e1 + c * e2;
    return out;
}

Vec3 vertex_normal(const TriangleMesh& mesh, std::span<const Index> incident, Index v)
{
    if (incident.empty()) {
        throw DegenerateError("vertex " + std::to_string(v) + " has no incident triangles");
    }
    const Vec3& p = mesh.vertex(v);

    double weight_sum = 0.0;
    Vec3 accum = Vec3::Zero();
    for (Index t : incident) {
        double w = 1.0 / (triangle_centroid(mesh, t) - p).squaredNorm();
        accum += w * triangle_normal(mesh, t);
        weight_sum += w;
    }
    accum /= weight_sum;

    const double len = accum.norm();
    if (!(len > 1e-12)) {
        throw DegenerateError("degenerate normal at vertex " + std::to_string(v));
    }
    return accum / len;
}

std::vector<Vec3> vertex_normals(const TriangleMesh& mesh)
{
    auto incident = incident_triangles(mesh);
    std::vector<Vec3> normals(mesh.num_vertices());
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        normals[v] = vertex_normal(mesh, incident[v], v);
    }
    return normals;
}

TangentFrame tangent_frame(const Vec3& normal)
{
    int axis = 0;
    for (int k = 1; k < 3; ++k) {
        if (std::abs(normal[k]) < std::abs(normal[axis])) axis = k;
    }
    const Vec3 a = Vec3::Unit(axis);

    TangentFrame frame;
    frame.normal = normal;
    frame.e1 = lift_vector(a, normal).normalized();
    frame.e2 = normal.cross(frame.e1);
    return frame;
}

std::vector<TangentFrame> tangent_frames(std::span<const Vec3> normals)
{
    std::vector<TangentFrame> frames;
    frames.reserve(normals.size());
    for (const Vec3& n : normals) frames.push_back(tangent_frame(n));
    return frames;
}

LiftedPolygon lift_points(const TriangleMesh& mesh, Index center, std::span<const Index> neighbors,
                          const TangentFrame& frame)
{
    LiftedPolygon poly;
    poly.center = center;
    poly.neighbors.assign(neighbors.begin(), neighbors.end());
    poly.lifted.reserve(neighbors.size());
    const Vec3& p = mesh.vertex(center);
    for (Index n : neighbors) {
        // Projecting onto (e1, e2) discards the normal component of v_i − v.
        poly.lifted.push_back(frame.to_local(mesh.vertex(n) - p));
    }
    return poly;
}

LiftedPolygon lift_polygon(const TriangleMesh& mesh, const VertexStar& star, const TangentFrame& frame)
{
    return lift_points(mesh, star.center, star.ring, frame);
}

LiftedValues lift_scalar(std::span<const double> field, const LiftedPolygon& polygon)
{
    LiftedValues out;
    out.center = field[polygon.center];
    out.values.reserve(polygon.neighbors.size());
    for (Index n : polygon.neighbors) out.values.push_back(field[n]);
    return out;
}

} // namespace ltl
