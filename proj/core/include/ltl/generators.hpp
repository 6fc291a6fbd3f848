#pragma once

#include <ltl/mesh.hpp>

namespace ltl {

/// Regular icosahedron inscribed in the unit sphere, outward winding.
TriangleMesh make_icosahedron();

///
/// Unit icosphere: the icosahedron with every triangle split 4-way `subdivisions`
/// times, re-projecting onto the unit sphere after each level.
/// Produces 20 * 4^subdivisions triangles. Requires subdivisions <= 8.
///
TriangleMesh gen_icosphere(int subdivisions);

///
/// Torus x(θ,η) = ((cos η / 2 + 1) cos θ, (cos η / 2 + 1) sin θ, sin η / 2) sampled on a
/// regular n_theta x n_eta grid, each quad split into two triangles.
/// The (θ, η) of every vertex is stored as chart coordinates.
///
TriangleMesh gen_torus(int n_theta, int n_eta);

/// Point of the torus above for chart coordinates (θ, η).
Vec3 torus_point(double theta, double eta);

} // namespace ltl
