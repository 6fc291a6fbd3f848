#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstddef>
#include <vector>

namespace ltl {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

using Index = std::size_t;
using Triangle = std::array<Index, 3>;

/// One value per mesh vertex.
using VertexScalarField = std::vector<double>;

/// One ambient 3-vector per mesh vertex.
using VertexVectorField = std::vector<Vec3>;

} // namespace ltl
