#pragma once

#include <ltl/operators.hpp>
#include <ltl/polynomial.hpp>
#include <ltl/studies.hpp>

#include <functional>
#include <optional>
#include <string>

namespace ltl::cli {

/// A path to an OFF/OBJ file, or `icosphere:k` / `torus:NxM`.
TriangleMesh load_mesh_spec(const std::string& spec);

/// The analytic surface the mesh samples, if it is the unit sphere or the torus.
std::optional<Surface> detect_surface(const TriangleMesh& mesh);

struct ScalarSpec
{
    std::string name;
    VertexScalarField values;
    /// Set when the field is the restriction of a polynomial (exact oracles available).
    std::optional<PolynomialField> polynomial;
    bool constant = false;
};

///
/// cos_eta | sin3theta_sin7eta | torus_disk | x | y | z | const:c |
/// poly:c000,c100,c010,... | csv:path[@column]
///
ScalarSpec parse_scalar_spec(const std::string& spec, const TriangleMesh& mesh);

struct VectorSpec
{
    std::string name;
    VertexVectorField values;
    /// Exact surface divergence at each vertex when known.
    std::function<double(const Vec3&)> exact_divergence;
};

///
/// zero | rotation | const:ax,ay,az | grad:<scalar spec> | csv:path[@name]
/// `grad:` uses the discrete gradient of the scalar field.
///
VectorSpec parse_vector_spec(const std::string& spec, const Discretization& d);

} // namespace ltl::cli
