#pragma once

#include <ltl/frame.hpp>
#include <ltl/mesh.hpp>
#include <ltl/stencil.hpp>

#include <Eigen/SparseCore>

#include <optional>
#include <span>
#include <vector>

namespace ltl {

struct DiscretizationOptions
{
    /// Accept meshes with boundary. Only interior vertices whose stencil
    /// support is complete then get stencils; whole-field operators refuse to run.
    bool allow_boundary = false;
};

///
/// Everything the discrete operators need, computed once per mesh: frames,
/// counterclockwise stars, gradient stencils and star areas.
///
/// Stencils use the 1-ring when it has at least 5 vertices and is not
/// degenerate, otherwise the 2-ring.
///
class Discretization
{
public:
    explicit Discretization(TriangleMesh mesh, DiscretizationOptions options = {});

    /// Uses caller-supplied frames instead of the default axis-based ones.
    Discretization(TriangleMesh mesh, std::vector<TangentFrame> frames,
                   DiscretizationOptions options = {});

    const TriangleMesh& mesh() const { return m_mesh; }
    std::size_t num_vertices() const { return m_mesh.num_vertices(); }

    std::span<const TangentFrame> frames() const { return m_frames; }
    const TangentFrame& frame(Index v) const { return m_frames[v]; }

    std::span<const VertexStar> stars() const { return m_stars; }
    const VertexStar& star(Index v) const { return m_stars[v]; }

    bool has_stencil(Index v) const { return m_stencils[v].has_value(); }
    /// Throws BoundaryError when v has no stencil.
    const GradientStencil& stencil(Index v) const;

    /// Σ|T_j| over the star of v.
    double star_area(Index v) const { return m_star_areas[v]; }
    double total_area() const { return m_total_area; }
    double mesh_size() const { return m_mesh_size; }
    bool closed() const { return m_closed; }

    /// Throws BoundaryError unless the mesh is closed.
    void require_closed(const char* what) const;

private:
    void build(DiscretizationOptions options);

    TriangleMesh m_mesh;
    std::vector<TangentFrame> m_frames;
    std::vector<VertexStar> m_stars;
    std::vector<std::optional<GradientStencil>> m_stencils;
    std::vector<double> m_star_areas;
    double m_total_area = 0.0;
    double m_mesh_size = 0.0;
    bool m_closed = false;
};

/// Stencil neighbors of v: the 1-ring, or the 2-ring when `extended`.
std::vector<Index> stencil_neighbors(std::span<const VertexStar> stars, Index v, bool extended);

///
/// Outer normal of triangle (center, endpoint, other) at `endpoint`, in the
/// tangent plane of `endpoint`:
///   w1 = lift(other − endpoint), w2 = lift(center − endpoint)
///   n  = normalize(⟨w2, w1⟩ w1 − ‖w1‖² w2)
/// It is perpendicular to w1 and points away from the lifted center.
/// Throws DegenerateError if ‖w1‖ < min_length or the center lifts onto the edge line.
///
Vec3 outer_normal(const Vec3& endpoint, const Vec3& endpoint_normal, const Vec3& other,
                  const Vec3& center, double min_length);

/// ∇_A h(v) as an ambient vector f_x e1 + f_y e2.
Vec3 gradient_at(const Discretization& d, Index v, std::span<const double> h);
VertexVectorField gradient(const Discretization& d, std::span<const double> h);

///
/// Div_A X(v) = (1 / Σ_k |T_k|) Σ_j ‖v_{j+1} − v_j‖ / 6 · ( 2⟨X_j, n_{j,j}⟩ + 2⟨X_{j+1}, n_{j,j+1}⟩
///                                                     + ⟨X_j, n_{j,j+1}⟩ + ⟨X_{j+1}, n_{j,j}⟩ )
/// where n_{j,u} is the outer normal of T_j = (v, v_j, v_{j+1}) at u.
///
double divergence_at(const Discretization& d, Index v, std::span<const Vec3> X);
VertexScalarField divergence(const Discretization& d, std::span<const Vec3> X);

/// Div_A(∇_A h)(v). Needs stencils on the ring of v only.
double laplacian_at(const Discretization& d, Index v, std::span<const double> h);
VertexScalarField laplacian(const Discretization& d, std::span<const double> h);

/// Lumped integral Σ_v g(v) · star_area(v) / 3.
double integrate(const Discretization& d, std::span<const double> g);

/// integrate(divergence(X)); zero up to round-off on closed meshes.
double conservation_residual(const Discretization& d, std::span<const Vec3> X);

/// Net contribution of one mesh edge to integrate(divergence(X)), summed over
/// the two stars in which it is a link edge.
struct EdgeFlux
{
    Index a = 0;
    Index b = 0;
    double net = 0.0;
    double magnitude = 0.0; ///< sum of the absolute per-star contributions
};

/// Per-edge cancellation diagnostics for the conservation law.
std::vector<EdgeFlux> edge_flux_balance(const Discretization& d, std::span<const Vec3> X);

/// A linear map from vertex scalars to vertex 3-vectors, stored per component.
struct SparseVectorOperator
{
    using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
    Matrix x, y, z;
};

/// Matrix form of gradient(): row v of each component holds the stencil weights.
SparseVectorOperator assemble_gradient(const Discretization& d);

/// Matrix form of divergence(): Div(v) = Σ_u (x(v,u) X_u.x + y(v,u) X_u.y + z(v,u) X_u.z).
SparseVectorOperator assemble_divergence(const Discretization& d);

///
/// Precomputed Δ_A as a sparse vertex-to-vertex matrix, the composition of the
/// assembled divergence and gradient. Requires a closed mesh.
///
class LaplacianMatrix
{
public:
    using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

    explicit LaplacianMatrix(const Discretization& d);

    VertexScalarField apply(std::span<const double> h) const;
    void apply(std::span<const double> h, std::span<double> out) const;

    const Matrix& matrix() const { return m_matrix; }

    /// max_v Σ_k |L(v,k)|, an upper bound on the spectral radius.
    double gershgorin_bound() const;

private:
    Matrix m_matrix;
};

} // namespace ltl
