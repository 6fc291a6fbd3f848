#include <ltl/errors.hpp>
#include <ltl/operators.hpp>
#include <ltl/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ltl {

namespace {

constexpr double k_min_edge_ratio = 1e-12;

void check_size(std::size_t got, std::size_t expected, const char* what)
{
    if (got != expected) {
        throw Error(std::string(what) + ": field has " + std::to_string(got) + " entries for " +
                    std::to_string(expected) + " vertices");
    }
}

struct SectorNormals
{
    Vec3 at_start; // n(T_j, v_j)
    Vec3 at_end;   // n(T_j, v_{j+1})
    double length; // ‖v_{j+1} − v_j‖
};

SectorNormals sector_normals(const Discretization& d, const VertexStar& star, std::size_t j)
{
    const TriangleMesh& mesh = d.mesh();
    const Index a = star.sector_start(j);
    const Index b = star.sector_end(j);
    const Vec3& center = mesh.vertex(star.center);
    const Vec3& pa = mesh.vertex(a);
    const Vec3& pb = mesh.vertex(b);
    const double min_length = k_min_edge_ratio * d.mesh_size();
    return {outer_normal(pa, d.frame(a).normal, pb, center, min_length),
            outer_normal(pb, d.frame(b).normal, pa, center, min_length), (pb - pa).norm()};
}

const VertexStar& closed_star(const Discretization& d, Index v)
{
    const VertexStar& star = d.star(v);
    if (!star.closed) {
        throw BoundaryError("divergence undefined at boundary vertex " + std::to_string(v));
    }
    return star;
}

template <typename FieldAt>
double divergence_impl(const Discretization& d, Index v, FieldAt&& field_at)
{
    const VertexStar& star = closed_star(d, v);
    double flux = 0.0;
    for (std::size_t j = 0; j < star.num_sectors(); ++j) {
        const SectorNormals s = sector_normals(d, star, j);
        const Vec3 xa = field_at(star.sector_start(j));
        const Vec3 xb = field_at(star.sector_end(j));
        flux += s.length / 6.0 *
                (2.0 * xa.dot(s.at_start) + 2.0 * xb.dot(s.at_end) + xa.dot(s.at_end) +
                 xb.dot(s.at_start));
    }
    return flux / d.star_area(v);
}

GradientStencil build_stencil(const Discretization& d, Index v)
{
    const auto stars = d.stars();
    const VertexStar& star = stars[v];
    if (star.ring.size() >= 5) {
        try {
            return solve_stencil(lift_polygon(d.mesh(), star, d.frame(v)));
        } catch (const DegenerateError&) {
            // fall through to the 2-ring
        }
    }
    auto neighbors = stencil_neighbors(stars, v, true);
    GradientStencil stencil = solve_stencil(lift_points(d.mesh(), v, neighbors, d.frame(v)));
    stencil.extended = true;
    return stencil;
}

} // namespace

Discretization::Discretization(TriangleMesh mesh, DiscretizationOptions options)
    : m_mesh(std::move(mesh))
{
    build(options);
}

Discretization::Discretization(TriangleMesh mesh, std::vector<TangentFrame> frames,
                               DiscretizationOptions options)
    : m_mesh(std::move(mesh))
    , m_frames(std::move(frames))
{
    if (m_frames.size() != m_mesh.num_vertices()) {
        throw Error("one tangent frame per vertex required");
    }
    build(options);
}

void Discretization::build(DiscretizationOptions options)
{
    const ValidationReport report = validate(m_mesh);
    if (!report.valid()) throw MeshError("invalid mesh:\n" + report.summary());
    m_closed = report.closed;
    if (!m_closed && !options.allow_boundary) {
        throw BoundaryError("mesh has boundary (" + std::to_string(report.boundary_edges) +
                            " boundary edges); operators require a closed surface");
    }

    if (m_frames.empty()) m_frames = tangent_frames(vertex_normals(m_mesh));
    std::vector<Vec3> normals(m_frames.size());
    std::transform(m_frames.begin(), m_frames.end(), normals.begin(),
                   [](const TangentFrame& f) { return f.normal; });
    m_stars = build_stars(m_mesh, normals);

    m_mesh_size = ltl::mesh_size(m_mesh).r;
    m_star_areas.resize(m_mesh.num_vertices());
    for (Index v = 0; v < m_mesh.num_vertices(); ++v) {
        m_star_areas[v] = ltl::star_area(m_mesh, m_stars[v]);
    }
    m_total_area = ltl::total_area(m_mesh);

    m_stencils.assign(m_mesh.num_vertices(), std::nullopt);
    parallel_for(m_mesh.num_vertices(), [&](std::size_t v) {
        if (m_stars[v].closed) m_stencils[v] = build_stencil(*this, v);
    });
}

const GradientStencil& Discretization::stencil(Index v) const
{
    if (!m_stencils[v]) {
        throw BoundaryError("no gradient stencil at boundary vertex " + std::to_string(v));
    }
    return *m_stencils[v];
}

void Discretization::require_closed(const char* what) const
{
    if (!m_closed) {
        throw BoundaryError(std::string(what) + " requires a closed mesh (mesh has boundary)");
    }
}

std::vector<Index> stencil_neighbors(std::span<const VertexStar> stars, Index v, bool extended)
{
    std::vector<Index> out = stars[v].ring;
    if (!extended) return out;
    for (Index u : stars[v].ring) {
        for (Index w : stars[u].ring) {
            if (w != v && std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
        }
    }
    return out;
}

Vec3 outer_normal(const Vec3& endpoint, const Vec3& endpoint_normal, const Vec3& other,
                  const Vec3& center, double min_length)
{
    const Vec3 w1 = lift_vector(other - endpoint, endpoint_normal);
    const Vec3 w2 = lift_vector(center - endpoint, endpoint_normal);
    const double w1_sq = w1.squaredNorm();
    if (!(std::sqrt(w1_sq) >= min_length) || w1_sq == 0.0) {
        throw DegenerateError("outer normal: lifted edge has zero length");
    }
    const Vec3 n = w2.dot(w1) * w1 - w1_sq * w2;
    const double len = n.norm();
    if (!(len > 1e-14 * w1_sq * w2.norm()) || len == 0.0) {
        throw DegenerateError("outer normal: star center lifts onto the edge line");
    }
    return n / len;
}

Vec3 gradient_at(const Discretization& d, Index v, std::span<const double> h)
{
    check_size(h.size(), d.num_vertices(), "gradient");
    const GradientStencil& stencil = d.stencil(v);
    LiftedValues values;
    values.center = h[v];
    values.values.reserve(stencil.neighbors.size());
    for (Index n : stencil.neighbors) values.values.push_back(h[n]);
    return d.frame(v).to_ambient(stencil.gradient(values));
}

VertexVectorField gradient(const Discretization& d, std::span<const double> h)
{
    d.require_closed("gradient");
    check_size(h.size(), d.num_vertices(), "gradient");
    VertexVectorField out(d.num_vertices());
    parallel_for(d.num_vertices(), [&](std::size_t v) { out[v] = gradient_at(d, v, h); });
    return out;
}

double divergence_at(const Discretization& d, Index v, std::span<const Vec3> X)
{
    check_size(X.size(), d.num_vertices(), "divergence");
    return divergence_impl(d, v, [&](Index u) { return X[u]; });
}

VertexScalarField divergence(const Discretization& d, std::span<const Vec3> X)
{
    d.require_closed("divergence");
    check_size(X.size(), d.num_vertices(), "divergence");
    VertexScalarField out(d.num_vertices());
    parallel_for(d.num_vertices(), [&](std::size_t v) { out[v] = divergence_at(d, v, X); });
    return out;
}

double laplacian_at(const Discretization& d, Index v, std::span<const double> h)
{
    check_size(h.size(), d.num_vertices(), "laplacian");
    return divergence_impl(d, v, [&](Index u) { return gradient_at(d, u, h); });
}

VertexScalarField laplacian(const Discretization& d, std::span<const double> h)
{
    const VertexVectorField grad = gradient(d, h);
    return divergence(d, grad);
}

double integrate(const Discretization& d, std::span<const double> g)
{
    check_size(g.size(), d.num_vertices(), "integrate");
    double sum = 0.0;
    for (Index v = 0; v < d.num_vertices(); ++v) sum += g[v] * d.star_area(v);
    return sum / 3.0;
}

double conservation_residual(const Discretization& d, std::span<const Vec3> X)
{
    const VertexScalarField div = divergence(d, X);
    return integrate(d, div);
}

std::vector<EdgeFlux> edge_flux_balance(const Discretization& d, std::span<const Vec3> X)
{
    d.require_closed("edge_flux_balance");
    check_size(X.size(), d.num_vertices(), "edge_flux_balance");
    std::unordered_map<std::uint64_t, std::size_t> slot;
    std::vector<EdgeFlux> edges;
    for (Index v = 0; v < d.num_vertices(); ++v) {
        const VertexStar& star = d.star(v);
        for (std::size_t j = 0; j < star.num_sectors(); ++j) {
            const Index a = star.sector_start(j);
            const Index b = star.sector_end(j);
            const SectorNormals s = sector_normals(d, star, j);
            // integrate() weighs Div(v) by star_area / 3, so each sector adds flux / 3.
            const double contribution =
                s.length / 18.0 *
                (2.0 * X[a].dot(s.at_start) + 2.0 * X[b].dot(s.at_end) + X[a].dot(s.at_end) +
                 X[b].dot(s.at_start));
            const auto lo = std::min(a, b);
            const auto hi = std::max(a, b);
            const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | hi;
            auto [it, inserted] = slot.try_emplace(key, edges.size());
            if (inserted) edges.push_back({lo, hi, 0.0, 0.0});
            EdgeFlux& e = edges[it->second];
            e.net += contribution;
            e.magnitude += std::abs(contribution);
        }
    }
    return edges;
}

SparseVectorOperator assemble_gradient(const Discretization& d)
{
    d.require_closed("assemble_gradient");
    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> tx, ty, tz;
    for (Index v = 0; v < d.num_vertices(); ++v) {
        const GradientStencil& stencil = d.stencil(v);
        const auto weights = stencil.difference_weights();
        Vec3 self = Vec3::Zero();
        const auto row = static_cast<int>(v);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const Vec3 w = d.frame(v).to_ambient(weights[i]);
            const auto col = static_cast<int>(stencil.neighbors[i]);
            tx.emplace_back(row, col, w.x());
            ty.emplace_back(row, col, w.y());
            tz.emplace_back(row, col, w.z());
            self -= w;
        }
        tx.emplace_back(row, row, self.x());
        ty.emplace_back(row, row, self.y());
        tz.emplace_back(row, row, self.z());
    }
    const auto n = static_cast<Eigen::Index>(d.num_vertices());
    SparseVectorOperator op{SparseVectorOperator::Matrix(n, n), SparseVectorOperator::Matrix(n, n),
                            SparseVectorOperator::Matrix(n, n)};
    op.x.setFromTriplets(tx.begin(), tx.end());
    op.y.setFromTriplets(ty.begin(), ty.end());
    op.z.setFromTriplets(tz.begin(), tz.end());
    return op;
}

SparseVectorOperator assemble_divergence(const Discretization& d)
{
    d.require_closed("assemble_divergence");
    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> tx, ty, tz;
    for (Index v = 0; v < d.num_vertices(); ++v) {
        const VertexStar& star = d.star(v);
        const double inv_area = 1.0 / d.star_area(v);
        const auto row = static_cast<int>(v);
        auto push = [&](Index u, const Vec3& w) {
            const auto col = static_cast<int>(u);
            tx.emplace_back(row, col, w.x());
            ty.emplace_back(row, col, w.y());
            tz.emplace_back(row, col, w.z());
        };
        for (std::size_t j = 0; j < star.num_sectors(); ++j) {
            const SectorNormals s = sector_normals(d, star, j);
            const double scale = s.length / 6.0 * inv_area;
            push(star.sector_start(j), scale * (2.0 * s.at_start + s.at_end));
            push(star.sector_end(j), scale * (2.0 * s.at_end + s.at_start));
        }
    }
    const auto n = static_cast<Eigen::Index>(d.num_vertices());
    SparseVectorOperator op{SparseVectorOperator::Matrix(n, n), SparseVectorOperator::Matrix(n, n),
                            SparseVectorOperator::Matrix(n, n)};
    op.x.setFromTriplets(tx.begin(), tx.end());
    op.y.setFromTriplets(ty.begin(), ty.end());
    op.z.setFromTriplets(tz.begin(), tz.end());
    return op;
}

LaplacianMatrix::LaplacianMatrix(const Discretization& d)
{
    const SparseVectorOperator grad = assemble_gradient(d);
    const SparseVectorOperator div = assemble_divergence(d);
    Matrix xx = div.x * grad.x;
    Matrix yy = div.y * grad.y;
    Matrix zz = div.z * grad.z;
    m_matrix = xx + yy + zz;
    m_matrix.makeCompressed();
}

VertexScalarField LaplacianMatrix::apply(std::span<const double> h) const
{
    VertexScalarField out(h.size());
    apply(h, out);
    return out;
}

void LaplacianMatrix::apply(std::span<const double> h, std::span<double> out) const
{
    check_size(h.size(), static_cast<std::size_t>(m_matrix.cols()), "laplacian matrix");
    check_size(out.size(), static_cast<std::size_t>(m_matrix.rows()), "laplacian matrix");
    Eigen::Map<const Eigen::VectorXd> in_vec(h.data(), static_cast<Eigen::Index>(h.size()));
    Eigen::Map<Eigen::VectorXd> out_vec(out.data(), static_cast<Eigen::Index>(out.size()));
    out_vec.noalias() = m_matrix * in_vec;
}

double LaplacianMatrix::gershgorin_bound() const
{
    double bound = 0.0;
    for (Eigen::Index r = 0; r < m_matrix.outerSize(); ++r) {
        double row_sum = 0.0;
        for (Matrix::InnerIterator it(m_matrix, r); it; ++it) row_sum += std::abs(it.value());
        bound = std::max(bound, row_sum);
    }
    return bound;
}

} // namespace ltl
