#include <ltl/errors.hpp>
#include <ltl/mesh.hpp>

#include <Eigen/Geometry>

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace ltl {

namespace {

constexpr double k_degenerate_ratio = 1e-12;

double longest_edge_squared(const Vec3& a, const Vec3& b, const Vec3& c)
{
    return std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
}

std::uint64_t edge_key(Index a, Index b)
{
    auto lo = static_cast<std::uint64_t>(std::min(a, b));
    auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (lo << 32) | hi;
}

struct EdgeUse
{
    int count = 0;
    int ascending = 0; // traversals from lower to higher index
};

struct LinkEdge
{
    Index from;
    Index to;
    Index triangle;
};

// Link edges (a -> b) of the triangles around v, following the stored winding.
std::vector<LinkEdge> link_edges(const TriangleMesh& mesh, std::span<const Index> incident, Index v)
{
    std::vector<LinkEdge> edges;
    edges.reserve(incident.size());
    for (Index t : incident) {
        const Triangle& tri = mesh.triangle(t);
        for (int k = 0; k < 3; ++k) {
            if (tri[k] == v) {
                edges.push_back({tri[(k + 1) % 3], tri[(k + 2) % 3], t});
                break;
            }
        }
    }
    return edges;
}

// True when the undirected link graph is a single cycle or a single path.
bool is_single_fan(std::span<const LinkEdge> edges)
{
    if (edges.empty()) return false;
    std::unordered_map<Index, std::vector<Index>> adjacency;
    for (const auto& e : edges) {
        adjacency[e.from].push_back(e.to);
        adjacency[e.to].push_back(e.from);
    }
    std::size_t endpoints = 0;
    for (const auto& [vertex, nbrs] : adjacency) {
        if (nbrs.size() > 2) return false;
        if (nbrs.size() == 1) ++endpoints;
    }
    if (endpoints != 0 && endpoints != 2) return false;

    // Connectivity check by flood fill.
    std::vector<Index> stack{edges.front().from};
    std::unordered_map<Index, bool> seen{{edges.front().from, true}};
    while (!stack.empty()) {
        Index cur = stack.back();
        stack.pop_back();
        for (Index n : adjacency[cur]) {
            if (!seen[n]) {
                seen[n] = true;
                stack.push_back(n);
            }
        }
    }
    std::size_t reached = 0;
    for (const auto& [vertex, flag] : seen) reached += flag ? 1 : 0;
    return reached == adjacency.size();
}

VertexStar walk_star(const TriangleMesh& mesh, std::span<const Index> incident, Index v)
{
    auto edges = link_edges(mesh, incident, v);
    if (edges.empty()) {
        throw MeshError("vertex " + std::to_string(v) + " has no incident triangles");
    }

    auto find_from = [&](Index a) -> const LinkEdge* {
        const LinkEdge* hit = nullptr;
        for (const auto& e : edges) {
            if (e.from == a) {
                if (hit) return nullptr;
                hit = &e;
            }
        }
        return hit;
    };
    auto has_predecessor = [&](Index a) {
        return std::any_of(edges.begin(), edges.end(), [&](const LinkEdge& e) { return e.to == a; });
    };

    // A boundary fan starts at the link vertex with no predecessor.
    const LinkEdge* start = &edges.front();
    bool closed = true;
    for (const auto& e : edges) {
        if (!has_predecessor(e.from)) {
            start = &e;
            closed = false;
            break;
        }
    }

    VertexStar star;
    star.center = v;
    star.closed = closed;
    const LinkEdge* cur = start;
    const LinkEdge* last = start;
    bool cycled = false;
    while (cur != nullptr && star.ring_triangles.size() < edges.size()) {
        star.ring.push_back(cur->from);
        star.ring_triangles.push_back(cur->triangle);
        last = cur;
        if (cur->to == start->from) {
            cycled = true;
            break;
        }
        cur = find_from(cur->to);
    }
    if (!closed) star.ring.push_back(last->to);

    if (star.ring_triangles.size() != edges.size() || closed != cycled) {
        throw MeshError("non-manifold vertex " + std::to_string(v) +
                        ": incident triangles do not form a single fan");
    }
    return star;
}

void reverse_star(VertexStar& star)
{
    std::reverse(star.ring_triangles.begin(), star.ring_triangles.end());
    if (star.closed) {
        std::reverse(star.ring.begin() + 1, star.ring.end());
    } else {
        std::reverse(star.ring.begin(), star.ring.end());
    }
}

} // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles)
    : m_vertices(std::move(vertices))
    , m_triangles(std::move(triangles))
{}

void TriangleMesh::set_chart_coords(std::vector<Vec2> coords)
{
    if (!coords.empty() && coords.size() != m_vertices.size()) {
        throw Error("chart coordinate count does not match vertex count");
    }
    m_chart_coords = std::move(coords);
}

std::string ValidationReport::summary() const
{
    std::ostringstream out;
    out << "vertices: " << num_vertices << "\n"
        << "edges: " << num_edges << "\n"
        << "triangles: " << num_triangles << "\n"
        << "euler characteristic: " << euler_characteristic() << "\n"
        << "closed: " << (closed ? "yes" : "no") << "\n"
        << "boundary edges: " << boundary_edges << "\n"
        << "non-manifold edges: " << nonmanifold_edges << "\n"
        << "non-manifold vertices: " << nonmanifold_vertices.size() << "\n"
        << "inconsistently oriented edges: " << inconsistent_edges << "\n"
        << "degenerate triangles: " << degenerate_triangles.size() << "\n"
        << "out-of-range triangles: " << out_of_range_triangles.size() << "\n"
        << "unreferenced vertices: " << unreferenced_vertices.size() << "\n"
        << "valid: " << (valid() ? "yes" : "no") << "\n";
    return out.str();
}

ValidationReport validate(const TriangleMesh& mesh)
{
    ValidationReport report;
    const std::size_t nv = mesh.num_vertices();
    report.num_vertices = nv;
    report.num_triangles = mesh.num_triangles();

    std::vector<bool> referenced(nv, false);
    std::unordered_map<std::uint64_t, EdgeUse> edges;
    edges.reserve(mesh.num_triangles() * 2);
    std::vector<std::vector<Index>> incident(nv);

    for (Index t = 0; t < mesh.num_triangles(); ++t) {
        const Triangle& tri = mesh.triangle(t);
        if (tri[0] >= nv || tri[1] >= nv || tri[2] >= nv) {
            report.out_of_range_triangles.push_back(t);
            continue;
        }
        for (Index v : tri) {
            referenced[v] = true;
            incident[v].push_back(t);
        }
        const Vec3& a = mesh.vertex(tri[0]);
        const Vec3& b = mesh.vertex(tri[1]);
        const Vec3& c = mesh.vertex(tri[2]);
        double area = 0.5 * (b - a).cross(c - a).norm();
        bool repeated = tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2];
        if (repeated || !(area >= k_degenerate_ratio * longest_edge_squared(a, b, c)) || area == 0.0) {
            report.degenerate_triangles.push_back(t);
        }
        for (int k = 0; k < 3; ++k) {
            Index from = tri[k];
            Index to = tri[(k + 1) % 3];
            auto& use = edges[edge_key(from, to)];
            ++use.count;
            if (from < to) ++use.ascending;
        }
    }

    report.num_edges = edges.size();
    for (const auto& [key, use] : edges) {
        if (use.count == 1) {
            ++report.boundary_edges;
        } else if (use.count == 2) {
            if (use.ascending != 1) ++report.inconsistent_edges;
        } else {
            ++report.nonmanifold_edges;
        }
    }

    for (Index v = 0; v < nv; ++v) {
        if (!referenced[v]) {
            report.unreferenced_vertices.push_back(v);
            continue;
        }
        auto fan = link_edges(mesh, incident[v], v);
        if (!is_single_fan(fan)) report.nonmanifold_vertices.push_back(v);
    }

    report.closed = report.boundary_edges == 0 && report.out_of_range_triangles.empty();
    return report;
}

void require_valid_closed(const TriangleMesh& mesh)
{
    auto report = validate(mesh);
    if (!report.valid()) {
        throw MeshError("invalid mesh:\n" + report.summary());
    }
    if (!report.closed) {
        throw BoundaryError("mesh has boundary (" + std::to_string(report.boundary_edges) +
                            " boundary edges); operators require a closed surface");
    }
}

double triangle_area(const TriangleMesh& mesh, Index t)
{
    const Triangle& tri = mesh.triangle(t);
    const Vec3& a = mesh.vertex(tri[0]);
    const Vec3& b = mesh.vertex(tri[1]);
    const Vec3& c = mesh.vertex(tri[2]);
    double area = 0.5 * (b - a).cross(c - a).norm();
    if (!(area >= k_degenerate_ratio * longest_edge_squared(a, b, c)) || area == 0.0) {
        throw DegenerateError("degenerate triangle " + std::to_string(t));
    }
    return area;
}

Vec3 triangle_centroid(const TriangleMesh& mesh, Index t)
{
    const Triangle& tri = mesh.triangle(t);
    return (mesh.vertex(tri[0]) + mesh.vertex(tri[1]) + mesh.vertex(tri[2])) / 3.0;
}

Vec3 triangle_normal(const TriangleMesh& mesh, Index t)
{
    const Triangle& tri = mesh.triangle(t);
    const Vec3& a = mesh.vertex(tri[0]);
    Vec3 n = (mesh.vertex(tri[1]) - a).cross(mesh.vertex(tri[2]) - a);
    double len = n.norm();
    if (len == 0.0) throw DegenerateError("degenerate triangle " + std::to_string(t));
    return n / len;
}

MeshSize mesh_size(const TriangleMesh& mesh)
{
    double longest = 0.0;
    for (const Triangle& tri : mesh.triangles()) {
        const Vec3& a = mesh.vertex(tri[0]);
        const Vec3& b = mesh.vertex(tri[1]);
        const Vec3& c = mesh.vertex(tri[2]);
        longest = std::max(longest, longest_edge_squared(a, b, c));
    }
    return {std::sqrt(longest)};
}

double total_area(const TriangleMesh& mesh)
{
    double sum = 0.0;
    for (Index t = 0; t < mesh.num_triangles(); ++t) sum += triangle_area(mesh, t);
    return sum;
}

std::vector<std::array<Index, 2>> unique_edges(const TriangleMesh& mesh)
{
    std::vector<std::array<Index, 2>> edges;
    edges.reserve(mesh.num_triangles() * 3);
    for (const Triangle& tri : mesh.triangles()) {
        for (int k = 0; k < 3; ++k) {
            Index a = tri[k];
            Index b = tri[(k + 1) % 3];
            edges.push_back({std::min(a, b), std::max(a, b)});
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::vector<std::vector<Index>> incident_triangles(const TriangleMesh& mesh)
{
    std::vector<std::vector<Index>> incident(mesh.num_vertices());
    for (Index t = 0; t < mesh.num_triangles(); ++t) {
        for (Index v : mesh.triangle(t)) {
            if (v >= mesh.num_vertices()) {
                throw MeshError("triangle " + std::to_string(t) + " references vertex " +
                                std::to_string(v) + " out of range");
            }
            incident[v].push_back(t);
        }
    }
    return incident;
}

std::vector<VertexStar> build_stars(const TriangleMesh& mesh, std::span<const Vec3> normals)
{
    if (normals.size() != mesh.num_vertices()) {
        throw Error("build_stars: one normal per vertex required");
    }
    auto incident = incident_triangles(mesh);
    std::vector<VertexStar> stars;
    stars.reserve(mesh.num_vertices());
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        VertexStar star = walk_star(mesh, incident[v], v);

        // The walk fixes the cyclic order; the approximate normal only picks its sense.
        const Vec3& center = mesh.vertex(v);
        double turning = 0.0;
        for (std::size_t j = 0; j < star.num_sectors(); ++j) {
            Vec3 a = mesh.vertex(star.sector_start(j)) - center;
            Vec3 b = mesh.vertex(star.sector_end(j)) - center;
            turning += a.cross(b).dot(normals[v]);
        }
        if (turning < 0.0) reverse_star(star);
        stars.push_back(std::move(star));
    }
    return stars;
}

double star_area(const TriangleMesh& mesh, const VertexStar& star)
{
    double area = 0.0;
    for (Index t : star.ring_triangles) area += triangle_area(mesh, t);
    return area;
}

} // namespace ltl
