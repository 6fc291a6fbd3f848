#include "specs.hpp"

#include <ltl/errors.hpp>
#include <ltl/generators.hpp>
#include <ltl/mesh_io.hpp>
#include <ltl/pde.hpp>

#include <charconv>
#include <cmath>

namespace ltl::cli {

namespace {

bool starts_with(const std::string& s, const std::string& prefix)
{
    return s.rfind(prefix, 0) == 0;
}

template <typename T>
T parse_number(const std::string& text, const std::string& what)
{
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error("bad " + what + " '" + text + "'");
    }
    return value;
}

PolynomialField linear(const Vec3& a)
{
    PolynomialField::Coefficients c{};
    c[1] = a.x();
    c[2] = a.y();
    c[3] = a.z();
    return PolynomialField(c);
}

VertexScalarField sample(const PolynomialField& p, const TriangleMesh& mesh)
{
    VertexScalarField out(mesh.num_vertices());
    for (Index v = 0; v < mesh.num_vertices(); ++v) out[v] = p.value(mesh.vertex(v));
    return out;
}

Vec3 parse_vec3(const std::string& text)
{
    Vec3 w;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const auto comma = text.find(',', start);
        if ((i < 2) == (comma == std::string::npos)) throw Error("expected ax,ay,az, got '" + text + "'");
        w[i] = parse_number<double>(text.substr(start, comma - start), "vector component");
        start = comma + 1;
    }
    return w;
}

// "path" or "path@column"
std::pair<std::string, std::string> split_csv_spec(const std::string& body)
{
    const auto at = body.rfind('@');
    if (at == std::string::npos) return {body, ""};
    return {body.substr(0, at), body.substr(at + 1)};
}

CsvTable load_matching_csv(const std::string& path, const TriangleMesh& mesh)
{
    CsvTable table = load_csv(path);
    if (table.positions.size() != mesh.num_vertices()) {
        throw Error("'" + path + "' has " + std::to_string(table.positions.size()) + " rows, mesh has " +
                    std::to_string(mesh.num_vertices()) + " vertices");
    }
    return table;
}

} // namespace

TriangleMesh load_mesh_spec(const std::string& spec)
{
    if (starts_with(spec, "icosphere:")) {
        return gen_icosphere(parse_number<int>(spec.substr(10), "subdivision count"));
    }
    if (starts_with(spec, "torus:")) {
        const std::string dims = spec.substr(6);
        const auto x = dims.find('x');
        if (x == std::string::npos) throw Error("torus shorthand is torus:NxM, got '" + spec + "'");
        return gen_torus(parse_number<int>(dims.substr(0, x), "torus size"),
                         parse_number<int>(dims.substr(x + 1), "torus size"));
    }
    return load_mesh(spec);
}

std::optional<Surface> detect_surface(const TriangleMesh& mesh)
{
    for (Surface s : {Surface::sphere, Surface::torus}) {
        bool on = mesh.num_vertices() > 0;
        for (Index v = 0; on && v < mesh.num_vertices(); ++v) {
            try {
                surface_normal(s, mesh.vertex(v));
            } catch (const DomainError&) {
                on = false;
            }
        }
        if (on) return s;
    }
    return std::nullopt;
}

ScalarSpec parse_scalar_spec(const std::string& spec, const TriangleMesh& mesh)
{
    ScalarSpec out;
    out.name = spec;

    if (spec == "cos_eta") {
        out.values = spherical_field(mesh, SphericalFormula::cos_eta);
        out.polynomial = linear(Vec3::UnitZ());
    } else if (spec == "sin3theta_sin7eta") {
        out.values = spherical_field(mesh, SphericalFormula::sin3theta_sin7eta);
    } else if (spec == "torus_disk") {
        out.values = torus_disk_field(mesh);
    } else if (spec == "x" || spec == "y" || spec == "z") {
        out.polynomial = linear(Vec3::Unit(spec[0] - 'x'));
        out.values = sample(*out.polynomial, mesh);
    } else if (starts_with(spec, "const:")) {
        const double c = parse_number<double>(spec.substr(6), "constant");
        out.values.assign(mesh.num_vertices(), c);
        out.constant = true;
    } else if (starts_with(spec, "poly:")) {
        out.polynomial = PolynomialField::parse(spec.substr(5));
        out.values = sample(*out.polynomial, mesh);
    } else if (starts_with(spec, "csv:")) {
        auto [path, column] = split_csv_spec(spec.substr(4));
        const CsvTable table = load_matching_csv(path, mesh);
        if (column.empty()) {
            if (table.names.empty()) throw Error("'" + path + "' has no field columns");
            column = table.names.front();
        }
        out.values = table.column(column);
        out.name = column;
    } else {
        throw Error("unknown scalar field '" + spec + "'");
    }
    return out;
}

VectorSpec parse_vector_spec(const std::string& spec, const Discretization& d)
{
    const TriangleMesh& mesh = d.mesh();
    const std::size_t n = mesh.num_vertices();
    const std::optional<Surface> surface = detect_surface(mesh);

    VectorSpec out;
    out.name = spec;

    if (spec == "zero") {
        out.values.assign(n, Vec3::Zero());
        out.exact_divergence = [](const Vec3&) { return 0.0; };
    } else if (spec == "rotation") {
        out.values.resize(n);
        for (Index v = 0; v < n; ++v) out.values[v] = Vec3::UnitZ().cross(mesh.vertex(v));
        // rotation about the symmetry axis is a Killing field of both surfaces
        if (surface) out.exact_divergence = [](const Vec3&) { return 0.0; };
    } else if (starts_with(spec, "const:")) {
        const Vec3 w = parse_vec3(spec.substr(6));
        out.values.assign(n, w);
        if (w.isZero(0.0)) {
            out.exact_divergence = [](const Vec3&) { return 0.0; };
        } else if (surface) {
            // divergence of the tangential part of a constant vector a is Δ_Σ ⟨a, x⟩
            out.exact_divergence = [a = linear(w), s = *surface](const Vec3& p) {
                return analytic_laplacian_on_surface(a, s, p);
            };
        }
    } else if (starts_with(spec, "grad:")) {
        const ScalarSpec h = parse_scalar_spec(spec.substr(5), mesh);
        out.values = gradient(d, h.values);
        if (h.constant) {
            out.exact_divergence = [](const Vec3&) { return 0.0; };
        } else if (surface && h.polynomial) {
            out.exact_divergence = [p = *h.polynomial, s = *surface](const Vec3& q) {
                return analytic_laplacian_on_surface(p, s, q);
            };
        }
    } else if (starts_with(spec, "csv:")) {
        auto [path, name] = split_csv_spec(spec.substr(4));
        const CsvTable table = load_matching_csv(path, mesh);
        if (name.empty()) {
            for (const auto& column : table.names) {
                if (column.size() > 2 && column.ends_with("_x")) {
                    name = column.substr(0, column.size() - 2);
                    break;
                }
            }
            if (name.empty()) throw Error("'" + path + "' has no vector columns");
        }
        const auto& cx = table.column(name + "_x");
        const auto& cy = table.column(name + "_y");
        const auto& cz = table.column(name + "_z");
        out.values.resize(n);
        for (Index v = 0; v < n; ++v) out.values[v] = Vec3(cx[v], cy[v], cz[v]);
        out.name = name;
    } else {
        throw Error("unknown vector field '" + spec + "'");
    }
    return out;
}

} // namespace ltl::cli
