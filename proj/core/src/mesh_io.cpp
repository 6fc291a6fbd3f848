#include <ltl/errors.hpp>
#include <ltl/mesh_io.hpp>

#include <algorithm>
#include <charconv>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace ltl {

namespace {

std::string lowercase(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string strip_comment(const std::string& line)
{
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

bool is_blank(const std::string& line)
{
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

double parse_double(const std::string& token, std::size_t line_no)
{
    // std::from_chars for double is not available in every libstdc++ we target.
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        throw ParseError("invalid number '" + token + "'", line_no);
    }
    if (consumed != token.size()) throw ParseError("invalid number '" + token + "'", line_no);
    return value;
}

long long parse_integer(std::string_view token, std::size_t line_no)
{
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("invalid integer '" + std::string(token) + "'", line_no);
    }
    return value;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!line.empty() && line.back() == sep) parts.emplace_back();
    return parts;
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::ofstream open_for_write(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    return out;
}

void check_field_lengths(const TriangleMesh& mesh, std::span<const NamedScalarField> scalars,
                         std::span<const NamedVectorField> vectors)
{
    for (const auto& f : scalars) {
        if (f.values.size() != mesh.num_vertices()) {
            throw Error("field '" + f.name + "' has " + std::to_string(f.values.size()) +
                        " values for " + std::to_string(mesh.num_vertices()) + " vertices");
        }
    }
    for (const auto& f : vectors) {
        if (f.values.size() != mesh.num_vertices()) {
            throw Error("field '" + f.name + "' has " + std::to_string(f.values.size()) +
                        " values for " + std::to_string(mesh.num_vertices()) + " vertices");
        }
    }
}

} // namespace

const std::vector<double>& CsvTable::column(const std::string& name) const
{
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("CSV has no column '" + name + "'", 0);
    return columns[static_cast<std::size_t>(it - names.begin())];
}

std::optional<MeshFormat> mesh_format_from_path(const std::filesystem::path& path)
{
    auto ext = lowercase(path.extension().string());
    if (ext == ".off") return MeshFormat::off;
    if (ext == ".obj") return MeshFormat::obj;
    return std::nullopt;
}

std::optional<FieldFormat> field_format_from_path(const std::filesystem::path& path)
{
    auto ext = lowercase(path.extension().string());
    if (ext == ".vtk") return FieldFormat::vtk;
    if (ext == ".csv") return FieldFormat::csv;
    return std::nullopt;
}

TriangleMesh read_off(std::istream& in)
{
    std::string raw;
    std::size_t line_no = 0;

    // Returns the tokens of the next non-empty line, comments removed.
    auto next_tokens = [&]() -> std::vector<std::string> {
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = strip_comment(raw);
            if (is_blank(line)) continue;
            std::istringstream ls(line);
            std::vector<std::string> tokens;
            for (std::string tok; ls >> tok;) tokens.push_back(tok);
            return tokens;
        }
        return {};
    };

    auto tokens = next_tokens();
    if (tokens.empty() || tokens[0] != "OFF") {
        throw ParseError("missing OFF header", line_no);
    }
    tokens.erase(tokens.begin());
    if (tokens.empty()) tokens = next_tokens();
    if (tokens.size() < 2) throw ParseError("expected vertex and face counts", line_no);
    const long long nv = parse_integer(tokens[0], line_no);
    const long long nf = parse_integer(tokens[1], line_no);
    if (nv < 0 || nf < 0) throw ParseError("negative element count", line_no);

    std::vector<Vec3> vertices;
    vertices.reserve(static_cast<std::size_t>(nv));
    for (long long i = 0; i < nv; ++i) {
        tokens = next_tokens();
        if (tokens.size() < 3) throw ParseError("expected vertex coordinates", line_no);
        vertices.emplace_back(parse_double(tokens[0], line_no), parse_double(tokens[1], line_no),
                              parse_double(tokens[2], line_no));
    }

    std::vector<Triangle> triangles;
    triangles.reserve(static_cast<std::size_t>(nf));
    for (long long i = 0; i < nf; ++i) {
        tokens = next_tokens();
        if (tokens.empty()) throw ParseError("unexpected end of file, expected face", line_no);
        const long long count = parse_integer(tokens[0], line_no);
        if (count != 3) throw ParseError("non-triangular face", line_no);
        if (tokens.size() < 4) throw ParseError("expected three face indices", line_no);
        Triangle tri{};
        for (int k = 0; k < 3; ++k) {
            long long idx = parse_integer(tokens[1 + k], line_no);
            if (idx < 0 || idx >= nv) {
                throw ParseError("triangle index " + std::to_string(idx) + " out of range", line_no);
            }
            tri[k] = static_cast<Index>(idx);
        }
        triangles.push_back(tri);
    }
    return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh read_obj(std::istream& in)
{
    std::vector<Vec3> vertices;
    struct PendingFace
    {
        std::array<long long, 3> idx;
        std::size_t line;
    };
    std::vector<PendingFace> faces;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(strip_comment(raw));
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            std::string x, y, z;
            if (!(ls >> x >> y >> z)) throw ParseError("expected vertex coordinates", line_no);
            vertices.emplace_back(parse_double(x, line_no), parse_double(y, line_no),
                                  parse_double(z, line_no));
        } else if (tag == "f") {
            std::vector<long long> idx;
            for (std::string tok; ls >> tok;) {
                // Accept v, v/vt, v//vn and v/vt/vn; only the position index matters.
                auto slash = tok.find('/');
                long long value = parse_integer(std::string_view(tok).substr(0, slash), line_no);
                if (value < 0) value = static_cast<long long>(vertices.size()) + value + 1;
                idx.push_back(value);
            }
            if (idx.size() != 3) throw ParseError("non-triangular face", line_no);
            faces.push_back({{idx[0], idx[1], idx[2]}, line_no});
        }
        // Other directives (vn, vt, g, o, s, usemtl, ...) are ignored.
    }

    const auto nv = static_cast<long long>(vertices.size());
    std::vector<Triangle> triangles;
    triangles.reserve(faces.size());
    for (const auto& f : faces) {
        Triangle tri{};
        for (int k = 0; k < 3; ++k) {
            if (f.idx[k] < 1 || f.idx[k] > nv) {
                throw ParseError("triangle index " + std::to_string(f.idx[k]) + " out of range",
                                 f.line);
            }
            tri[k] = static_cast<Index>(f.idx[k] - 1);
        }
        triangles.push_back(tri);
    }
    return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh load_mesh(const std::filesystem::path& path, std::optional<MeshFormat> format)
{
    if (!format) format = mesh_format_from_path(path);
    if (!format) throw Error("cannot infer mesh format of '" + path.string() + "'");
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return *format == MeshFormat::off ? read_off(in) : read_obj(in);
}

void write_off(std::ostream& out, const TriangleMesh& mesh)
{
    out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_triangles() << " 0\n";
    out << std::setprecision(17);
    for (const Vec3& v : mesh.vertices()) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (const Triangle& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_obj(std::ostream& out, const TriangleMesh& mesh)
{
    out << std::setprecision(17);
    for (const Vec3& v : mesh.vertices()) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (const Triangle& t : mesh.triangles()) {
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
}

void save_mesh(const std::filesystem::path& path, const TriangleMesh& mesh,
               std::optional<MeshFormat> format)
{
    if (!format) format = mesh_format_from_path(path);
    if (!format) throw Error("cannot infer mesh format of '" + path.string() + "'");
    auto out = open_for_write(path);
    if (*format == MeshFormat::off) {
        write_off(out, mesh);
    } else {
        write_obj(out, mesh);
    }
}

void write_vtk(std::ostream& out, const TriangleMesh& mesh,
               std::span<const NamedScalarField> scalars,
               std::span<const NamedVectorField> vectors, const std::string& title)
{
    check_field_lengths(mesh, scalars, vectors);
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET POLYDATA\n";
    out << std::setprecision(17);
    out << "POINTS " << mesh.num_vertices() << " double\n";
    for (const Vec3& v : mesh.vertices()) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    out << "POLYGONS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
    for (const Triangle& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';

    if (scalars.empty() && vectors.empty()) return;
    out << "POINT_DATA " << mesh.num_vertices() << '\n';
    for (const auto& f : scalars) {
        out << "SCALARS " << f.name << " double 1\nLOOKUP_TABLE default\n";
        for (double value : f.values) out << value << '\n';
    }
    for (const auto& f : vectors) {
        out << "VECTORS " << f.name << " double\n";
        for (const Vec3& v : f.values) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    }
}

void write_csv(std::ostream& out, const TriangleMesh& mesh,
               std::span<const NamedScalarField> scalars,
               std::span<const NamedVectorField> vectors)
{
    check_field_lengths(mesh, scalars, vectors);
    out << "vertex_id,x,y,z";
    for (const auto& f : scalars) out << ',' << f.name;
    for (const auto& f : vectors) out << ',' << f.name << "_x," << f.name << "_y," << f.name << "_z";
    out << '\n' << std::setprecision(17);
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        const Vec3& p = mesh.vertex(v);
        out << v << ',' << p.x() << ',' << p.y() << ',' << p.z();
        for (const auto& f : scalars) out << ',' << f.values[v];
        for (const auto& f : vectors) {
            out << ',' << f.values[v].x() << ',' << f.values[v].y() << ',' << f.values[v].z();
        }
        out << '\n';
    }
}

CsvTable read_csv(std::istream& in)
{
    std::string raw;
    std::size_t line_no = 0;
    if (!std::getline(in, raw)) throw ParseError("empty CSV", 1);
    ++line_no;
    auto header = split(trim(raw), ',');
    if (header.size() < 4 || trim(header[0]) != "vertex_id" || trim(header[1]) != "x" ||
        trim(header[2]) != "y" || trim(header[3]) != "z") {
        throw ParseError("CSV header must start with vertex_id,x,y,z", line_no);
    }

    CsvTable table;
    for (std::size_t c = 4; c < header.size(); ++c) table.names.push_back(trim(header[c]));
    table.columns.resize(table.names.size());

    while (std::getline(in, raw)) {
        ++line_no;
        if (is_blank(raw)) continue;
        auto cells = split(trim(raw), ',');
        if (cells.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " columns, found " +
                                 std::to_string(cells.size()),
                             line_no);
        }
        long long id = parse_integer(trim(cells[0]), line_no);
        if (id != static_cast<long long>(table.positions.size())) {
            throw ParseError("vertex_id out of sequence", line_no);
        }
        table.positions.emplace_back(parse_double(trim(cells[1]), line_no),
                                     parse_double(trim(cells[2]), line_no),
                                     parse_double(trim(cells[3]), line_no));
        for (std::size_t c = 4; c < cells.size(); ++c) {
            table.columns[c - 4].push_back(parse_double(trim(cells[c]), line_no));
        }
    }
    return table;
}

CsvTable load_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return read_csv(in);
}

void write_fields(const std::filesystem::path& path, FieldFormat format, const TriangleMesh& mesh,
                  std::span<const NamedScalarField> scalars,
                  std::span<const NamedVectorField> vectors)
{
    auto out = open_for_write(path);
    if (format == FieldFormat::vtk) {
        write_vtk(out, mesh, scalars, vectors);
    } else {
        write_csv(out, mesh, scalars, vectors);
    }
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

} // namespace ltl
