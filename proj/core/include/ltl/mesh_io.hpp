#pragma once

#include <ltl/mesh.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ltl {

enum class MeshFormat { off, obj };
enum class FieldFormat { vtk, csv };

struct NamedScalarField
{
    std::string name;
    std::span<const double> values;
};

struct NamedVectorField
{
    std::string name;
    std::span<const Vec3> values;
};

/// Parsed CSV field file. Vector fields are split into `<name>_x/_y/_z` columns.
struct CsvTable
{
    std::vector<Vec3> positions;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    /// Column by name; throws ParseError when missing.
    const std::vector<double>& column(const std::string& name) const;
};

/// Format from the file extension (.off/.obj, .vtk/.csv); nullopt if unknown.
std::optional<MeshFormat> mesh_format_from_path(const std::filesystem::path& path);
std::optional<FieldFormat> field_format_from_path(const std::filesystem::path& path);

TriangleMesh read_off(std::istream& in);
TriangleMesh read_obj(std::istream& in);
TriangleMesh load_mesh(const std::filesystem::path& path, std::optional<MeshFormat> format = {});

void write_off(std::ostream& out, const TriangleMesh& mesh);
void write_obj(std::ostream& out, const TriangleMesh& mesh);
void save_mesh(const std::filesystem::path& path, const TriangleMesh& mesh,
               std::optional<MeshFormat> format = {});

/// Legacy ASCII VTK, DATASET POLYDATA with POINT_DATA scalars and vectors.
void write_vtk(std::ostream& out, const TriangleMesh& mesh,
               std::span<const NamedScalarField> scalars,
               std::span<const NamedVectorField> vectors = {},
               const std::string& title = "ltl field");

/// Header `vertex_id,x,y,z,<fields...>`, 17 significant digits.
void write_csv(std::ostream& out, const TriangleMesh& mesh,
               std::span<const NamedScalarField> scalars,
               std::span<const NamedVectorField> vectors = {});

CsvTable read_csv(std::istream& in);
CsvTable load_csv(const std::filesystem::path& path);

void write_fields(const std::filesystem::path& path, FieldFormat format, const TriangleMesh& mesh,
                  std::span<const NamedScalarField> scalars,
                  std::span<const NamedVectorField> vectors = {});

} // namespace ltl
