#include "commands.hpp"

#include "specs.hpp"

#include <ltl/errors.hpp>
#include <ltl/generators.hpp>
#include <ltl/mesh_io.hpp>
#include <ltl/pde.hpp>
#include <ltl/studies.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace ltl::cli {

namespace {

void write_output(const std::string& path, const TriangleMesh& mesh, std::span<const NamedScalarField> scalars,
                  std::span<const NamedVectorField> vectors)
{
    const auto format = field_format_from_path(path);
    if (!format) throw Error("output '" + path + "' must end in .vtk or .csv");
    write_fields(path, *format, mesh, scalars, vectors);
    std::cout << "wrote " << path << '\n';
}

double max_abs(std::span<const double> values)
{
    double m = 0.0;
    for (double x : values) m = std::max(m, std::abs(x));
    return m;
}

std::ofstream open_report(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    return out;
}

void print_scalar_error(std::span<const double> approx, const std::vector<double>& exact)
{
    double err = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i) err = std::max(err, std::abs(approx[i] - exact[i]));
    std::cout << "max error vs exact: " << err << '\n';
}

} // namespace

int run_mesh_gen(const MeshGenOptions& o)
{
    TriangleMesh mesh;
    if (o.shape == "icosphere") {
        mesh = gen_icosphere(o.subdiv);
    } else {
        mesh = gen_torus(o.n_theta, o.n_eta);
    }
    const std::string path = o.out.empty() ? o.shape + ".off" : o.out;
    save_mesh(path, mesh);
    std::cout << "wrote " << path << ": " << mesh.num_vertices() << " vertices, " << mesh.num_triangles()
              << " triangles\n";
    return 0;
}

int run_mesh_info(const MeshInfoOptions& o)
{
    const TriangleMesh mesh = load_mesh_spec(o.mesh);
    const ValidationReport report = validate(mesh);
    std::cout << std::setprecision(10) << report.summary();
    if (!report.valid()) return 1;
    std::cout << "mesh size r: " << mesh_size(mesh).r << '\n' << "area: " << total_area(mesh) << '\n';
    return 0;
}

int run_op(const OpOptions& o)
{
    const Discretization d(load_mesh_spec(o.mesh));
    const TriangleMesh& mesh = d.mesh();
    const std::optional<Surface> surface = detect_surface(mesh);
    std::cout << std::setprecision(6) << "mesh: " << mesh.num_vertices() << " vertices, r = " << d.mesh_size();
    if (surface) std::cout << ", " << to_string(*surface);
    std::cout << '\n';

    if (o.op == "grad") {
        const ScalarSpec h = parse_scalar_spec(o.field, mesh);
        const VertexVectorField g = gradient(d, h.values);
        if (h.constant || (surface && h.polynomial)) {
            double err = 0.0;
            for (Index v = 0; v < mesh.num_vertices(); ++v) {
                Vec3 exact = Vec3::Zero();
                if (!h.constant) {
                    const Vec3 n = surface_normal(*surface, mesh.vertex(v));
                    const Vec3 ambient = h.polynomial->gradient(mesh.vertex(v));
                    exact = ambient - ambient.dot(n) * n;
                }
                err = std::max(err, (g[v] - exact).norm());
            }
            std::cout << "max error vs exact: " << err << '\n';
        }
        if (!o.out.empty()) {
            const NamedScalarField scalars[] = {{h.name, h.values}};
            const NamedVectorField vectors[] = {{"gradient", g}};
            write_output(o.out, mesh, scalars, vectors);
        }
        return 0;
    }

    if (o.op == "div") {
        const VectorSpec X = parse_vector_spec(o.field, d);
        const VertexScalarField div = divergence(d, X.values);
        double xmax = 0.0;
        for (const Vec3& x : X.values) xmax = std::max(xmax, x.norm());
        const double residual = integrate(d, div);
        std::cout << "conservation residual: " << residual << " (normalized "
                  << (xmax > 0.0 ? std::abs(residual) / (d.total_area() * xmax) : 0.0) << ")\n"
                  << "max |div|: " << max_abs(div) << '\n';
        if (X.exact_divergence) {
            std::vector<double> exact(mesh.num_vertices());
            for (Index v = 0; v < mesh.num_vertices(); ++v) exact[v] = X.exact_divergence(mesh.vertex(v));
            print_scalar_error(div, exact);
        }
        if (!o.out.empty()) {
            const NamedScalarField scalars[] = {{"divergence", div}};
            const NamedVectorField vectors[] = {{X.name, X.values}};
            write_output(o.out, mesh, scalars, vectors);
        }
        return 0;
    }

    const ScalarSpec h = parse_scalar_spec(o.field, mesh);
    const VertexScalarField lap = laplacian(d, h.values);
    const double hmax = max_abs(h.values);
    const double residual = integrate(d, lap);
    std::cout << "conservation residual: " << residual << " (normalized "
              << (hmax > 0.0 ? std::abs(residual) / (d.total_area() * hmax) : 0.0) << ")\n";
    if (h.constant || (surface && h.polynomial)) {
        std::vector<double> exact(mesh.num_vertices(), 0.0);
        if (!h.constant) {
            for (Index v = 0; v < mesh.num_vertices(); ++v) {
                exact[v] = analytic_laplacian_on_surface(*h.polynomial, *surface, mesh.vertex(v));
            }
        }
        print_scalar_error(lap, exact);
    }
    if (!o.out.empty()) {
        const NamedScalarField scalars[] = {{h.name, h.values}, {"laplacian", lap}};
        write_output(o.out, mesh, scalars, {});
    }
    return 0;
}

int run_pde(const PdeOptions& o)
{
    PdeProblem problem;
    std::string mesh_spec = o.mesh, init = o.init;
    double t_end = 0.5;
    if (o.kind == "heat") {
        problem.kind = PdeKind::heat;
        if (mesh_spec.empty()) mesh_spec = "icosphere:3";
        if (init.empty()) init = "cos_eta";
    } else if (o.kind == "biharmonic") {
        problem.kind = PdeKind::biharmonic;
        if (mesh_spec.empty()) mesh_spec = "icosphere:3";
        if (init.empty()) init = "sin3theta_sin7eta";
        t_end = 0.01;
    } else {
        problem.kind = PdeKind::allen_cahn;
        if (mesh_spec.empty()) mesh_spec = "torus:64x32";
        if (init.empty()) init = "torus_disk";
        t_end = 5.0;
    }

    const Discretization d(load_mesh_spec(mesh_spec));
    const TriangleMesh& mesh = d.mesh();
    problem.initial = parse_scalar_spec(init, mesh).values;
    problem.t_end = o.t_end.value_or(t_end);
    problem.dt = o.dt;
    problem.epsilon = o.eps;
    problem.reaction = o.reaction_sign == "reversed" ? ReactionSign::reversed : ReactionSign::standard;
    if (problem.kind == PdeKind::heat && init == "cos_eta" && detect_surface(mesh) == Surface::sphere) {
        problem.exact = [&mesh](double t) { return exact_heat_sphere(t, mesh); };
    }

    const PdeSolver solver(d, std::move(problem));
    const Trajectory traj = solver.solve(o.sample_every);
    const std::string prefix = o.out_prefix.empty() ? o.kind : o.out_prefix;
    write_trajectory(prefix, mesh, traj);

    const double e0 = traj.energy.front();
    const double scale = d.total_area() * max_abs(solver.problem().initial);
    std::cout << std::setprecision(6) << to_string(solver.problem().kind) << " on " << mesh.num_vertices()
              << " vertices: dt = " << traj.dt << ", " << traj.steps << " steps to t = " << solver.problem().t_end
              << '\n'
              << "energy: initial " << e0 << ", max drift " << traj.max_energy_drift << " (relative "
              << (scale > 0.0 ? traj.max_energy_drift / scale : 0.0) << ")\n"
              << "value range: [" << traj.min_value << ", " << traj.max_value << "]\n";
    if (!traj.linf_error.empty()) std::cout << "final max error vs exact: " << traj.linf_error.back() << '\n';
    std::cout << "wrote " << traj.fields.size() << " samples to " << prefix << "_NNNN.vtk and " << prefix
              << "_energy.csv\n";
    return 0;
}

int run_study(const StudyOptions& o)
{
    const std::string prefix = o.out.empty() ? o.kind : o.out;
    if (o.kind == "convergence") {
        if (o.levels.size() < 2) throw Error("convergence study needs at least two levels");
        const Surface surface = o.surface == "torus" ? Surface::torus : Surface::sphere;
        const ConvergenceReport report = run_polynomial_study(surface, o.levels, o.fields, o.seed);
        auto csv = open_report(prefix + ".csv");
        write_csv(csv, report);
        auto txt = open_report(prefix + ".txt");
        write_summary(txt, report);
        write_summary(std::cout, report);
    } else {
        const Discretization d(load_mesh_spec(o.mesh));
        const ConservationReport report = run_conservation_study(d, o.trials, o.seed);
        auto csv = open_report(prefix + ".csv");
        write_csv(csv, report);
        auto txt = open_report(prefix + ".txt");
        write_summary(txt, report);
        write_summary(std::cout, report);
    }
    std::cout << "wrote " << prefix << ".csv and " << prefix << ".txt\n";
    return 0;
}

} // namespace ltl::cli
