#include <ltl/pde.hpp>

#include <ltl/errors.hpp>
#include <ltl/mesh_io.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

namespace ltl {

const char* to_string(PdeKind kind)
{
    switch (kind) {
    case PdeKind::heat: return "heat";
    case PdeKind::biharmonic: return "biharmonic";
    case PdeKind::allen_cahn: return "allen-cahn";
    }
    return "?";
}

VertexScalarField spherical_field(const TriangleMesh& mesh, SphericalFormula formula)
{
    VertexScalarField out(mesh.num_vertices());
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        const Vec3& p = mesh.vertex(v);
        if (std::abs(p.norm() - 1.0) > 1e-9) {
            throw DomainError("vertex " + std::to_string(v) + " is not on the unit sphere");
        }
        if (formula == SphericalFormula::cos_eta) {
            out[v] = p.z();
        } else {
            const double eta = std::acos(std::clamp(p.z(), -1.0, 1.0));
            const double theta = std::atan2(p.y(), p.x());
            out[v] = std::sin(3.0 * theta) * std::sin(7.0 * eta);
        }
    }
    return out;
}

VertexScalarField torus_disk_field(const TriangleMesh& mesh)
{
    if (!mesh.has_chart_coords()) {
        throw DomainError("torus disk field needs (theta, eta) chart coordinates on the mesh");
    }
    constexpr double c = std::numbers::pi / 2.0;
    VertexScalarField out(mesh.num_vertices());
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        const Vec2& q = mesh.chart_coords()[v];
        out[v] = std::hypot(q.x() - c, q.y() - c) <= 0.8 ? 1.0 : -1.0;
    }
    return out;
}

VertexScalarField exact_heat_sphere(double t, const TriangleMesh& mesh)
{
    VertexScalarField out(mesh.num_vertices());
    const double decay = std::exp(-2.0 * t);
    for (Index v = 0; v < mesh.num_vertices(); ++v) out[v] = decay * mesh.vertex(v).z();
    return out;
}

namespace {

double stability_limit_for(PdeKind kind, double bound, double epsilon)
{
    switch (kind) {
    case PdeKind::heat: return 2.0 / bound;
    case PdeKind::biharmonic: return 2.0 / (bound * bound);
    case PdeKind::allen_cahn: return 2.0 / (epsilon * epsilon * bound + 2.0);
    }
    return 0.0;
}

double max_abs(std::span<const double> u)
{
    double m = 0.0;
    for (double x : u) m = std::max(m, std::abs(x));
    return m;
}

void check_against_pipeline(const Discretization& d, const LaplacianMatrix& L)
{
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    VertexScalarField h(d.num_vertices());
    for (double& x : h) x = uniform(rng);

    const VertexScalarField direct = laplacian(d, h);
    const VertexScalarField assembled = L.apply(h);
    double diff = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) diff = std::max(diff, std::abs(direct[i] - assembled[i]));
    const double scale = std::max(max_abs(direct), 1.0);
    if (diff > 1e-12 * scale) {
        std::ostringstream msg;
        msg << "assembled Laplacian differs from the direct pipeline by " << diff;
        throw Error(msg.str());
    }
}

} // namespace

double auto_time_step(PdeKind kind, double spectral_bound, double epsilon)
{
    double dt = 0.2 * stability_limit_for(kind, spectral_bound, epsilon);
    if (kind == PdeKind::allen_cahn) dt = std::min(dt, 0.1);
    return dt;
}

PdeSolver::PdeSolver(const Discretization& d, PdeProblem problem)
    : m_disc(d)
    , m_problem(std::move(problem))
    , m_laplacian(d)
{
    if (m_problem.initial.size() != d.num_vertices()) {
        throw Error("initial field has " + std::to_string(m_problem.initial.size()) +
                    " values for " + std::to_string(d.num_vertices()) + " vertices");
    }
    if (!(m_problem.t_end >= 0.0) || !std::isfinite(m_problem.t_end)) {
        throw Error("t_end must be finite and non-negative");
    }
    if (m_problem.kind == PdeKind::allen_cahn && !(m_problem.epsilon > 0.0)) {
        throw Error("epsilon must be positive");
    }
    for (double x : m_problem.initial) {
        if (!std::isfinite(x)) throw Error("initial field is not finite");
    }

    check_against_pipeline(d, m_laplacian);

    m_spectral_bound = std::max(m_laplacian.gershgorin_bound(), 1e-300);
    double dt = m_problem.dt.value_or(auto_time_step(m_problem.kind, m_spectral_bound, m_problem.epsilon));
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("dt must be positive");
    if (dt > stability_limit()) {
        std::ostringstream msg;
        msg << "unstable step: dt = " << dt << " exceeds the explicit Euler limit "
            << stability_limit() << " for " << to_string(m_problem.kind);
        throw UnstableStepError(msg.str(), dt);
    }

    m_steps = m_problem.t_end > 0.0 ? static_cast<std::size_t>(std::ceil(m_problem.t_end / dt - 1e-9)) : 0;
    m_dt = m_steps > 0 ? m_problem.t_end / static_cast<double>(m_steps) : dt;
    m_blowup = 1e6 * std::max(1.0, max_abs(m_problem.initial));
}

double PdeSolver::stability_limit() const
{
    return stability_limit_for(m_problem.kind, m_spectral_bound, m_problem.epsilon);
}

VertexScalarField PdeSolver::step(std::span<const double> u) const
{
    const std::size_t n = u.size();
    VertexScalarField lu = m_laplacian.apply(u);
    VertexScalarField out(n);

    switch (m_problem.kind) {
    case PdeKind::heat:
        for (std::size_t i = 0; i < n; ++i) out[i] = u[i] + m_dt * lu[i];
        break;
    case PdeKind::biharmonic: {
        const VertexScalarField llu = m_laplacian.apply(lu);
        for (std::size_t i = 0; i < n; ++i) out[i] = u[i] - m_dt * llu[i];
        break;
    }
    case PdeKind::allen_cahn: {
        const double eps2 = m_problem.epsilon * m_problem.epsilon;
        const double sign = m_problem.reaction == ReactionSign::standard ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double reaction = sign * (u[i] - u[i] * u[i] * u[i]);
            out[i] = u[i] + m_dt * (eps2 * lu[i] + reaction);
        }
        break;
    }
    }

    for (double x : out) {
        if (!std::isfinite(x) || std::abs(x) > m_blowup) {
            std::ostringstream msg;
            msg << "unstable step: solution diverged with dt = " << m_dt;
            throw UnstableStepError(msg.str(), m_dt);
        }
    }
    return out;
}

Trajectory PdeSolver::solve(std::size_t sample_every) const
{
    Trajectory traj;
    traj.dt = m_dt;
    traj.steps = m_steps;

    VertexScalarField u = m_problem.initial;
    const double e0 = integrate(m_disc, u);
    traj.min_value = *std::min_element(u.begin(), u.end());
    traj.max_value = *std::max_element(u.begin(), u.end());

    auto record = [&](std::size_t k, double energy) {
        const double t = static_cast<double>(k) * m_dt;
        traj.times.push_back(t);
        traj.fields.push_back(u);
        traj.energy.push_back(energy);
        if (m_problem.exact) {
            const VertexScalarField ref = m_problem.exact(t);
            double err = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, std::abs(u[i] - ref[i]));
            traj.linf_error.push_back(err);
        }
    };

    record(0, e0);
    for (std::size_t k = 1; k <= m_steps; ++k) {
        u = step(u);
        const double energy = integrate(m_disc, u);
        traj.max_energy_drift = std::max(traj.max_energy_drift, std::abs(energy - e0));
        const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
        traj.min_value = std::min(traj.min_value, *lo);
        traj.max_value = std::max(traj.max_value, *hi);
        if (k == m_steps || (sample_every > 0 && k % sample_every == 0)) record(k, energy);
    }
    return traj;
}

void write_trajectory(const std::filesystem::path& prefix, const TriangleMesh& mesh,
                      const Trajectory& trajectory)
{
    if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
    const std::string base = prefix.string();

    for (std::size_t s = 0; s < trajectory.fields.size(); ++s) {
        std::ostringstream name;
        name << base << '_' << std::setw(4) << std::setfill('0') << s << ".vtk";
        std::ofstream out(name.str());
        if (!out) throw Error("cannot write " + name.str());
        const NamedScalarField fields[] = {{"u", trajectory.fields[s]}};
        std::ostringstream title;
        title << "t = " << std::setprecision(17) << trajectory.times[s];
        write_vtk(out, mesh, fields, {}, title.str());
    }

    const std::string csv = base + "_energy.csv";
    std::ofstream out(csv);
    if (!out) throw Error("cannot write " + csv);
    out << "t,energy,linf_error\n" << std::setprecision(17);
    for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
        out << trajectory.times[s] << ',' << trajectory.energy[s] << ',';
        if (s < trajectory.linf_error.size()) out << trajectory.linf_error[s];
        out << '\n';
    }
}

} // namespace ltl
