#pragma once

#include <ltl/operators.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ltl {

enum class PdeKind { heat, biharmonic, allen_cahn };

/// Sign of the Allen–Cahn reaction term.
/// standard: R(u) = u − u³ (±1 stable). reversed: R(u) = u³ − u (±1 unstable).
enum class ReactionSign { standard, reversed };

enum class SphericalFormula { cos_eta, sin3theta_sin7eta };

const char* to_string(PdeKind kind);

struct PdeProblem
{
    PdeKind kind = PdeKind::heat;
    double epsilon = 0.1;
    ReactionSign reaction = ReactionSign::standard;
    VertexScalarField initial;
    double t_end = 0.0;
    /// Time step; chosen from the spectral bound of Δ_A when empty.
    std::optional<double> dt;
    /// Reference solution u(t), if known.
    std::function<VertexScalarField(double)> exact;
};

///
/// Samples a closed-form field on the unit sphere with η the polar angle
/// (cos η = z) and θ = atan2(y, x). Throws DomainError for vertices whose
/// norm differs from 1 by more than 1e-9.
///
VertexScalarField spherical_field(const TriangleMesh& mesh, SphericalFormula formula);

/// +1 inside the chart disk of radius 4/5 about (θ, η) = (π/2, π/2), −1 outside.
/// Needs chart coordinates (as stored by gen_torus); throws DomainError otherwise.
VertexScalarField torus_disk_field(const TriangleMesh& mesh);

/// e^{−2t} z on the unit sphere.
VertexScalarField exact_heat_sphere(double t, const TriangleMesh& mesh);

struct Trajectory
{
    double dt = 0.0;
    std::size_t steps = 0;
    std::vector<double> times;
    std::vector<VertexScalarField> fields;
    /// integrate(u) at each sample.
    std::vector<double> energy;
    /// max_v |u − exact| at each sample; empty without a reference solution.
    std::vector<double> linf_error;
    /// Over every step, not only samples.
    double max_energy_drift = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
};

///
/// Explicit Euler integrator for
///   heat        u_t = Δ_A u
///   biharmonic  u_t = −Δ_A Δ_A u
///   allen_cahn  u_t = ε² Δ_A u + R(u)
/// on a closed mesh, using the assembled sparse Laplacian.
///
class PdeSolver
{
public:
    /// Throws UnstableStepError if a requested dt exceeds the stability bound.
    PdeSolver(const Discretization& d, PdeProblem problem);

    const PdeProblem& problem() const { return m_problem; }
    const LaplacianMatrix& laplacian() const { return m_laplacian; }

    /// Time step actually used; divides t_end evenly.
    double dt() const { return m_dt; }
    std::size_t num_steps() const { return m_steps; }

    /// Gershgorin bound on the spectral radius of Δ_A.
    double spectral_bound() const { return m_spectral_bound; }

    /// Largest stable explicit Euler step for this problem.
    double stability_limit() const;

    /// One Euler step of size dt(). Throws UnstableStepError on non-finite or
    /// exploding output.
    VertexScalarField step(std::span<const double> u) const;

    /// Runs to t_end, sampling at step 0, every `sample_every` steps and at the end.
    Trajectory solve(std::size_t sample_every = 0) const;

private:
    const Discretization& m_disc;
    PdeProblem m_problem;
    LaplacianMatrix m_laplacian;
    double m_spectral_bound = 0.0;
    double m_dt = 0.0;
    std::size_t m_steps = 0;
    double m_blowup = 0.0;
};

/// Automatic step: 0.2 of the stability limit, capped at 0.1 for Allen–Cahn.
double auto_time_step(PdeKind kind, double spectral_bound, double epsilon);

/// Writes `<prefix>_NNNN.vtk` per sample and `<prefix>_energy.csv` (t,energy,linf_error).
void write_trajectory(const std::filesystem::path& prefix, const TriangleMesh& mesh,
                      const Trajectory& trajectory);

} // namespace ltl
