#pragma once

#include <ltl/operators.hpp>
#include <ltl/polynomial.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ltl {

/// Unit sphere, or the torus of gen_torus (major radius 1, minor radius 1/2).
enum class Surface { sphere, torus };

const char* to_string(Surface surface);

/// Outward unit normal of the surface at p. Throws DomainError if p is off the surface.
Vec3 surface_normal(Surface surface, const Vec3& p);

///
/// Exact Δ_Σ p at a surface point, from the ambient derivatives of p:
///   Δ_Σ p = tr(H) − nᵀHn − κ ⟨∇p, n⟩
/// with H the Hessian, n the outward normal and κ the sum of principal curvatures.
/// Throws DomainError if the point is more than 1e-9 off the surface.
///
double analytic_laplacian_on_surface(const PolynomialField& p, Surface surface, const Vec3& point);

///
/// The same quantity through the chart (θ, η) and its first fundamental form,
/// Δ = (1/√(EG)) [∂_θ(√(G/E) p_θ) + ∂_η(√(E/G) p_η)]. For the sphere η is the
/// polar angle, so the chart is singular at the poles.
///
double chart_laplacian(const PolynomialField& p, Surface surface, double theta, double eta);

/// Chart point (θ, η) ↦ position on the surface.
Vec3 surface_point(Surface surface, double theta, double eta);

///
/// Mesh of refinement level k: icosphere(k) for the sphere, and a torus grid of
/// 2^(k+3) × 2^(k+2) for the torus.
///
TriangleMesh study_mesh(Surface surface, int level);

/// Least-squares slope of log(error) against log(r). Needs ≥ 2 points, all positive.
double fit_loglog_slope(std::span<const double> r, std::span<const double> error);

struct LevelResult
{
    int level = 0;
    std::size_t vertices = 0;
    double r = 0.0;
    double linf_median = 0.0;
    double linf_max = 0.0;
    double l2_median = 0.0;
    double l2_max = 0.0;
};

struct ConvergenceReport
{
    Surface surface = Surface::sphere;
    std::size_t n_fields = 0;
    std::uint64_t seed = 0;
    /// Sorted by decreasing r.
    std::vector<LevelResult> levels;
    /// Fitted on the median errors.
    double slope_linf = 0.0;
    double slope_l2 = 0.0;
};

///
/// Discrete Laplacian error on random polynomial fields of degree ≤ 4 over a
/// refinement family. Per level and field: l∞ = max_v |Δ_A p − Δ_Σ p| and
/// l2 = sqrt(Σ A_v e_v² / Σ A_v) with A_v a third of the star area. Field i uses
/// the generator seeded with (seed, i), so every level sees the same fields.
///
ConvergenceReport run_polynomial_study(Surface surface, std::span<const int> levels,
                                       std::size_t n_fields, std::uint64_t seed);

struct ConservationTrial
{
    /// |integrate(Div_A X)| / (area · max‖X‖)
    double divergence = 0.0;
    /// |integrate(Δ_A h)| / (area · max|h|)
    double laplacian = 0.0;
};

struct ConservationReport
{
    std::size_t vertices = 0;
    double area = 0.0;
    std::uint64_t seed = 0;
    std::vector<ConservationTrial> trials;
    double max_divergence = 0.0;
    double max_laplacian = 0.0;
};

///
/// Normalized conservation residuals for `n_trials` random vector fields and
/// random scalar fields (entries uniform on [−1, 1]). Throws BoundaryError
/// for open meshes.
///
ConservationReport run_conservation_study(const Discretization& d, std::size_t n_trials,
                                          std::uint64_t seed);

/// CSV `level,r,linf,l2,slope_linf,slope_l2`, the fitted slopes repeated per row.
void write_csv(std::ostream& out, const ConvergenceReport& report);
void write_summary(std::ostream& out, const ConvergenceReport& report);

/// CSV `trial,div_residual,lap_residual`.
void write_csv(std::ostream& out, const ConservationReport& report);
void write_summary(std::ostream& out, const ConservationReport& report);

} // namespace ltl
