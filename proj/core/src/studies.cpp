#include <ltl/studies.hpp>

#include <ltl/errors.hpp>
#include <ltl/generators.hpp>
#include <ltl/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace ltl {

namespace {

constexpr double surface_tolerance = 1e-9;

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

double median(std::vector<double> values)
{
    if (values.empty()) return 0.0;
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double m = values[mid];
    if (values.size() % 2 == 0) {
        m = 0.5 * (m + *std::max_element(values.begin(), values.begin() + mid));
    }
    return m;
}

// Distance from the torus core circle, minus the tube radius.
double torus_offset(const Vec3& p)
{
    return std::hypot(std::hypot(p.x(), p.y()) - 1.0, p.z()) - 0.5;
}

void require_on_surface(Surface surface, const Vec3& p)
{
    const double offset = surface == Surface::sphere ? p.norm() - 1.0 : torus_offset(p);
    if (!(std::abs(offset) <= surface_tolerance)) {
        throw DomainError("point is not on the " + std::string(to_string(surface)));
    }
}

// Sum of principal curvatures for the outward normal.
double mean_curvature_sum(Surface surface, const Vec3& p)
{
    if (surface == Surface::sphere) return 2.0;
    const double rho = std::hypot(p.x(), p.y());
    return 2.0 + 2.0 * (rho - 1.0) / rho;
}

struct ChartDerivatives
{
    Vec3 xu, xv, xuu, xvv;
    double E, G;
    double d_sqrt_E_over_G; // ∂_η √(E/G); E and G do not depend on θ
};

ChartDerivatives chart_derivatives(Surface surface, double theta, double eta)
{
    const double ct = std::cos(theta), st = std::sin(theta);
    const double ce = std::cos(eta), se = std::sin(eta);
    ChartDerivatives c;
    if (surface == Surface::sphere) {
        c.xu = {-se * st, se * ct, 0.0};
        c.xuu = {-se * ct, -se * st, 0.0};
        c.xv = {ce * ct, ce * st, -se};
        c.xvv = {-se * ct, -se * st, -ce};
        c.E = se * se;
        c.G = 1.0;
        c.d_sqrt_E_over_G = ce;
    } else {
        const double R = 1.0 + 0.5 * ce;
        c.xu = {-R * st, R * ct, 0.0};
        c.xuu = {-R * ct, -R * st, 0.0};
        c.xv = {-0.5 * se * ct, -0.5 * se * st, 0.5 * ce};
        c.xvv = {-0.5 * ce * ct, -0.5 * ce * st, -0.5 * se};
        c.E = R * R;
        c.G = 0.25;
        c.d_sqrt_E_over_G = -se;
    }
    return c;
}

} // namespace

const char* to_string(Surface surface)
{
    return surface == Surface::sphere ? "sphere" : "torus";
}

Vec3 surface_point(Surface surface, double theta, double eta)
{
    if (surface == Surface::torus) return torus_point(theta, eta);
    return {std::sin(eta) * std::cos(theta), std::sin(eta) * std::sin(theta), std::cos(eta)};
}

Vec3 surface_normal(Surface surface, const Vec3& p)
{
    require_on_surface(surface, p);
    if (surface == Surface::sphere) return p.normalized();
    const double rho = std::hypot(p.x(), p.y());
    return Vec3((rho - 1.0) * p.x() / rho, (rho - 1.0) * p.y() / rho, p.z()).normalized();
}

double analytic_laplacian_on_surface(const PolynomialField& p, Surface surface, const Vec3& point)
{
    const Vec3 n = surface_normal(surface, point);
    const Eigen::Matrix3d H = p.hessian(point);
    const Vec3 g = p.gradient(point);
    return H.trace() - n.dot(H * n) - mean_curvature_sum(surface, point) * g.dot(n);
}

double chart_laplacian(const PolynomialField& p, Surface surface, double theta, double eta)
{
    const ChartDerivatives c = chart_derivatives(surface, theta, eta);
    if (c.E <= 0.0) throw DomainError("chart is singular at this point");
    const Vec3 x = surface_point(surface, theta, eta);
    const Vec3 g = p.gradient(x);
    const Eigen::Matrix3d H = p.hessian(x);

    const double pv = g.dot(c.xv);
    const double puu = c.xu.dot(H * c.xu) + g.dot(c.xuu);
    const double pvv = c.xv.dot(H * c.xv) + g.dot(c.xvv);
    return puu / c.E + pvv / c.G + c.d_sqrt_E_over_G * pv / std::sqrt(c.E * c.G);
}

TriangleMesh study_mesh(Surface surface, int level)
{
    if (surface == Surface::sphere) return gen_icosphere(level);
    if (level < 0 || level > 6) throw DomainError("torus level must be in [0, 6]");
    return gen_torus(1 << (level + 3), 1 << (level + 2));
}

double fit_loglog_slope(std::span<const double> r, std::span<const double> error)
{
    if (r.size() != error.size() || r.size() < 2) {
        throw DomainError("slope fit needs at least two (r, error) pairs");
    }
    const std::size_t n = r.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(r[i] > 0.0) || !(error[i] > 0.0)) throw DomainError("slope fit needs positive values");
        mx += std::log(r[i]);
        my += std::log(error[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(r[i]) - mx;
        sxy += dx * (std::log(error[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw DomainError("slope fit needs distinct mesh sizes");
    return sxy / sxx;
}

ConvergenceReport run_polynomial_study(Surface surface, std::span<const int> levels,
                                       std::size_t n_fields, std::uint64_t seed)
{
    if (levels.size() < 2) throw DomainError("convergence study needs at least two levels");
    if (n_fields == 0) throw DomainError("convergence study needs at least one field");

    std::vector<PolynomialField> fields;
    fields.reserve(n_fields);
    for (std::size_t i = 0; i < n_fields; ++i) {
        auto rng = trial_rng(seed, i);
        fields.push_back(PolynomialField::random(rng));
    }

    ConvergenceReport report;
    report.surface = surface;
    report.n_fields = n_fields;
    report.seed = seed;

    for (int level : levels) {
        const Discretization d(study_mesh(surface, level));
        const LaplacianMatrix L(d);
        const TriangleMesh& mesh = d.mesh();
        const std::size_t nv = mesh.num_vertices();

        std::vector<double> weight(nv);
        double weight_sum = 0.0;
        for (Index v = 0; v < nv; ++v) {
            weight[v] = d.star_area(v) / 3.0;
            weight_sum += weight[v];
        }

        std::vector<double> linf(n_fields), l2(n_fields);
        parallel_for(n_fields, [&](std::size_t f) {
            VertexScalarField values(nv);
            for (Index v = 0; v < nv; ++v) values[v] = fields[f].value(mesh.vertex(v));
            const VertexScalarField lap = L.apply(values);
            double emax = 0.0, esq = 0.0;
            for (Index v = 0; v < nv; ++v) {
                const double e = lap[v] - analytic_laplacian_on_surface(fields[f], surface, mesh.vertex(v));
                emax = std::max(emax, std::abs(e));
                esq += weight[v] * e * e;
            }
            linf[f] = emax;
            l2[f] = std::sqrt(esq / weight_sum);
        });

        LevelResult row;
        row.level = level;
        row.vertices = nv;
        row.r = d.mesh_size();
        row.linf_median = median(linf);
        row.linf_max = *std::max_element(linf.begin(), linf.end());
        row.l2_median = median(l2);
        row.l2_max = *std::max_element(l2.begin(), l2.end());
        report.levels.push_back(row);
    }

    std::stable_sort(report.levels.begin(), report.levels.end(),
                     [](const LevelResult& a, const LevelResult& b) { return a.r > b.r; });

    std::vector<double> r, linf, l2;
    for (const auto& row : report.levels) {
        r.push_back(row.r);
        linf.push_back(row.linf_median);
        l2.push_back(row.l2_median);
    }
    report.slope_linf = fit_loglog_slope(r, linf);
    report.slope_l2 = fit_loglog_slope(r, l2);
    return report;
}

ConservationReport run_conservation_study(const Discretization& d, std::size_t n_trials, std::uint64_t seed)
{
    d.require_closed("conservation study");

    ConservationReport report;
    report.vertices = d.num_vertices();
    report.area = d.total_area();
    report.seed = seed;

    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    const std::size_t n = d.num_vertices();
    for (std::size_t t = 0; t < n_trials; ++t) {
        auto rng = trial_rng(seed, t);
        VertexVectorField X(n);
        double xmax = 0.0;
        for (Vec3& x : X) {
            x = Vec3(uniform(rng), uniform(rng), uniform(rng));
            xmax = std::max(xmax, x.norm());
        }
        VertexScalarField h(n);
        double hmax = 0.0;
        for (double& x : h) {
            x = uniform(rng);
            hmax = std::max(hmax, std::abs(x));
        }

        ConservationTrial trial;
        trial.divergence = std::abs(conservation_residual(d, X)) / (report.area * xmax);
        trial.laplacian = std::abs(integrate(d, laplacian(d, h))) / (report.area * hmax);
        report.max_divergence = std::max(report.max_divergence, trial.divergence);
        report.max_laplacian = std::max(report.max_laplacian, trial.laplacian);
        report.trials.push_back(trial);
    }
    return report;
}

void write_csv(std::ostream& out, const ConvergenceReport& report)
{
    out << "level,r,linf,l2,slope_linf,slope_l2\n" << std::setprecision(17);
    for (const auto& row : report.levels) {
        out << row.level << ',' << row.r << ',' << row.linf_median << ',' << row.l2_median << ','
            << report.slope_linf << ',' << report.slope_l2 << '\n';
    }
}

void write_summary(std::ostream& out, const ConvergenceReport& report)
{
    out << "Laplacian convergence on the " << to_string(report.surface) << ": " << report.n_fields
        << " random polynomials of degree <= 4, seed " << report.seed << '\n'
        << "l2 is the area-weighted RMS sqrt(sum A_v e_v^2 / sum A_v), A_v = star area / 3\n"
        << "errors are medians over fields (max in parentheses)\n\n";
    out << std::left << std::setw(7) << "level" << std::setw(10) << "vertices" << std::setw(12) << "r"
        << std::setw(26) << "linf" << "l2\n";
    out << std::setprecision(4) << std::scientific;
    for (const auto& row : report.levels) {
        std::ostringstream linf, l2;
        linf << std::setprecision(4) << std::scientific << row.linf_median << " (" << row.linf_max << ')';
        l2 << std::setprecision(4) << std::scientific << row.l2_median << " (" << row.l2_max << ')';
        out << std::setw(7) << row.level << std::setw(10) << row.vertices << std::setw(12) << row.r
            << std::setw(26) << linf.str() << l2.str() << '\n';
    }
    out << std::defaultfloat << std::setprecision(4) << "\nfitted slope: linf " << report.slope_linf
        << ", l2 " << report.slope_l2 << '\n';
}

void write_csv(std::ostream& out, const ConservationReport& report)
{
    out << "trial,div_residual,lap_residual\n" << std::setprecision(17);
    for (std::size_t t = 0; t < report.trials.size(); ++t) {
        out << t << ',' << report.trials[t].divergence << ',' << report.trials[t].laplacian << '\n';
    }
}

void write_summary(std::ostream& out, const ConservationReport& report)
{
    out << "Conservation residuals on " << report.vertices << " vertices, area " << std::setprecision(10)
        << report.area << ", " << report.trials.size() << " trials, seed " << report.seed << '\n'
        << "normalized by area * max field magnitude\n" << std::setprecision(4) << std::scientific
        << "max |integral of Div X|  " << report.max_divergence << '\n'
        << "max |integral of Lap h|  " << report.max_laplacian << '\n'
        << std::defaultfloat;
}

} // namespace ltl
