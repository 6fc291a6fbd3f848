#include <ltl/errors.hpp>
#include <ltl/stencil.hpp>

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

namespace ltl {

namespace {

constexpr double k_rank_tolerance = 1e-10;
constexpr double k_det_tolerance = 1e-12;

} // namespace

Vec2 GradientStencil::gradient(const LiftedValues& values) const
{
    Vec2 rhs = Vec2::Zero();
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        const double diff = values.values[i] - values.center;
        rhs.x() += alpha[static_cast<Eigen::Index>(i)] * diff;
        rhs.y() += beta[static_cast<Eigen::Index>(i)] * diff;
    }
    return moment_inverse * rhs;
}

std::vector<Vec2> GradientStencil::difference_weights() const
{
    std::vector<Vec2> weights(neighbors.size());
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        weights[i] = moment_inverse * Vec2(alpha[k], beta[k]);
    }
    return weights;
}

GradientStencil solve_stencil(const LiftedPolygon& polygon)
{
    const auto n = static_cast<Eigen::Index>(polygon.lifted.size());
    if (n < 5) {
        throw DegenerateError("degenerate stencil at vertex " + std::to_string(polygon.center) +
                              ": " + std::to_string(n) + " neighbors, at least 5 required");
    }

    Eigen::MatrixXd constraints(3, n);
    Eigen::MatrixXd points(n, 2);
    double abs_x = 0.0;
    double abs_y = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vec2& p = polygon.lifted[static_cast<std::size_t>(i)];
        constraints(0, i) = p.x() * p.y();
        constraints(1, i) = p.x() * p.x();
        constraints(2, i) = p.y() * p.y();
        points.row(i) = p.transpose();
        abs_x += std::abs(p.x());
        abs_y += std::abs(p.y());
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> constraint_svd(constraints, Eigen::ComputeFullV);
    const auto& sigma = constraint_svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        if (sigma[k] > k_rank_tolerance * sigma[0]) ++rank;
    }
    const Eigen::Index nullity = n - rank;
    if (nullity < 2) {
        throw DegenerateError("degenerate stencil at vertex " + std::to_string(polygon.center) +
                              ": null space dimension " + std::to_string(nullity));
    }
    const Eigen::MatrixXd null_basis = constraint_svd.matrixV().rightCols(nullity);

    Eigen::MatrixXd projected = null_basis.transpose() * points;
    Eigen::JacobiSVD<Eigen::MatrixXd> pair_svd(projected, Eigen::ComputeThinU);

    GradientStencil stencil;
    stencil.center = polygon.center;
    stencil.neighbors = polygon.neighbors;
    stencil.alpha = null_basis * pair_svd.matrixU().col(0);
    stencil.beta = null_basis * pair_svd.matrixU().col(1);
    stencil.moment.row(0) = stencil.alpha.transpose() * points;
    stencil.moment.row(1) = stencil.beta.transpose() * points;

    const double det = stencil.moment.determinant();
    const double threshold = k_det_tolerance * abs_x * abs_y / static_cast<double>(n * n);
    if (!(std::abs(det) > threshold)) {
        throw DegenerateError("degenerate stencil at vertex " + std::to_string(polygon.center) +
                              ": moment determinant " + std::to_string(det));
    }
    stencil.moment_inverse = stencil.moment.inverse();
    return stencil;
}

} // namespace ltl
