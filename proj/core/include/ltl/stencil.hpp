#pragma once

#include <ltl/frame.hpp>

#include <Eigen/Core>

namespace ltl {

///
/// Null-space gradient stencil at one vertex.
///
/// `alpha` and `beta` are unit vectors annihilating the second-order moments
/// Σ w_i x_i y_i, Σ w_i x_i², Σ w_i y_i² of the lifted neighbors, so that
///   moment · ∇f(0,0) = (Σ α_i (f_i − f_0), Σ β_i (f_i − f_0)) + O(r³)
/// with moment = [[Σ α_i x_i, Σ α_i y_i], [Σ β_i x_i, Σ β_i y_i]].
///
struct GradientStencil
{
    Index center = 0;
    std::vector<Index> neighbors;
    Eigen::VectorXd alpha;
    Eigen::VectorXd beta;
    Eigen::Matrix2d moment = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d moment_inverse = Eigen::Matrix2d::Zero();
    /// Built from the 2-ring because the 1-ring was too small or degenerate.
    bool extended = false;

    /// In-plane gradient (f_x, f_y) from lifted values aligned with `neighbors`.
    Vec2 gradient(const LiftedValues& values) const;

    /// Per-neighbor weights c_i with gradient = Σ c_i (f_i − f_0).
    std::vector<Vec2> difference_weights() const;
};

///
/// Solves for (alpha, beta) on a lifted polygon with at least 5 points.
///
/// The pair spans the directions of the constraint null space along which the
/// moment matrix is best conditioned: with N an orthonormal null-space basis
/// and P the n×2 matrix of lifted points, alpha and beta are N times the two
/// left singular vectors of NᵀP. This maximizes |det moment| over all
/// orthonormal pairs in the null space and makes the resulting gradient
/// independent of the tangent basis and of the null-space basis.
///
/// Throws DegenerateError if fewer than 5 points are given, the null space has
/// dimension < 2, or |det moment| < 1e-12 (Σ|x_i|)(Σ|y_i|) / n².
///
GradientStencil solve_stencil(const LiftedPolygon& polygon);

} // namespace ltl
