#pragma once

#include <ltl/types.hpp>

#include <array>
#include <random>
#include <span>
#include <string>

namespace ltl {

///
/// Trivariate polynomial in (x, y, z) of total degree at most 4.
///
/// Coefficients are stored in graded order: by total degree, then by
/// descending power of x, then of y (1, x, y, z, x², xy, xz, y², yz, z², ...).
///
class PolynomialField
{
public:
    static constexpr int max_degree = 4;
    static constexpr std::size_t num_coefficients = 35;
    using Coefficients = std::array<double, num_coefficients>;
    using Exponent = std::array<int, 3>;

    /// Throws DomainError when every coefficient is zero.
    explicit PolynomialField(const Coefficients& coefficients);

    /// Exponents (i, j, k) of x^i y^j z^k, aligned with the coefficients.
    static const std::array<Exponent, num_coefficients>& exponents();

    /// Coefficients i.i.d. uniform on [−1, 1]; redrawn if all come out zero.
    static PolynomialField random(std::mt19937_64& rng);

    /// Parses a comma-separated coefficient list in graded order; missing
    /// trailing coefficients are zero.
    static PolynomialField parse(const std::string& text);

    const Coefficients& coefficients() const { return m_coefficients; }

    double value(const Vec3& p) const;
    Vec3 gradient(const Vec3& p) const;
    Eigen::Matrix3d hessian(const Vec3& p) const;

private:
    Coefficients m_coefficients;
};

} // namespace ltl
