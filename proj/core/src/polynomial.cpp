#include <ltl/polynomial.hpp>

#include <ltl/errors.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ltl {

namespace {

std::array<PolynomialField::Exponent, PolynomialField::num_coefficients> make_exponents()
{
    std::array<PolynomialField::Exponent, PolynomialField::num_coefficients> out{};
    std::size_t n = 0;
    for (int d = 0; d <= PolynomialField::max_degree; ++d) {
        for (int i = d; i >= 0; --i) {
            for (int j = d - i; j >= 0; --j) out[n++] = {i, j, d - i - j};
        }
    }
    return out;
}

// powers[a][e] = coordinate a raised to e, e = 0..4
using Powers = std::array<std::array<double, PolynomialField::max_degree + 1>, 3>;

Powers powers_of(const Vec3& p)
{
    Powers pw{};
    for (int a = 0; a < 3; ++a) {
        pw[a][0] = 1.0;
        for (int e = 1; e <= PolynomialField::max_degree; ++e) pw[a][e] = pw[a][e - 1] * p[a];
    }
    return pw;
}

// d^k/dx^k of x^e evaluated through the power table
double derivative(const Powers& pw, int axis, int e, int k)
{
    if (e < k) return 0.0;
    double factor = 1.0;
    for (int i = 0; i < k; ++i) factor *= e - i;
    return factor * pw[axis][e - k];
}

} // namespace

const std::array<PolynomialField::Exponent, PolynomialField::num_coefficients>& PolynomialField::exponents()
{
    static const auto table = make_exponents();
    return table;
}

PolynomialField::PolynomialField(const Coefficients& coefficients)
    : m_coefficients(coefficients)
{
    if (std::all_of(coefficients.begin(), coefficients.end(), [](double c) { return c == 0.0; })) {
        throw DomainError("polynomial has no nonzero coefficient");
    }
}

PolynomialField PolynomialField::random(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    Coefficients c{};
    do {
        for (double& x : c) x = uniform(rng);
    } while (std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; }));
    return PolynomialField(c);
}

PolynomialField PolynomialField::parse(const std::string& text)
{
    Coefficients c{};
    std::size_t n = 0;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (n == num_coefficients) {
            throw DomainError("polynomial takes at most " + std::to_string(num_coefficients) + " coefficients");
        }
        const char* first = item.data();
        const char* last = item.data() + item.size();
        while (first < last && *first == ' ') ++first;
        auto [ptr, ec] = std::from_chars(first, last, c[n]);
        if (ec != std::errc() || ptr != last) {
            throw DomainError("bad polynomial coefficient '" + item + "'");
        }
        ++n;
    }
    return PolynomialField(c);
}

double PolynomialField::value(const Vec3& p) const
{
    const Powers pw = powers_of(p);
    const auto& ex = exponents();
    double sum = 0.0;
    for (std::size_t t = 0; t < num_coefficients; ++t) {
        sum += m_coefficients[t] * pw[0][ex[t][0]] * pw[1][ex[t][1]] * pw[2][ex[t][2]];
    }
    return sum;
}

Vec3 PolynomialField::gradient(const Vec3& p) const
{
    const Powers pw = powers_of(p);
    const auto& ex = exponents();
    Vec3 g = Vec3::Zero();
    for (std::size_t t = 0; t < num_coefficients; ++t) {
        const auto [i, j, k] = ex[t];
        const double c = m_coefficients[t];
        g.x() += c * derivative(pw, 0, i, 1) * pw[1][j] * pw[2][k];
        g.y() += c * pw[0][i] * derivative(pw, 1, j, 1) * pw[2][k];
        g.z() += c * pw[0][i] * pw[1][j] * derivative(pw, 2, k, 1);
    }
    return g;
}

Eigen::Matrix3d PolynomialField::hessian(const Vec3& p) const
{
    const Powers pw = powers_of(p);
    const auto& ex = exponents();
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (std::size_t t = 0; t < num_coefficients; ++t) {
        const double c = m_coefficients[t];
        for (int a = 0; a < 3; ++a) {
            for (int b = a; b < 3; ++b) {
                std::array<int, 3> order{0, 0, 0};
                ++order[a];
                ++order[b];
                double term = c;
                for (int axis = 0; axis < 3; ++axis) term *= derivative(pw, axis, ex[t][axis], order[axis]);
                h(a, b) += term;
            }
        }
    }
    h(1, 0) = h(0, 1);
    h(2, 0) = h(0, 2);
    h(2, 1) = h(1, 2);
    return h;
}

} // namespace ltl
