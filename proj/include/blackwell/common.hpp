#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace blackwell {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Tolerance used when checking that a vector sums to one.
inline constexpr double kProbabilityTolerance = 1e-12;

/// True when every entry is finite and nonnegative and the entries sum to one.
bool is_distribution(const Vector& v, double tol = kProbabilityTolerance);

/// Throws std::invalid_argument naming `what` unless `v` is a distribution of
/// length `size`.
void require_distribution(const Vector& v, std::size_t size, std::string_view what);

Vector point_mass(std::size_t size, std::size_t index);
Vector uniform_distribution(std::size_t size);
Vector make_vector(std::initializer_list<double> values);
Vector to_vector(const std::vector<double>& values);
std::vector<double> to_std(const Vector& v);

/// Clamps tiny negative round-off to zero and renormalizes.
Vector clean_distribution(Vector v);

/// Formats a double with 12 significant digits, the precision used for all
/// tabular and report output.
std::string format_real(double value);

/// Comma-joined `format_real` of each entry.
std::string format_vector(const Vector& v);

/// Parses "0.3,0.3,0.4" into a vector. Throws std::invalid_argument.
Vector parse_vector(std::string_view text);

}  // namespace blackwell
