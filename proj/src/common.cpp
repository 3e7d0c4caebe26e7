#include "blackwell/common.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace blackwell {

bool is_distribution(const Vector& v, double tol) {
  if (v.size() == 0) return false;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0) return false;
    sum += v[i];
  }
  return std::abs(sum - 1.0) <= tol;
}

void require_distribution(const Vector& v, std::size_t size, std::string_view what) {
  if (static_cast<std::size_t>(v.size()) != size) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(size) +
                                " entries, got " + std::to_string(v.size()));
  }
  if (!is_distribution(v)) {
    throw std::invalid_argument(std::string(what) + " is not a probability vector");
  }
}

Vector point_mass(std::size_t size, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(size));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return v;
}

Vector uniform_distribution(std::size_t size) {
  return Vector::Constant(static_cast<Eigen::Index>(size), 1.0 / static_cast<double>(size));
}

Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Vector to_vector(const std::vector<double>& values) {
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector clean_distribution(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) v[i] = 0.0;
  }
  const double sum = v.sum();
  if (sum > 0.0) v /= sum;
  return v;
}

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string format_vector(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += format_real(v[i]);
  }
  return out;
}

Vector parse_vector(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string token(text.substr(start, end - start));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse number '" + token + "'");
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size()) throw std::invalid_argument("cannot parse number '" + token + "'");
    values.push_back(value);
    start = end + 1;
  }
  return to_vector(values);
}

}  // namespace blackwell
