#include <Eigen/Dense>
#include <cmath>
#include <set>

#include "xychain/scaling.hpp"

namespace xychain {

const char* to_string(ScalingModel model) {
  return model == ScalingModel::log_law ? "log_law" : "power_law";
}

ScalingFit fit_scaling(std::span<const ScalingPoint> points, ScalingModel model,
                       std::optional<double> power) {
  if (points.size() < 4) throw ParameterError("a scaling fit needs at least 4 points");
  std::set<double> sizes;
  for (const auto& pt : points) {
    if (!(pt.n > 0.0)) throw ParameterError("system sizes must be positive");
    if (!std::isfinite(pt.value)) throw ParameterError("non-finite value in scaling data");
    if (!sizes.insert(pt.n).second) throw ParameterError("system sizes must be distinct");
  }

  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) y(i) = points[static_cast<std::size_t>(i)].value;

  ScalingFit fit;
  fit.model = model;
  fit.points = points.size();
  Eigen::VectorXd model_values(m);

  if (model == ScalingModel::log_law) {
    Eigen::MatrixXd design(m, 2);
    for (Eigen::Index i = 0; i < m; ++i) {
      design(i, 0) = 1.0;
      design(i, 1) = std::log(points[static_cast<std::size_t>(i)].n);
    }
    const Eigen::Vector2d ab = design.colPivHouseholderQr().solve(y);
    fit.exponent_or_base = std::numbers::e;
    fit.intercept = ab(0);
    fit.coefficient = ab(1);
    model_values = design * ab;
  } else {
    if (!power || !std::isfinite(*power)) throw ParameterError("power_law fit needs a fixed power");
    Eigen::VectorXd x(m);
    for (Eigen::Index i = 0; i < m; ++i) x(i) = std::pow(points[static_cast<std::size_t>(i)].n, -*power);
    fit.exponent_or_base = *power;
    fit.intercept = 0.0;
    fit.coefficient = x.dot(y) / x.squaredNorm();
    model_values = fit.coefficient * x;
  }
  fit.residual = std::sqrt((y - model_values).squaredNorm() / static_cast<double>(m));
  return fit;
}

}  // namespace xychain
