#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlrad/coefficient.hpp"
#include "nlrad/radial.hpp"

namespace nlrad {

/// A radial profile given in closed form: constant, polynomial in rho
/// (coefficients c_0, c_1, ...) or tabulated (rho, value) pairs joined
/// linearly and held constant past the ends.
struct FieldSpec {
  enum class Kind { constant, polynomial, tabulated };
  Kind kind = Kind::constant;
  double value = 0.0;
  std::vector<double> coefficients;
  std::vector<std::pair<double, double>> points;

  static FieldSpec constant_of(double v);

  double eval(double rho) const;
  RadialField sample(const RadialGrid& grid, bool dirichlet = false) const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

std::string to_string(FieldSpec::Kind kind);

/// A diffusion law as written in a config. The staircase kind is resolved
/// against the problem (I_r) when `fit` is set.
struct CoefficientSpec {
  enum class Kind { constant, rational, piecewise_linear, tabulated, staircase };
  Kind kind = Kind::constant;
  double value = 1.0;
  double alpha = 1.0, beta = 1.0, gamma = 0.0;
  std::pair<double, double> domain{-0.5, 10.0};
  std::vector<std::pair<double, double>> points;
  // staircase
  int n1 = 3;
  double a0 = 1.0;
  bool fit = true;                      // c_min = min I_r, c_max = factor * max I_r
  double c_max_factor = 2.0;
  std::optional<double> c_min, c_max;   // explicit values when fit is off

  friend bool operator==(const CoefficientSpec&, const CoefficientSpec&) = default;
};

std::string to_string(CoefficientSpec::Kind kind);

/// Builds every kind except a fitted staircase, which needs I_r; pass the
/// interval in that case.
DiffusionCoefficient build_coefficient(const CoefficientSpec& spec,
                                       std::optional<std::pair<double, double>> I_r = std::nullopt);

}  // namespace nlrad
