#include "nlrad/fields.hpp"

#include <algorithm>

#include "nlrad/errors.hpp"

namespace nlrad {

FieldSpec FieldSpec::constant_of(double v) {
  FieldSpec s;
  s.kind = Kind::constant;
  s.value = v;
  return s;
}

double FieldSpec::eval(double rho) const {
  switch (kind) {
    case Kind::constant:
      return value;
    case Kind::polynomial: {
      double acc = 0.0;
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * rho + *it;
      return acc;
    }
    case Kind::tabulated: {
      if (points.empty()) throw InvalidArgument("tabulated field has no points");
      if (rho <= points.front().first) return points.front().second;
      if (rho >= points.back().first) return points.back().second;
      auto it = std::upper_bound(points.begin(), points.end(), rho,
                                 [](double x, const auto& p) { return x < p.first; });
      const auto& [x1, y1] = *it;
      const auto& [x0, y0] = *(it - 1);
      return y0 + (rho - x0) / (x1 - x0) * (y1 - y0);
    }
  }
  return 0.0;
}

RadialField FieldSpec::sample(const RadialGrid& grid, bool dirichlet) const {
  if (kind == Kind::tabulated) {
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (!(points[i].first > points[i - 1].first)) {
        throw InvalidArgument("tabulated field abscissae must be strictly increasing");
      }
    }
  }
  return RadialField::sample(grid, [this](double rho) { return eval(rho); }, dirichlet);
}

std::string to_string(FieldSpec::Kind kind) {
  switch (kind) {
    case FieldSpec::Kind::constant: return "constant";
    case FieldSpec::Kind::polynomial: return "polynomial";
    case FieldSpec::Kind::tabulated: return "tabulated";
  }
  return "unknown";
}

std::string to_string(CoefficientSpec::Kind kind) {
  switch (kind) {
    case CoefficientSpec::Kind::constant: return "constant";
    case CoefficientSpec::Kind::rational: return "rational";
    case CoefficientSpec::Kind::piecewise_linear: return "piecewise_linear";
    case CoefficientSpec::Kind::tabulated: return "tabulated";
    case CoefficientSpec::Kind::staircase: return "staircase";
  }
  return "unknown";
}

DiffusionCoefficient build_coefficient(const CoefficientSpec& spec,
                                       std::optional<std::pair<double, double>> I_r) {
  switch (spec.kind) {
    case CoefficientSpec::Kind::constant:
      return DiffusionCoefficient::constant(spec.value);
    case CoefficientSpec::Kind::rational:
      return DiffusionCoefficient::rational(spec.alpha, spec.beta, spec.gamma, spec.domain.first,
                                            spec.domain.second);
    case CoefficientSpec::Kind::piecewise_linear:
      return DiffusionCoefficient::piecewise_linear(spec.points);
    case CoefficientSpec::Kind::tabulated:
      return DiffusionCoefficient::tabulated(spec.points);
    case CoefficientSpec::Kind::staircase: {
      double lo = 0.0, hi = 0.0;
      if (spec.fit) {
        if (!I_r) throw InvalidArgument("fitted staircase needs the interval I_r");
        lo = I_r->first;
        hi = spec.c_max_factor * I_r->second;
      } else {
        if (!spec.c_min || !spec.c_max) throw InvalidArgument("staircase needs c_min and c_max");
        lo = *spec.c_min;
        hi = *spec.c_max;
      }
      return staircase_builder(lo, hi, spec.a0, spec.n1).coefficient;
    }
  }
  throw InvalidArgument("unknown coefficient kind");
}

}  // namespace nlrad
