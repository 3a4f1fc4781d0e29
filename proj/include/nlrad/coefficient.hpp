#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nlrad {

enum class CoefficientKind { constant, rational_decreasing, piecewise_linear, tabulated };

std::string to_string(CoefficientKind kind);

/// Certified data of a diffusion law a(.): bounds m <= a <= M over the real
/// line and a Lipschitz constant on [-c, c].
struct CoefficientCertificate {
  double m = 0.0;
  double M = 0.0;
  double lipschitz = 0.0;
  double lipschitz_radius = 0.0;
};

/// The diffusion law a(s) of the nonlocal problem.
///
/// Every kind is defined on a closed domain [lo, hi] and continued by
/// constants outside it, so the bounds m, M certified on the domain hold on
/// the whole real line. Derivatives are right-sided at breakpoints (and zero
/// beyond hi).
class DiffusionCoefficient {
 public:
  static DiffusionCoefficient constant(double value);
  /// a(s) = alpha / (beta + s) + gamma on [lo, hi]; requires beta + lo > 0.
  static DiffusionCoefficient rational(double alpha, double beta, double gamma, double lo,
                                       double hi);
  static DiffusionCoefficient piecewise_linear(std::vector<std::pair<double, double>> points);
  /// Monotone piecewise-cubic (Fritsch-Butland slopes) through the samples.
  static DiffusionCoefficient tabulated(std::vector<std::pair<double, double>> points);

  double operator()(double s) const { return value(s); }
  double value(double s) const;
  double derivative(double s) const;

  CoefficientKind kind() const noexcept { return kind_; }
  double lower_bound() const noexcept { return m_; }
  double upper_bound() const noexcept { return M_; }
  double domain_lo() const noexcept { return lo_; }
  double domain_hi() const noexcept { return hi_; }

  /// Points where the derivative may jump (knots and domain ends).
  const std::vector<double>& breakpoints() const noexcept { return knots_; }

  // Parameters, for serialization.
  double constant_value() const noexcept { return constant_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  std::vector<std::pair<double, double>> points() const;

 private:
  DiffusionCoefficient() = default;
  void certify_bounds();

  CoefficientKind kind_ = CoefficientKind::constant;
  double constant_ = 1.0;
  double alpha_ = 0.0, beta_ = 1.0, gamma_ = 0.0;
  double lo_ = 0.0, hi_ = 1.0;
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;  // Hermite slopes for tabulated
  double m_ = 0.0, M_ = 0.0;
};

/// Certifies m, M by dense sampling plus breakpoint enumeration and the
/// Lipschitz constant on [-lipschitz_radius, lipschitz_radius].
/// Throws CoefficientError with the witnessing s on non-positivity.
CoefficientCertificate validate(const DiffusionCoefficient& a, double lipschitz_radius = 1.0);

/// sup |a'| over [lo, hi] by dense sampling plus breakpoints.
double sup_abs_derivative(const DiffusionCoefficient& a, double lo, double hi);

struct MuRoot {
  double mu = 0.0;
  double residual = 0.0;   // mu a(mu) - c
  bool tangential = false; // even multiplicity or vanishing slope: unreliable
};

/// All roots of mu a(mu) = c on [0, mu_max] (default 10 c / m), ascending.
std::vector<MuRoot> scalar_mu_roots(const DiffusionCoefficient& a, double c,
                                    std::optional<double> mu_max = std::nullopt,
                                    int scan_cells = 10000);

/// Multi-solution coefficient built by the staircase recursion: decreasing
/// pieces whose products mu a(mu) sweep [c_min, c_max] on every designed
/// interval (m_i, m_{i+1}), i even.
struct Staircase {
  DiffusionCoefficient coefficient;
  std::vector<double> breakpoints;                          // m_0 = 0, ..., m_{n1}
  std::vector<std::pair<double, double>> designed_intervals;
};

Staircase staircase_builder(double c_min, double c_max, double a0, int n1);

/// a(m_lo) is the max and a(m_hi) the min of a on [m_lo, m_hi], and
/// [c_min, c_max] lies inside [m_lo a(m_lo), m_hi a(m_hi)].
bool interval_condition_check(const DiffusionCoefficient& a, double m_lo, double m_hi,
                              double c_min, double c_max);

}  // namespace nlrad
