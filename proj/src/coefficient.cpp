#include "nlrad/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlrad/errors.hpp"

namespace nlrad {

namespace {

constexpr int kDenseSamples = 10000;

void check_points(const std::vector<std::pair<double, double>>& pts, std::size_t min_count) {
  if (pts.size() < min_count) throw InvalidArgument("coefficient needs at least two points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(pts[i].first) || !std::isfinite(pts[i].second)) {
      throw InvalidArgument("coefficient points must be finite");
    }
    if (i > 0 && !(pts[i].first > pts[i - 1].first)) {
      throw InvalidArgument("coefficient abscissae must be strictly increasing");
    }
  }
}

// Shape-preserving end slope (three-point formula clipped as in PCHIP).
double pchip_end_slope(double h0, double h1, double d0, double d1) {
  double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (std::signbit(s) != std::signbit(d0) || d0 == 0.0) {
    s = 0.0;
  } else if (std::signbit(d0) != std::signbit(d1) && std::abs(s) > 3.0 * std::abs(d0)) {
    s = 3.0 * d0;
  }
  return s;
}

std::vector<double> sample_grid(const DiffusionCoefficient& a, double lo, double hi) {
  std::vector<double> s;
  s.reserve(kDenseSamples + 1 + 2 * a.breakpoints().size());
  for (int k = 0; k <= kDenseSamples; ++k) s.push_back(lo + (hi - lo) * k / kDenseSamples);
  for (double b : a.breakpoints()) {
    if (b >= lo && b <= hi) {
      s.push_back(b);
      const double left = std::nextafter(b, -std::numeric_limits<double>::infinity());
      if (left >= lo) s.push_back(left);
    }
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

std::string to_string(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::constant: return "constant";
    case CoefficientKind::rational_decreasing: return "rational";
    case CoefficientKind::piecewise_linear: return "piecewise_linear";
    case CoefficientKind::tabulated: return "tabulated";
  }
  return "unknown";
}

DiffusionCoefficient DiffusionCoefficient::constant(double value) {
  DiffusionCoefficient a;
  a.kind_ = CoefficientKind::constant;
  a.constant_ = value;
  a.lo_ = 0.0;
  a.hi_ = 1.0;
  a.certify_bounds();
  return a;
}

DiffusionCoefficient DiffusionCoefficient::rational(double alpha, double beta, double gamma,
                                                    double lo, double hi) {
  if (!(hi > lo)) throw InvalidArgument("rational coefficient: empty domain");
  if (!(beta + lo > 0.0)) {
    throw CoefficientError("rational coefficient has a pole in its domain", lo);
  }
  DiffusionCoefficient a;
  a.kind_ = CoefficientKind::rational_decreasing;
  a.alpha_ = alpha;
  a.beta_ = beta;
  a.gamma_ = gamma;
  a.lo_ = lo;
  a.hi_ = hi;
  a.knots_ = {lo, hi};
  a.certify_bounds();
  return a;
}

DiffusionCoefficient DiffusionCoefficient::piecewise_linear(
    std::vector<std::pair<double, double>> points) {
  check_points(points, 2);
  DiffusionCoefficient a;
  a.kind_ = CoefficientKind::piecewise_linear;
  for (const auto& [s, v] : points) {
    a.knots_.push_back(s);
    a.values_.push_back(v);
  }
  a.lo_ = a.knots_.front();
  a.hi_ = a.knots_.back();
  a.certify_bounds();
  return a;
}

DiffusionCoefficient DiffusionCoefficient::tabulated(std::vector<std::pair<double, double>> points) {
  check_points(points, 2);
  DiffusionCoefficient a;
  a.kind_ = CoefficientKind::tabulated;
  for (const auto& [s, v] : points) {
    a.knots_.push_back(s);
    a.values_.push_back(v);
  }
  const std::size_t n = a.knots_.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = a.knots_[k + 1] - a.knots_[k];
    delta[k] = (a.values_[k + 1] - a.values_[k]) / h[k];
  }
  a.slopes_.assign(n, 0.0);
  if (n == 2) {
    a.slopes_[0] = a.slopes_[1] = delta[0];
  } else {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      a.slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    a.slopes_[0] = pchip_end_slope(h[0], h[1], delta[0], delta[1]);
    a.slopes_[n - 1] = pchip_end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }
  a.lo_ = a.knots_.front();
  a.hi_ = a.knots_.back();
  a.certify_bounds();
  return a;
}

std::vector<std::pair<double, double>> DiffusionCoefficient::points() const {
  std::vector<std::pair<double, double>> p;
  for (std::size_t i = 0; i < values_.size(); ++i) p.emplace_back(knots_[i], values_[i]);
  return p;
}

double DiffusionCoefficient::value(double s) const {
  if (kind_ == CoefficientKind::constant) return constant_;
  s = std::clamp(s, lo_, hi_);
  switch (kind_) {
    case CoefficientKind::rational_decreasing:
      return alpha_ / (beta_ + s) + gamma_;
    case CoefficientKind::piecewise_linear: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
      if (it == knots_.end()) return values_.back();
      const auto k = static_cast<std::size_t>(it - knots_.begin()) - 1;
      const double t = (s - knots_[k]) / (knots_[k + 1] - knots_[k]);
      return values_[k] + t * (values_[k + 1] - values_[k]);
    }
    case CoefficientKind::tabulated: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
      if (it == knots_.end()) return values_.back();
      const auto k = static_cast<std::size_t>(it - knots_.begin()) - 1;
      const double hk = knots_[k + 1] - knots_[k];
      const double t = (s - knots_[k]) / hk;
      const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
      const double h10 = t * (1 - t) * (1 - t);
      const double h01 = t * t * (3 - 2 * t);
      const double h11 = t * t * (t - 1);
      return h00 * values_[k] + h10 * hk * slopes_[k] + h01 * values_[k + 1] +
             h11 * hk * slopes_[k + 1];
    }
    default:
      return constant_;
  }
}

double DiffusionCoefficient::derivative(double s) const {
  if (kind_ == CoefficientKind::constant) return 0.0;
  if (s < lo_ || s >= hi_) return 0.0;
  switch (kind_) {
    case CoefficientKind::rational_decreasing:
      return -alpha_ / ((beta_ + s) * (beta_ + s));
    case CoefficientKind::piecewise_linear: {
      const auto k = static_cast<std::size_t>(
                         std::upper_bound(knots_.begin(), knots_.end(), s) - knots_.begin()) -
                     1;
      return (values_[k + 1] - values_[k]) / (knots_[k + 1] - knots_[k]);
    }
    case CoefficientKind::tabulated: {
      const auto k = static_cast<std::size_t>(
                         std::upper_bound(knots_.begin(), knots_.end(), s) - knots_.begin()) -
                     1;
      const double hk = knots_[k + 1] - knots_[k];
      const double t = (s - knots_[k]) / hk;
      const double d00 = 6 * t * t - 6 * t;
      const double d10 = 3 * t * t - 4 * t + 1;
      const double d01 = -6 * t * t + 6 * t;
      const double d11 = 3 * t * t - 2 * t;
      return (d00 * values_[k] + d01 * values_[k + 1]) / hk + d10 * slopes_[k] +
             d11 * slopes_[k + 1];
    }
    default:
      return 0.0;
  }
}

void DiffusionCoefficient::certify_bounds() {
  double lo_val = std::numeric_limits<double>::infinity();
  double hi_val = -std::numeric_limits<double>::infinity();
  double witness_lo = lo_;
  for (double s : sample_grid(*this, lo_, hi_)) {
    const double v = value(s);
    if (!std::isfinite(v)) throw CoefficientError("coefficient is not finite", s);
    if (v < lo_val) {
      lo_val = v;
      witness_lo = s;
    }
    hi_val = std::max(hi_val, v);
  }
  if (!(lo_val > 0.0)) {
    throw CoefficientError("coefficient violates 0 < m <= a(s): a(" + std::to_string(witness_lo) +
                               ") = " + std::to_string(lo_val),
                           witness_lo);
  }
  m_ = lo_val;
  M_ = hi_val;
}

double sup_abs_derivative(const DiffusionCoefficient& a, double lo, double hi) {
  if (a.kind() == CoefficientKind::constant) return 0.0;
  if (hi < lo) std::swap(lo, hi);
  double sup = 0.0;
  double prev_s = 0.0, prev_v = 0.0;
  bool first = true;
  for (double s : sample_grid(a, lo, hi)) {
    sup = std::max(sup, std::abs(a.derivative(s)));
    const double v = a.value(s);
    if (!first && s > prev_s) sup = std::max(sup, std::abs(v - prev_v) / (s - prev_s));
    prev_s = s;
    prev_v = v;
    first = false;
  }
  return sup;
}

CoefficientCertificate validate(const DiffusionCoefficient& a, double lipschitz_radius) {
  if (!(lipschitz_radius >= 0.0)) throw InvalidArgument("Lipschitz radius must be nonnegative");
  CoefficientCertificate cert;
  cert.m = a.lower_bound();
  cert.M = a.upper_bound();
  cert.lipschitz_radius = lipschitz_radius;
  cert.lipschitz = sup_abs_derivative(a, -lipschitz_radius, lipschitz_radius);
  return cert;
}

std::vector<MuRoot> scalar_mu_roots(const DiffusionCoefficient& a, double c,
                                    std::optional<double> mu_max, int scan_cells) {
  if (c < 0.0) throw InvalidArgument("scalar reduction requires c >= 0");
  if (c == 0.0) return {MuRoot{0.0, 0.0, false}};
  const double top = mu_max.value_or(10.0 * c / a.lower_bound());
  if (!(top > 0.0)) throw InvalidArgument("mu_max must be positive");

  const double tol = 1e-12 * (1.0 + c);
  auto h = [&](double mu) { return mu * a.value(mu) - c; };
  auto slope = [&](double mu) { return a.value(mu) + mu * a.derivative(mu); };

  std::vector<double> mu(scan_cells + 1), hv(scan_cells + 1);
  for (int k = 0; k <= scan_cells; ++k) {
    mu[k] = top * k / scan_cells;
    hv[k] = h(mu[k]);
  }

  std::vector<MuRoot> roots;
  auto push = [&](double x, bool tangential) {
    const double r = h(x);
    const double probe = 1e-7 * (1.0 + x);
    const bool touching = x > probe && h(x - probe) * h(x + probe) > 0.0;
    tangential = tangential || touching || std::abs(slope(x)) < 1e-8;
    for (auto& existing : roots) {
      if (std::abs(existing.mu - x) <= 1e-9 * (1.0 + x)) return;
    }
    roots.push_back(MuRoot{x, r, tangential});
  };

  for (int k = 0; k < scan_cells; ++k) {
    if (hv[k] == 0.0) {
      push(mu[k], false);
      continue;
    }
    if (hv[k] * hv[k + 1] < 0.0) {
      double lo = mu[k], hi = mu[k + 1], flo = hv[k];
      double mid = 0.5 * (lo + hi);
      for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = h(mid);
        if (std::abs(fm) <= tol || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) {
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      push(mid, false);
    } else if (k > 0 && hv[k - 1] * hv[k] > 0.0 && hv[k] * hv[k + 1] > 0.0 &&
               std::abs(hv[k]) <= std::abs(hv[k - 1]) && std::abs(hv[k]) <= std::abs(hv[k + 1])) {
      // Local minimum of |h| without a sign change: look for a touching root.
      const double sign = hv[k] > 0.0 ? 1.0 : -1.0;
      double lo = mu[k - 1], hi = mu[k + 1];
      constexpr double g = 0.6180339887498949;
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      double f1 = sign * h(x1), f2 = sign * h(x2);
      for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - g * (hi - lo);
          f1 = sign * h(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + g * (hi - lo);
          f2 = sign * h(x2);
        }
      }
      const double x = f1 < f2 ? x1 : x2;
      if (std::abs(h(x)) <= tol) push(x, true);
    }
  }
  if (hv[scan_cells] == 0.0) push(mu[scan_cells], false);

  std::sort(roots.begin(), roots.end(), [](const MuRoot& l, const MuRoot& r) { return l.mu < r.mu; });
  return roots;
}

Staircase staircase_builder(double c_min, double c_max, double a0, int n1) {
  if (!(c_min > 0.0)) throw InvalidArgument("staircase infeasible: min I_r must be positive");
  if (!(c_max >= c_min)) throw InvalidArgument("staircase requires c_min <= c_max");
  if (!(a0 > 0.0)) throw InvalidArgument("staircase requires a(0) > 0");
  if (n1 < 1 || n1 % 2 == 0) throw InvalidArgument("staircase requires an odd n1 >= 1");

  std::vector<double> m{0.0};
  std::vector<double> v{a0};
  m.push_back(2.0 * c_max / a0);
  v.push_back(a0 / 2.0);
  for (int i = 2; i < n1; i += 2) {
    const double mi = 2.0 * m.back();
    const double ai = c_min / mi;
    m.push_back(mi);
    v.push_back(ai);
    m.push_back(2.0 * c_max / ai);
    v.push_back(ai / 2.0);
  }

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < m.size(); ++i) pts.emplace_back(m[i], v[i]);
  Staircase out{DiffusionCoefficient::piecewise_linear(pts), m, {}};
  for (std::size_t i = 0; i + 1 < m.size(); i += 2) out.designed_intervals.emplace_back(m[i], m[i + 1]);
  return out;
}

bool interval_condition_check(const DiffusionCoefficient& a, double m_lo, double m_hi,
                              double c_min, double c_max) {
  if (!(m_lo >= 0.0) || !(m_hi >= m_lo)) throw InvalidArgument("need 0 <= m_lo <= m_hi");
  constexpr double tol = 1e-10;
  const double a_lo = a.value(m_lo);
  const double a_hi = a.value(m_hi);
  for (double s : sample_grid(a, m_lo, m_hi)) {
    const double v = a.value(s);
    if (v > a_lo + tol * (1.0 + std::abs(a_lo))) return false;
    if (v < a_hi - tol * (1.0 + std::abs(a_hi))) return false;
  }
  const double p_lo = m_lo * a_lo;
  const double p_hi = m_hi * a_hi;
  return c_min >= p_lo - tol * (1.0 + std::abs(p_lo)) && c_max <= p_hi + tol * (1.0 + std::abs(p_hi));
}

}  // namespace nlrad
