#include "crmud/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crmud {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
}

double lambert_w0(double x, Tolerance tol) {
  const double branch_point = -std::exp(-1.0);
  if (!(x >= branch_point)) {
    throw std::domain_error("lambert_w0: argument " + std::to_string(x) +
                            " below principal-branch limit -1/e");
  }
  if (x == 0.0) return 0.0;

  double w;
  if (x < branch_point + 0.05) {
    // Series around the branch point in p = sqrt(2(e*x + 1)).
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  } else if (x < 0.5) {
    w = x * (1.0 + x * (-1.0 + x * 1.5));  // Maclaurin terms
  } else if (x < std::exp(1.0)) {
    w = std::log(1.0 + x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  const double scale = std::fmax(1.0, std::fabs(x));
  for (int it = 0; it < tol.max_iterations; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::fabs(f) <= tol.abs_tol * scale) return w;
    const double wp1 = w + 1.0;
    // Halley step for f(w) = w e^w - x.
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    w -= f / denom;
    if (w < -1.0) w = -1.0 + 1e-12;  // stay on the principal branch
  }
  throw std::runtime_error("lambert_w0: iteration budget exhausted at x = " +
                           std::to_string(x));
}

namespace {

// E1 power series, valid and fast for 0 < x <= 1.
double e1_series(double x) {
  double sum = -kEulerGamma - std::log(x);
  double pow_term = 1.0;  // x^k / k!
  for (int k = 1; k <= 60; ++k) {
    pow_term *= x / k;
    const double contrib = ((k & 1) ? pow_term : -pow_term) / k;
    sum += contrib;
    if (std::fabs(contrib) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

// Modified Lentz evaluation of the continued fraction for exp(x)*E1(x), x > 1.
double e1_scaled_cf(double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 300; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) return h;
  }
  throw std::runtime_error("exp_integral_e1: continued fraction did not converge");
}

void require_positive(double x, const char* who) {
  if (!(x > 0.0)) {
    throw std::domain_error(std::string(who) + ": argument must be positive, got " +
                            std::to_string(x));
  }
}

}  // namespace

double exp_integral_e1(double x) {
  require_positive(x, "exp_integral_e1");
  if (x <= 1.0) return e1_series(x);
  return std::exp(-x) * e1_scaled_cf(x);
}

double exp_scaled_e1(double x) {
  require_positive(x, "exp_scaled_e1");
  if (x <= 1.0) return std::exp(x) * e1_series(x);
  return e1_scaled_cf(x);
}

double mean_log2_one_plus_exp_scaled(double p) {
  require_positive(p, "mean_log2_one_plus_exp_scaled");
  return exp_scaled_e1(1.0 / p) / std::log(2.0);
}

}  // namespace crmud
