#pragma once

// Self-contained special functions backing the closed-form capacity
// expressions: principal-branch Lambert W and the exponential integral E1.

namespace crmud {

struct Tolerance {
  double abs_tol = 1e-12;
  int max_iterations = 100;
};

/// Principal branch of the Lambert W function: returns w with w*exp(w) == x.
/// Halley iteration seeded region-by-region (branch-point series, Maclaurin
/// series, log-based guess). Domain: x >= -1/e.
double lambert_w0(double x, Tolerance tol = {});

/// Exponential integral E1(x) = \int_x^inf exp(-t)/t dt for x > 0.
/// Power series below 1, modified-Lentz continued fraction above.
double exp_integral_e1(double x);

/// exp(x) * E1(x), evaluated without forming either factor; stays finite for
/// arbitrarily large x where E1 underflows.
double exp_scaled_e1(double x);

/// E[log2(1 + P*X)] for X exponential with unit mean, i.e.
/// exp(1/P) * E1(1/P) / ln 2, for P > 0.
double mean_log2_one_plus_exp_scaled(double p);

}  // namespace crmud
