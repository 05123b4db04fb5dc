#include "crmud/closedform.hpp"

#include <cmath>
#include <stdexcept>

#include "crmud/specfun.hpp"

namespace crmud {

double prob_unsaturated_exact(const SystemParams& p, int n) {
  if (n < 1) throw std::domain_error("prob_unsaturated_exact: N must be >= 1");
  return std::exp(-static_cast<double>(n) * p.k / p.ps_max);
}

ProbUnsaturated prob_unsaturated(const SystemParams& p, int n) {
  if (n < 2) throw std::domain_error("prob_unsaturated: the ln(1-1/N) form needs N >= 2");
  ProbUnsaturated r;
  r.series = std::exp(p.k / (p.ps_max * std::log1p(-1.0 / static_cast<double>(n))));
  r.exact = prob_unsaturated_exact(p, n);
  return r;
}

double b_n_low1(const SystemParams& p, int n) {
  const double arg = p.k * static_cast<double>(n) / p.ps_max * std::exp(p.k / p.ps_max);
  return p.ps_max * lambert_w0(arg) - p.k;
}

double m_avg_lower(const SystemParams& p) {
  const double c = p.k / p.ps_max;
  const double a = p.rp * p.ps_max;
  const double ratio = std::expm1(c * (a + 1.0)) / std::expm1(c);
  return p.pd * std::exp(-p.rp) +
         (1.0 - p.pd) * ratio * std::exp(-p.rp * (1.0 + p.k)) / (a + 1.0);
}

double m_avg_upper(const SystemParams& p, int n) {
  if (n < 1) throw std::domain_error("m_avg_upper: N must be >= 1");
  const double nn = static_cast<double>(n);
  const double c = p.k / p.ps_max;
  const double a = p.rp * p.ps_max;
  // (e^{c(a+n)}-1)/(e^{cn}-1) written as e^{ca}(1-e^{-c(a+n)})/(1-e^{-cn}) so
  // the exponentials stay bounded for large N.
  const double ratio = std::exp(c * a) * (-std::expm1(-c * (a + nn))) / (-std::expm1(-c * nn));
  return p.pd * std::exp(-p.rp) +
         (1.0 - p.pd) * std::exp(-p.rp * (1.0 + p.k)) * (nn / (a + nn)) * ratio;
}

namespace {

// Two-branch bound skeleton shared by the lower and upper expressions:
// weight * [ (lam/mu)(1-pd)(log_term - penalty) + (1 - lam/mu)(1-pf) log_term ].
double branch(const SystemParams& p, double mu, double log_term, double penalty) {
  const double busy_weight = p.lambda / mu;
  return busy_weight * (1.0 - p.pd) * (log_term - penalty) +
         (1.0 - busy_weight) * (1.0 - p.pf) * log_term;
}

}  // namespace

std::optional<double> lower_bound_capacity(const SystemParams& p, int n) {
  if (n < 2) return std::nullopt;
  const double inner = static_cast<double>(n) * (-std::expm1(-p.k / p.ps_max));
  if (inner <= 1.0) return std::nullopt;
  const double pre = prob_unsaturated(p, n).series;
  const double penalty = mean_log2_one_plus_exp_scaled(p.pp);
  const double unsat = branch(p, p.mu_min, std::log2(1.0 + b_n_low1(p, n)), penalty);
  const double sat =
      branch(p, m_avg_lower(p), std::log2(1.0 + p.ps_max * std::log(inner)), penalty);
  return pre * unsat + (1.0 - pre) * sat;
}

std::optional<double> upper_bound_capacity(const SystemParams& p, int n) {
  if (n < 2) return std::nullopt;
  const double ln_n = std::log(static_cast<double>(n));
  if (p.ps_max * ln_n <= 1.0) return std::nullopt;
  const double pre = prob_unsaturated(p, n).series;
  const double penalty = mean_log2_one_plus_exp_scaled(p.pp);
  const double unsat = branch(p, p.mu_min, std::log2(p.ps_max * ln_n), penalty);
  const double sat =
      branch(p, m_avg_upper(p, n), std::log2(1.0 + p.ps_max * ln_n), penalty);
  return pre * unsat + (1.0 - pre) * sat;
}

double asymptotic_k_lower(const SystemParams& p) {
  const double w = p.lambda / m_avg_lower(p);
  return w * (1.0 - p.pd) + (1.0 - w) * (1.0 - p.pf);
}

double asymptotic_k_upper(const SystemParams& p) {
  const double w = p.lambda / std::exp(-p.rp);
  return w * (1.0 - p.pd) + (1.0 - w) * (1.0 - p.pf);
}

}  // namespace crmud
