#include "spatsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spatsel {

PenaltyConfig PenaltyConfig::defaults(double gamma, double beta) {
  PenaltyConfig pen;
  pen.f = [](int i) { return std::pow(std::log(i + 1.0), -0.1); };
  pen.g = [](int i) { return std::pow(std::log(i + 1.0), 0.1); };
  pen.gamma = gamma;
  pen.beta = beta;
  return pen;
}

PenaltyConfig PenaltyConfig::literal_log(double gamma, double beta) {
  PenaltyConfig pen;
  pen.f = [](int i) { return std::pow(std::log(static_cast<double>(i)), -0.1); };
  pen.g = [](int i) { return std::pow(std::log(static_cast<double>(i)), 0.1); };
  pen.gamma = gamma;
  pen.beta = beta;
  return pen;
}

void PenaltyConfig::validate(int p, int first_index) const {
  if (!(gamma > 0.0 && gamma < 0.5))
    throw ConfigError("PenaltyConfig: gamma must lie in (0, 1/2)");
  if (!(beta > 0.0 && beta < 0.5))
    throw ConfigError("PenaltyConfig: beta must lie in (0, 1/2)");
  if (!f || !g) throw ConfigError("PenaltyConfig: f and g must be set");
  double prev_f = 0.0, prev_g = 0.0;
  for (int i = first_index; i <= p; ++i) {
    const double fi = f(i), gi = g(i);
    if (!std::isfinite(fi) || fi <= 0.0)
      throw ConfigError("PenaltyConfig: f(" + std::to_string(i) +
                        ") not finite positive");
    if (!std::isfinite(gi) || gi <= 0.0)
      throw ConfigError("PenaltyConfig: g(" + std::to_string(i) +
                        ") not finite positive");
    if (i > first_index) {
      if (!(fi < prev_f))
        throw ConfigError("PenaltyConfig: f not strictly decreasing at " +
                          std::to_string(i));
      if (!(gi > prev_g))
        throw ConfigError("PenaltyConfig: g not strictly increasing at " +
                          std::to_string(i));
    }
    prev_f = fi;
    prev_g = gi;
  }
}

std::vector<int> estimate_permutation(const std::vector<double>& xi_minus,
                                      const PenaltyConfig& pen, int n, int d) {
  const int p = static_cast<int>(xi_minus.size());
  if (p < 2) throw Error("estimate_permutation: p must be >= 2");
  pen.validate(p);
  const double scale = std::pow(static_cast<double>(n), d * pen.gamma);
  std::vector<double> phi(p);
  for (int i = 1; i <= p; ++i) {
    if (!std::isfinite(xi_minus[i - 1]))
      throw Error("estimate_permutation: non-finite criterion");
    phi[i - 1] = xi_minus[i - 1] + pen.f(i) / scale;
  }
  std::vector<int> tau(p);
  std::iota(tau.begin(), tau.end(), 1);
  std::stable_sort(tau.begin(), tau.end(), [&phi](int a, int b) {
    if (phi[a - 1] != phi[b - 1]) return phi[a - 1] > phi[b - 1];
    return a < b;
  });
  return tau;
}

int estimate_dimension(const std::vector<int>& tau,
                       const std::vector<double>& nested_xi,
                       const PenaltyConfig& pen, int n, int d) {
  const int p = static_cast<int>(tau.size());
  if (nested_xi.size() != tau.size())
    throw Error("estimate_dimension: length mismatch");
  pen.validate(p);
  const double scale = std::pow(static_cast<double>(n), d * pen.beta);
  int best = 1;
  double best_psi = 0.0;
  for (int i = 1; i <= p; ++i) {
    if (!std::isfinite(nested_xi[i - 1]))
      throw Error("estimate_dimension: non-finite criterion");
    const int arg =
        pen.dim_penalty_arg == DimPenaltyArg::position ? i : tau[i - 1];
    const double psi = nested_xi[i - 1] + pen.g(arg) / scale;
    if (i == 1 || psi < best_psi) {
      best = i;
      best_psi = psi;
    }
  }
  return best;
}

SelectionResult select_from_cov(const CovariancePair& cov,
                                const PenaltyConfig& pen, int n, int d) {
  const int p = static_cast<int>(cov.v1.rows());
  SelectionResult res{.i1_hat = IndexSet::empty(p)};
  res.xi_minus = leave_one_out_criteria(cov);

  std::vector<double> xi2(p);
  for (int i = 0; i < p; ++i) xi2[i] = res.xi_minus[i] * res.xi_minus[i];
  res.tau = estimate_permutation(xi2, pen, n, d);

  const double gscale = std::pow(static_cast<double>(n), d * pen.gamma);
  res.phi.resize(p);
  for (int i = 1; i <= p; ++i)
    res.phi[i - 1] = xi2[i - 1] + pen.f(i) / gscale;

  // Nested criteria along tau: entry i is the squared criterion of
  // J_i = {tau(1),...,tau(i)}.
  std::vector<double> nested(p);
  for (int i = 1; i <= p; ++i) {
    std::vector<int> members(res.tau.begin(), res.tau.begin() + i);
    std::sort(members.begin(), members.end());
    const double v =
        criterion_xi(IndexSet(std::move(members), p), cov.v1, cov.v12);
    nested[i - 1] = v * v;
  }
  res.s_hat = estimate_dimension(res.tau, nested, pen, n, d);

  const double bscale = std::pow(static_cast<double>(n), d * pen.beta);
  res.psi.resize(p);
  for (int i = 1; i <= p; ++i) {
    const int arg =
        pen.dim_penalty_arg == DimPenaltyArg::position ? i : res.tau[i - 1];
    res.psi[i - 1] = nested[i - 1] + pen.g(arg) / bscale;
  }

  std::vector<int> sel(res.tau.begin(), res.tau.begin() + res.s_hat);
  std::sort(sel.begin(), sel.end());
  res.i1_hat = IndexSet(std::move(sel), p);
  return res;
}

SelectionResult select_variables(const SpatialSample& sample,
                                 const PenaltyConfig& pen) {
  CovariancePair cov = empirical_cov_pair(sample);
  return select_from_cov(cov, pen, sample.grid_side, sample.grid_dim);
}

}  // namespace spatsel
