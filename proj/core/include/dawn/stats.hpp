#pragma once

#include <vector>

namespace dawn::stats {

// Standard normal CDF Phi(x).
double normal_cdf(double x);

// Upper tail probability P(N(0,1) > x), accurate for large x.
double normal_sf(double x);

// Standard normal quantile Phi^{-1}(p).
double normal_quantile(double p);

// Upper-tail quantile: z such that P(N(0,1) > z) = p. Stable for tiny p.
double normal_upper_quantile(double p);

// log of the N(mean, var) density at x.
double gaussian_log_pdf(double x, double mean, double var);

// Pearson correlation of two equal-length samples.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Logistic function 1 / (1 + exp(-t)), safe against overflow.
double logistic(double t);

}  // namespace dawn::stats
